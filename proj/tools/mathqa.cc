// Copyright 2026 The MathQA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end.
//
//   mathqa ask "<question>" --lang en|hi|formula --kb PATH [--patterns PATH]
//   mathqa calc "<latex>" --set a=3 --set b=4 [--kb PATH]
//   mathqa seed --dump PATH --out PATH --format tsv|kbdump [--geometry-config PATH]
//   mathqa eval --mode seeding|retrieval --annotations PATH [--kb PATH]
//   mathqa serve --kb PATH --addr HOST:PORT [--patterns PATH]
//
// Exit codes: 0 ok, 1 not found / unparseable / no value, 2 usage, 3 I/O.

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mathqa/evaluation.h"
#include "mathqa/http_server.h"
#include "mathqa/knowledge_store.h"
#include "mathqa/question_parser.h"
#include "mathqa/seeder.h"
#include "mathqa/service.h"
#include "mathqa/text.h"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string FromEnv(const std::string &value, const char *name) {
  if (!value.empty()) return value;
  const char *env = std::getenv(name);
  return env == nullptr ? "" : env;
}

mathqa::KnowledgeStore LoadStore(const std::string &path) {
  if (path.empty()) return mathqa::KnowledgeStore();
  try {
    return mathqa::KnowledgeStore::Ingest(path);
  } catch (const mathqa::KnowledgeStoreError &e) {
    throw IoError(e.what());
  }
}

std::optional<mathqa::PatternTable> LoadPatterns(const std::string &path) {
  if (path.empty()) return std::nullopt;
  try {
    return mathqa::PatternTable::Load(path);
  } catch (const mathqa::PatternFileError &e) {
    throw IoError(e.what());
  }
}

int StatusExit(const json &payload) {
  std::string status = payload.value("status", "");
  return status == mathqa::kStatusOk ? kExitOk : kExitDomain;
}

int RunAsk(const std::string &question, const std::string &lang, const std::string &kb,
           const std::string &patterns) {
  if (kb.empty()) throw UsageError("--kb (or MATHQA_KB) is required");
  mathqa::QaService service(LoadStore(kb), LoadPatterns(patterns));
  json payload = service.Ask(question, lang);
  std::cout << payload.dump(2) << "\n";
  std::string status = payload.value("status", "");
  return status == mathqa::kStatusOk || status == mathqa::kStatusNeedsValues ? kExitOk
                                                                             : kExitDomain;
}

int RunCalc(const std::string &formula, const std::vector<std::string> &sets,
            const std::string &kb, const std::string &qid, const std::string &property) {
  json request = {{"bindings", json::object()}};
  if (!formula.empty()) request["formula"] = formula;
  if (!qid.empty()) request["qid"] = qid;
  if (!property.empty()) request["property"] = property;
  if (formula.empty() && qid.empty()) throw UsageError("a formula or --qid is required");
  for (const std::string &set : sets) {
    size_t eq = set.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects NAME=VALUE, got '" + set + "'");
    std::string name = mathqa::Trim(set.substr(0, eq));
    std::string text = mathqa::Trim(set.substr(eq + 1));
    char *end = nullptr;
    double value = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
      throw UsageError("value of " + name + " is not a number: '" + text + "'");
    }
    request["bindings"][name] = value;
  }
  mathqa::QaService service(LoadStore(kb), std::nullopt);
  json payload = service.Calculate(request);
  std::cout << payload.dump(2) << "\n";
  return StatusExit(payload);
}

int RunSeed(const std::string &dump, const std::string &out, const std::string &format,
            const std::string &config_path) {
  mathqa::GeometryConfig cfg = mathqa::GeometryConfig::Default();
  try {
    if (!config_path.empty()) cfg = mathqa::GeometryConfig::Load(config_path);
  } catch (const mathqa::SeedConfigError &e) {
    throw IoError(e.what());
  }
  mathqa::SeedRun run;
  try {
    run = mathqa::SeedDump(dump, cfg);
  } catch (const std::runtime_error &e) {
    throw IoError(e.what());
  }
  for (const std::string &w : run.scan.warnings) std::cerr << "warning: " << w << "\n";
  size_t count = run.statements.size();
  try {
    mathqa::EmitFile(std::move(run.statements), out,
                     format == "tsv" ? mathqa::EmitFormat::kTsv : mathqa::EmitFormat::kKbDump);
  } catch (const mathqa::SeedIoError &e) {
    throw IoError(e.what());
  }
  std::cerr << run.scan.pages << " pages, " << run.scan.math_pages << " with math ("
            << run.geometry_pages << " geometry, " << run.general_pages << " general), " << count
            << " statements written to " << out << "\n";
  return kExitOk;
}

int RunEval(const std::string &mode, const std::string &annotations, const std::string &kb,
            const std::string &patterns, bool as_json) {
  try {
    if (mode == "retrieval" && !kb.empty()) {
      mathqa::KnowledgeStore store = LoadStore(kb);
      std::optional<mathqa::PatternTable> table = LoadPatterns(patterns);
      mathqa::RetrievalScore score = mathqa::ScoreRetrieval(
          store, mathqa::LoadQuestions(annotations), table ? &*table : nullptr);
      std::cout << (as_json ? mathqa::VerdictsJson(score) + "\n" : mathqa::FormatVerdicts(score));
      return kExitOk;
    }
    auto rows = mathqa::LoadAnnotations(annotations, mode == "seeding"
                                                         ? mathqa::AnnotationMode::kSeeding
                                                         : mathqa::AnnotationMode::kRetrieval);
    mathqa::ContingencyMatrix m = mathqa::Tabulate(rows);
    mathqa::Metrics metrics = mathqa::ComputeMetrics(m);
    std::cout << (as_json ? mathqa::ReportJson(m, metrics) + "\n"
                          : mathqa::FormatReport(m, metrics));
    return kExitOk;
  } catch (const mathqa::EvalError &e) {
    throw IoError(e.what());
  }
}

mathqa::HttpServer *g_server = nullptr;

void HandleSignal(int) {
  if (g_server != nullptr) g_server->Stop();
}

int RunServe(const std::string &kb, const std::string &addr, const std::string &patterns) {
  if (kb.empty()) throw UsageError("--kb (or MATHQA_KB) is required");
  size_t colon = addr.rfind(':');
  if (colon == std::string::npos) throw UsageError("--addr expects HOST:PORT");
  std::string host = addr.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(addr.substr(colon + 1));
  } catch (const std::exception &) {
    throw UsageError("bad port in '" + addr + "'");
  }

  mathqa::QaService service(LoadStore(kb), LoadPatterns(patterns));
  mathqa::HttpServer server(service);
  int bound = server.Bind(host, port);
  if (bound < 0) throw IoError("cannot listen on " + addr);
  std::cerr << "serving " << service.store().size() << " items on " << host << ":" << bound
            << "\n";
  g_server = &server;
  std::signal(SIGINT, HandleSignal);
  std::signal(SIGTERM, HandleSignal);
  bool ok = server.Serve();
  g_server = nullptr;
  return ok ? kExitOk : kExitIo;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Math question answering over a formula knowledge base"};
  app.require_subcommand(1);

  std::string question, lang = "en", kb, patterns;
  CLI::App *ask = app.add_subcommand("ask", "Answer a question");
  ask->add_option("question", question, "Question or formula")->required();
  ask->add_option("--lang", lang, "en, hi or formula")
      ->check(CLI::IsMember({"en", "hi", "formula"}));
  ask->add_option("--kb", kb, "Knowledge base dump (default $MATHQA_KB)");
  ask->add_option("--patterns", patterns, "Hindi pattern file (default $MATHQA_PATTERNS)");

  std::string formula, qid, property;
  std::vector<std::string> sets;
  CLI::App *calc = app.add_subcommand("calc", "Evaluate a formula");
  calc->add_option("formula", formula, "LaTeX formula");
  calc->add_option("--set", sets, "Identifier value NAME=VALUE")->allow_extra_args(false);
  calc->add_option("--kb", kb, "Knowledge base for constants (default $MATHQA_KB)");
  calc->add_option("--qid", qid, "Item whose formula to evaluate");
  calc->add_option("--property", property, "Quality of --qid, e.g. volume");

  std::string dump, out, format = "tsv", geometry_config;
  CLI::App *seed = app.add_subcommand("seed", "Extract defining formulae from a wiki dump");
  seed->add_option("--dump", dump, "MediaWiki XML export")->required();
  seed->add_option("--out", out, "Output file")->required();
  seed->add_option("--format", format, "tsv or kbdump")
      ->check(CLI::IsMember({"tsv", "kbdump"}));
  seed->add_option("--geometry-config", geometry_config, "JSON geometry configuration");

  std::string mode, annotations;
  bool as_json = false;
  CLI::App *eval = app.add_subcommand("eval", "Score annotations or retrieval questions");
  eval->add_option("--mode", mode, "seeding or retrieval")
      ->required()
      ->check(CLI::IsMember({"seeding", "retrieval"}));
  eval->add_option("--annotations", annotations,
                   "Annotation CSV, or with --kb in retrieval mode a question file")
      ->required();
  eval->add_option("--kb", kb, "Knowledge base to score retrieval questions against");
  eval->add_option("--patterns", patterns, "Hindi pattern file");
  eval->add_flag("--json", as_json, "Machine-readable output");

  std::string addr = "127.0.0.1:8080";
  CLI::App *serve = app.add_subcommand("serve", "Serve the JSON API");
  serve->add_option("--kb", kb, "Knowledge base dump (default $MATHQA_KB)");
  serve->add_option("--addr", addr, "HOST:PORT to listen on");
  serve->add_option("--patterns", patterns, "Hindi pattern file (default $MATHQA_PATTERNS)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ask) {
      return RunAsk(question, lang, FromEnv(kb, "MATHQA_KB"),
                    FromEnv(patterns, "MATHQA_PATTERNS"));
    }
    if (*calc) return RunCalc(formula, sets, FromEnv(kb, "MATHQA_KB"), qid, property);
    if (*seed) return RunSeed(dump, out, format, geometry_config);
    if (*eval) return RunEval(mode, annotations, kb, patterns, as_json);
    if (*serve) {
      return RunServe(FromEnv(kb, "MATHQA_KB"), addr, FromEnv(patterns, "MATHQA_PATTERNS"));
    }
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mathqa::InvalidRequest &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
