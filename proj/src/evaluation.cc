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

#include "mathqa/evaluation.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mathqa/latex_parser.h"
#include "mathqa/retrieval.h"
#include "mathqa/text.h"

namespace mathqa {

using json = nlohmann::json;

EvalError::EvalError(size_t line, const std::string &reason)
    : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}

DuplicateId::DuplicateId(size_t line, long long id)
    : EvalError(line, "duplicate id " + std::to_string(id)) {}

UnknownLabel::UnknownLabel(size_t line, const std::string &label)
    : EvalError(line, "unknown label '" + label + "'") {}

namespace {

// One CSV record. Quoted fields may contain commas and doubled quotes but
// not line breaks.
std::vector<std::string> SplitCsv(const std::string &line, size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c != '"') {
        fields.back() += c;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw EvalError(line_no, "unterminated quoted field");
  return fields;
}

std::optional<bool> ParseFlag(const std::string &value, std::string_view yes, std::string_view no) {
  std::string v = ToLowerAscii(Trim(value));
  if (v == yes) return true;
  if (v == no) return false;
  return std::nullopt;
}

std::string FormatValue(const std::optional<double> &v) {
  if (!v) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", *v);
  return buf;
}

json JsonValue(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::vector<Annotation> ReadAnnotations(std::istream &in, AnnotationMode mode) {
  std::vector<Annotation> out;
  std::set<long long> ids;
  std::string line;
  size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    std::vector<std::string> fields = SplitCsv(line, line_no);
    if (!header) {
      for (std::string &f : fields) f = ToLowerAscii(Trim(f));
      if (fields != std::vector<std::string>{"id", "name", "expected", "observed"}) {
        throw EvalError(line_no, "expected header id,name,expected,observed");
      }
      header = true;
      continue;
    }
    if (fields.size() != 4) throw EvalError(line_no, "expected 4 fields");

    Annotation a;
    std::string id = Trim(fields[0]);
    auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), a.id);
    if (ec != std::errc() || ptr != id.data() + id.size()) {
      throw EvalError(line_no, "id '" + id + "' is not an integer");
    }
    if (!ids.insert(a.id).second) throw DuplicateId(line_no, a.id);
    a.name = Trim(fields[1]);

    std::optional<bool> relevant = ParseFlag(fields[2], "relevant", "non-relevant");
    if (!relevant) throw UnknownLabel(line_no, Trim(fields[2]));
    std::optional<bool> observed =
        mode == AnnotationMode::kSeeding ? ParseFlag(fields[3], "retrieved", "not-retrieved")
                                         : ParseFlag(fields[3], "true", "false");
    if (!observed) throw UnknownLabel(line_no, Trim(fields[3]));
    a.relevant = *relevant;
    a.observed = *observed;

    if (mode == AnnotationMode::kRetrieval) {
      if (!a.relevant) throw EvalError(line_no, "retrieval annotations must be relevant");
      a.outcome = a.observed ? Outcome::kTruePositive : Outcome::kFalsePositive;
    } else if (a.relevant) {
      a.outcome = a.observed ? Outcome::kTruePositive : Outcome::kFalseNegative;
    } else {
      a.outcome = a.observed ? Outcome::kFalsePositive : Outcome::kTrueNegative;
    }
    out.push_back(std::move(a));
  }
  if (in.bad()) throw EvalError(line_no, "read error");
  return out;
}

std::vector<Annotation> LoadAnnotations(const std::string &path, AnnotationMode mode) {
  std::ifstream in(path);
  if (!in) throw EvalError(0, "cannot open '" + path + "'");
  return ReadAnnotations(in, mode);
}

ContingencyMatrix Tabulate(const std::vector<Annotation> &annotations) {
  ContingencyMatrix m;
  for (const Annotation &a : annotations) {
    switch (a.outcome) {
      case Outcome::kTruePositive: ++m.tp; break;
      case Outcome::kFalsePositive: ++m.fp; break;
      case Outcome::kFalseNegative: ++m.fn; break;
      case Outcome::kTrueNegative: ++m.tn; break;
    }
  }
  return m;
}

Metrics ComputeMetrics(const ContingencyMatrix &m) {
  Metrics r;
  if (m.tp + m.fp > 0) r.precision = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
  if (m.tp + m.fn > 0) r.recall = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
  if (r.precision && r.recall && *r.precision + *r.recall > 0) {
    r.f1 = 2 * *r.precision * *r.recall / (*r.precision + *r.recall);
  }
  if (m.total() > 0) {
    r.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(m.total());
  }
  return r;
}

double RoundTo(double value, int digits) {
  double scale = std::pow(10.0, digits);
  return std::round(value * scale) / scale;
}

std::string FormatReport(const ContingencyMatrix &m, const Metrics &metrics) {
  std::ostringstream out;
  out << "                 relevant  non-relevant\n";
  char row[96];
  std::snprintf(row, sizeof(row), "retrieved      %10lld  %12lld\n", m.tp, m.fp);
  out << row;
  std::snprintf(row, sizeof(row), "not retrieved  %10lld  %12lld\n", m.fn, m.tn);
  out << row;
  out << "\nprecision  " << FormatValue(metrics.precision) << "\n"
      << "recall     " << FormatValue(metrics.recall) << "\n"
      << "f1         " << FormatValue(metrics.f1) << "\n"
      << "accuracy   " << FormatValue(metrics.accuracy) << "\n";
  return out.str();
}

std::string ReportJson(const ContingencyMatrix &m, const Metrics &metrics) {
  json doc = {
      {"matrix", {{"tp", m.tp}, {"fp", m.fp}, {"fn", m.fn}, {"tn", m.tn}}},
      {"metrics",
       {{"precision", JsonValue(metrics.precision)},
        {"recall", JsonValue(metrics.recall)},
        {"f1", JsonValue(metrics.f1)},
        {"accuracy", JsonValue(metrics.accuracy)}}},
  };
  return doc.dump(2);
}

std::vector<QuestionCase> ReadQuestions(std::istream &in) {
  std::vector<QuestionCase> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || Trim(line)[0] == '#') continue;
    std::vector<std::string> fields = Split(line, '\t');
    if (fields.size() != 2 && fields.size() != 3) {
      throw EvalError(line_no, "expected question TAB expected [TAB lang]");
    }
    QuestionCase q;
    q.line = line_no;
    q.question = Trim(fields[0]);
    if (q.question.empty()) throw EvalError(line_no, "empty question");
    std::string expected = Trim(fields[1]);
    if (expected.empty()) throw EvalError(line_no, "empty expected formula");
    if (expected != "ABSENT") q.expected_latex = expected;
    if (fields.size() == 3) {
      q.lang = Trim(fields[2]);
      if (q.lang != "en" && q.lang != "hi" && q.lang != "formula") {
        throw EvalError(line_no, "unknown language '" + q.lang + "'");
      }
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<QuestionCase> LoadQuestions(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw EvalError(0, "cannot open '" + path + "'");
  return ReadQuestions(in);
}

RetrievalScore ScoreRetrieval(const KnowledgeStore &store,
                              const std::vector<QuestionCase> &questions,
                              const PatternTable *patterns) {
  RetrievalScore score;
  for (const QuestionCase &q : questions) {
    Verdict v;
    v.question = q;
    std::optional<Equation> retrieved;
    ParsedQuestion parsed = NoParse{"no Hindi pattern table loaded"};
    if (q.lang == "formula") {
      parsed = ParseFormula(q.question);
    } else if (q.lang == "hi") {
      if (patterns != nullptr) parsed = ParseHindi(q.question, *patterns);
    } else {
      parsed = ParseEnglish(q.question);
    }

    if (const auto *t = std::get_if<Triple>(&parsed)) {
      try {
        FormulaAnswer a = Retrieve(*t, store, q.lang == "hi" ? "hi" : "en");
        retrieved = a.formula;
        v.retrieved_latex = a.formula_latex;
      } catch (const std::exception &e) {
        v.detail = e.what();
      }
    } else if (const auto *d = std::get_if<DirectFormula>(&parsed)) {
      retrieved = d->equation;
      v.retrieved_latex = Render(d->equation);
    } else {
      v.detail = std::get<NoParse>(parsed).reason;
    }

    if (!q.expected_latex) {
      v.correct = !retrieved;
    } else if (retrieved) {
      try {
        v.correct = ParseLatex(*q.expected_latex) == *retrieved;
        if (!v.correct) v.detail = "retrieved formula differs from the expected one";
      } catch (const LatexParseError &e) {
        v.detail = std::string("expected formula does not parse: ") + e.what();
      }
    }
    score.correct += v.correct ? 1 : 0;
    score.verdicts.push_back(std::move(v));
  }
  if (!questions.empty()) {
    score.accuracy = static_cast<double>(score.correct) / static_cast<double>(questions.size());
  }
  return score;
}

std::string FormatVerdicts(const RetrievalScore &score) {
  std::ostringstream out;
  for (const Verdict &v : score.verdicts) {
    out << (v.correct ? "true " : "false") << "  " << v.question.question;
    if (!v.retrieved_latex.empty()) out << "  ->  " << v.retrieved_latex;
    out << "\n";
  }
  out << "\naccuracy " << score.correct << "/" << score.verdicts.size() << " = "
      << FormatValue(score.accuracy) << "\n";
  return out.str();
}

std::string VerdictsJson(const RetrievalScore &score) {
  json verdicts = json::array();
  for (const Verdict &v : score.verdicts) {
    verdicts.push_back({{"line", v.question.line},
                        {"question", v.question.question},
                        {"lang", v.question.lang},
                        {"verdict", v.correct},
                        {"retrieved", v.retrieved_latex},
                        {"detail", v.detail}});
  }
  json doc = {{"verdicts", verdicts},
              {"correct", score.correct},
              {"total", score.verdicts.size()},
              {"accuracy", JsonValue(score.accuracy)}};
  return doc.dump(2);
}

}  // namespace mathqa
