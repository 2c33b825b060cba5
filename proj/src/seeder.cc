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

#include "mathqa/seeder.h"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "json.hpp"
#include "mathqa/text.h"

namespace mathqa {

using json = nlohmann::json;

namespace {

constexpr std::string_view kShapeClass = "Q815741";
constexpr uint64_t kQidRange = 10'000'000;

std::string CategoryKey(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '_', ' ');
  return NormalizeLabel(s);
}

std::vector<std::string> StringList(const json &v, const char *key) {
  if (!v.is_array()) throw SeedConfigError(std::string(key) + " must be a list of strings");
  std::vector<std::string> out;
  for (const json &s : v) {
    if (!s.is_string()) throw SeedConfigError(std::string(key) + " must be a list of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

SeedStatement Statement(const WikiPage &page, std::string label, size_t span,
                        std::string_view dump_id) {
  return SeedStatement{page.title, std::nullopt, std::move(label), page.math_spans[span].latex,
                       SeedSource{std::string(dump_id), page.title, span}};
}

std::string Flatten(std::string s) {
  for (char &c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string QidFor(uint64_t n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "Q9%07llu", static_cast<unsigned long long>(n));
  return buf;
}

}  // namespace

GeometryConfig GeometryConfig::Default() {
  return GeometryConfig{
      {"Elementary geometry", "Theorems in geometry", "Polygons", "Elementary shapes",
       "Quadrilateral", "Area", "Volume", "Conic sections", "Geometric centers", "Circles",
       "Curves", "Surfaces", "Cubes", "Platonic solids", "Polytopes",
       "Euclidean plane geometry"},
      {"Area", "Volume", "Circumference", "Perimeter", "Circumradius", "Inradius", "Median"},
  };
}

GeometryConfig GeometryConfig::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw SeedConfigError("cannot open geometry config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw SeedConfigError("geometry config '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw SeedConfigError("geometry config must be a JSON object");
  GeometryConfig cfg = Default();
  if (doc.contains("categories")) cfg.categories = StringList(doc["categories"], "categories");
  if (doc.contains("property_keywords")) {
    cfg.property_keywords = StringList(doc["property_keywords"], "property_keywords");
  }
  return cfg;
}

PageClass Classify(const WikiPage &page, const GeometryConfig &cfg) {
  std::set<std::string> wanted;
  for (const std::string &c : cfg.categories) wanted.insert(CategoryKey(c));
  for (const std::string &c : page.categories) {
    if (wanted.count(CategoryKey(c)) > 0) return PageClass::kGeometry;
  }
  return PageClass::kGeneral;
}

std::optional<SeedStatement> ExtractGeneral(const WikiPage &page, std::string_view dump_id) {
  if (page.math_spans.empty()) return std::nullopt;
  return Statement(page, std::string(kDefiningFormulaLabel), 0, dump_id);
}

std::vector<SeedStatement> ExtractGeometry(const WikiPage &page, const GeometryConfig &cfg,
                                           std::string_view dump_id) {
  std::vector<SeedStatement> out;
  std::set<std::string> done;
  for (size_t section = 0; section < page.sections.size(); ++section) {
    std::string heading = ToLowerAscii(page.sections[section].heading);
    if (heading.empty()) continue;
    auto first = std::find_if(page.math_spans.begin(), page.math_spans.end(),
                              [&](const MathSpan &m) {
                                return m.section == section &&
                                       m.latex.find('=') != std::string::npos;
                              });
    if (first == page.math_spans.end()) {
      first = std::find_if(page.math_spans.begin(), page.math_spans.end(),
                           [&](const MathSpan &m) { return m.section == section; });
    }
    if (first == page.math_spans.end()) continue;
    for (const std::string &keyword : cfg.property_keywords) {
      std::string key = ToLowerAscii(keyword);
      if (heading.find(key) == std::string::npos || !done.insert(key).second) continue;
      out.push_back(Statement(page, key, first - page.math_spans.begin(), dump_id));
    }
  }
  return out;
}

std::vector<SeedStatement> ExtractPage(const WikiPage &page, const GeometryConfig &cfg,
                                       std::string_view dump_id) {
  if (Classify(page, cfg) == PageClass::kGeometry) return ExtractGeometry(page, cfg, dump_id);
  std::vector<SeedStatement> out;
  if (auto s = ExtractGeneral(page, dump_id)) out.push_back(std::move(*s));
  return out;
}

std::string SyntheticQid(std::string_view page_title) {
  return QidFor(Fnv1a(page_title) % kQidRange);
}

void Emit(std::vector<SeedStatement> statements, std::ostream &out, EmitFormat format) {
  std::stable_sort(statements.begin(), statements.end(),
                   [](const SeedStatement &a, const SeedStatement &b) {
                     if (a.page_title != b.page_title) return a.page_title < b.page_title;
                     if (a.property_label != b.property_label) {
                       return a.property_label < b.property_label;
                     }
                     return a.source.span_index < b.source.span_index;
                   });

  if (format == EmitFormat::kTsv) {
    out << "page_title\tproperty_label\tformula_latex\tsource\n";
    for (const SeedStatement &s : statements) {
      out << Flatten(s.page_title) << '\t' << s.property_label << '\t' << Flatten(s.formula_latex)
          << '\t' << Flatten(s.source.dump_id + "/" + s.page_title) << '#'
          << s.source.span_index << '\n';
    }
    return;
  }

  std::set<std::string> used;
  for (const SeedStatement &s : statements) {
    if (s.target_qid) used.insert(*s.target_qid);
  }
  std::map<std::string, json> records;  // title -> record, sorted
  for (const SeedStatement &s : statements) {
    auto [it, fresh] = records.try_emplace(s.page_title);
    json &r = it->second;
    if (fresh) {
      std::string qid;
      if (s.target_qid) {
        qid = *s.target_qid;
      } else {
        uint64_t n = Fnv1a(s.page_title) % kQidRange;
        while (used.count(QidFor(n)) > 0) n = (n + 1) % kQidRange;
        qid = QidFor(n);
        used.insert(qid);
      }
      r = json{{"qid", qid},
               {"labels", {{"en", s.page_title}}},
               {"defining_formulae", json::array()},
               {"qualities", json::array()}};
    }
    if (s.property_label == kDefiningFormulaLabel) {
      r["defining_formulae"].push_back(s.formula_latex);
    } else {
      r["qualities"].push_back(
          {{"label", s.property_label}, {"target_qid", nullptr}, {"inline_formula", s.formula_latex}});
      r["instance_of"] = json::array({kShapeClass});
    }
  }
  for (const auto &[title, record] : records) out << record.dump() << '\n';
}

void EmitFile(std::vector<SeedStatement> statements, const std::string &path, EmitFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SeedIoError("cannot write '" + path + "'");
  Emit(std::move(statements), out, format);
  out.flush();
  if (!out) throw SeedIoError("write to '" + path + "' failed");
}

SeedRun SeedDump(const std::string &dump_path, const GeometryConfig &cfg) {
  SeedRun run;
  std::vector<WikiPage> pages;
  run.scan = ScanDumpFile(dump_path, [&](WikiPage page) { pages.push_back(std::move(page)); });
  std::string dump_id = run.scan.dump_id.empty()
                            ? std::filesystem::path(dump_path).stem().string()
                            : run.scan.dump_id;
  for (const WikiPage &page : pages) {
    bool geometry = Classify(page, cfg) == PageClass::kGeometry;
    ++(geometry ? run.geometry_pages : run.general_pages);
    for (SeedStatement &s : ExtractPage(page, cfg, dump_id)) run.statements.push_back(std::move(s));
  }
  return run;
}

}  // namespace mathqa
