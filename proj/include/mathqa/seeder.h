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

#ifndef MATHQA_SEEDER_H_
#define MATHQA_SEEDER_H_

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mathqa/wiki_dump.h"

namespace mathqa {

inline constexpr std::string_view kDefiningFormulaLabel = "defining formula";

struct GeometryConfig {
  std::vector<std::string> categories;
  std::vector<std::string> property_keywords;

  // The 16 geometry categories and 7 property keywords used for seeding.
  static GeometryConfig Default();
  // JSON object {"categories": [...], "property_keywords": [...]}. Missing
  // keys keep their defaults. Throws SeedConfigError.
  static GeometryConfig Load(const std::string &path);
};

class SeedConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SeedIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PageClass { kGeneral, kGeometry };

// Geometry iff one of the page's own category links names a configured
// category (compared case- and underscore-insensitively).
PageClass Classify(const WikiPage &page, const GeometryConfig &cfg);

struct SeedSource {
  std::string dump_id;
  std::string page_title;
  size_t span_index = 0;  // index into WikiPage::math_spans
};

struct SeedStatement {
  std::string page_title;
  std::optional<std::string> target_qid;
  std::string property_label;  // kDefiningFormulaLabel or a lowercase keyword
  std::string formula_latex;   // verbatim math span
  SeedSource source;
};

// The page's first math span as its defining formula.
std::optional<SeedStatement> ExtractGeneral(const WikiPage &page, std::string_view dump_id);

// For every section whose heading contains a property keyword, the first
// math span of that section containing '=', else its first math span. One
// statement per keyword; the first section wins.
std::vector<SeedStatement> ExtractGeometry(const WikiPage &page, const GeometryConfig &cfg,
                                           std::string_view dump_id);

// Classify, then run exactly one of the two extractors.
std::vector<SeedStatement> ExtractPage(const WikiPage &page, const GeometryConfig &cfg,
                                       std::string_view dump_id);

enum class EmitFormat { kTsv, kKbDump };

// "Q9" followed by seven digits derived from the title.
std::string SyntheticQid(std::string_view page_title);

// Writes statements sorted by page title, then property label. tsv has a
// header line; kbdump writes one knowledge-store record per page. Synthetic
// qids are assigned in title order, probing upwards on collision.
void Emit(std::vector<SeedStatement> statements, std::ostream &out, EmitFormat format);

// Throws SeedIoError.
void EmitFile(std::vector<SeedStatement> statements, const std::string &path,
              EmitFormat format);

struct SeedRun {
  ScanStats scan;
  size_t geometry_pages = 0;
  size_t general_pages = 0;
  std::vector<SeedStatement> statements;
};

// Scans a dump and extracts statements from every math page. The dump id is
// the dump's dbname, or the file name without extension.
SeedRun SeedDump(const std::string &dump_path, const GeometryConfig &cfg);

}  // namespace mathqa

#endif  // MATHQA_SEEDER_H_
