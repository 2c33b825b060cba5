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

#ifndef MATHQA_WIKI_DUMP_H_
#define MATHQA_WIKI_DUMP_H_

#include <functional>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mathqa {

struct WikiSection {
  std::string heading;  // empty for the lead section
  std::string body;
};

struct MathSpan {
  size_t section = 0;
  std::string latex;  // trimmed content of <math>...</math>
};

struct WikiPage {
  std::string title;
  std::vector<std::string> categories;
  std::vector<WikiSection> sections;
  std::vector<MathSpan> math_spans;  // document order
  std::string text;                  // raw wikitext
};

class XmlError : public std::runtime_error {
 public:
  XmlError(const std::string &message, long long byte_offset);
  long long byte_offset() const { return byte_offset_; }

 private:
  long long byte_offset_;
};

// Wikitext the splitter cannot take apart, e.g. an unclosed <math> tag.
class WikiTextError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DumpIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Splits wikitext into sections on "== heading ==" lines and collects
// categories and math spans. <math chem>, <chem> and <ce> are not math.
// Throws WikiTextError.
WikiPage ParseWikiText(std::string title, std::string text);

struct ScanStats {
  std::string dump_id;  // <dbname> from siteinfo, if present
  size_t pages = 0;       // article pages seen
  size_t math_pages = 0;  // pages handed to the sink
  std::vector<std::string> warnings;
};

// Streams a MediaWiki XML export, calling `sink` for every main-namespace
// page with at least one math span, in document order. Pages with broken
// wikitext are skipped and noted in the warnings. Throws XmlError.
ScanStats ScanDump(std::istream &in, const std::function<void(WikiPage)> &sink);

// Throws DumpIoError, XmlError.
ScanStats ScanDumpFile(const std::string &path, const std::function<void(WikiPage)> &sink);

}  // namespace mathqa

#endif  // MATHQA_WIKI_DUMP_H_
