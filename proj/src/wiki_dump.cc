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

#include "mathqa/wiki_dump.h"

#include <expat.h>

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <memory>

#include "mathqa/text.h"

namespace mathqa {

XmlError::XmlError(const std::string &message, long long byte_offset)
    : std::runtime_error("XML error at byte " + std::to_string(byte_offset) + ": " + message),
      byte_offset_(byte_offset) {}

namespace {

bool IsBlank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// Position of `needle` in `s` at or after `from`, ignoring ASCII case.
size_t FindNoCase(std::string_view s, std::string_view needle, size_t from) {
  if (needle.size() > s.size()) return std::string_view::npos;
  for (size_t i = from; i + needle.size() <= s.size(); ++i) {
    size_t k = 0;
    while (k < needle.size() && std::tolower(static_cast<unsigned char>(s[i + k])) ==
                                    std::tolower(static_cast<unsigned char>(needle[k]))) {
      ++k;
    }
    if (k == needle.size()) return i;
  }
  return std::string_view::npos;
}

std::string StripComments(const std::string &text) {
  std::string out;
  size_t pos = 0;
  for (;;) {
    size_t open = text.find("<!--", pos);
    if (open == std::string::npos) break;
    out.append(text, pos, open - pos);
    size_t close = text.find("-->", open + 4);
    if (close == std::string::npos) return out;
    pos = close + 3;
  }
  out.append(text, pos, std::string::npos);
  return out;
}

// "== Area ==" -> "Area". Level one headings ("= x =") are page titles in
// wikitext and not treated as sections.
std::optional<std::string> Heading(std::string_view line) {
  std::string t = Trim(line);
  size_t lead = 0;
  while (lead < t.size() && t[lead] == '=') ++lead;
  size_t trail = 0;
  while (trail < t.size() - lead && t[t.size() - 1 - trail] == '=') ++trail;
  size_t level = std::min(lead, trail);
  if (level < 2 || t.size() <= 2 * level) return std::nullopt;
  return Trim(std::string_view(t).substr(level, t.size() - 2 * level));
}

void CollectCategories(const std::string &text, std::vector<std::string> &out) {
  size_t pos = 0;
  while ((pos = FindNoCase(text, "[[category:", pos)) != std::string::npos) {
    size_t start = pos + 11;
    size_t end = text.find("]]", start);
    if (end == std::string::npos) break;
    std::string name = text.substr(start, end - start);
    name = Trim(name.substr(0, name.find('|')));
    if (!name.empty()) out.push_back(name);
    pos = end + 2;
  }
}

struct RawSpan {
  size_t offset;
  std::string latex;
};

std::vector<RawSpan> CollectMath(const std::string &text) {
  std::vector<RawSpan> spans;
  size_t pos = 0;
  while ((pos = FindNoCase(text, "<math", pos)) != std::string::npos) {
    size_t after = pos + 5;
    if (after >= text.size()) throw WikiTextError("unterminated <math> tag");
    if (text[after] != '>' && !IsBlank(text[after]) && text[after] != '/') {
      pos = after;  // e.g. <mathx>
      continue;
    }
    size_t tag_end = text.find('>', after);
    if (tag_end == std::string::npos) throw WikiTextError("unterminated <math> tag");
    std::string_view attributes(text.data() + after, tag_end - after);
    if (!attributes.empty() && attributes.back() == '/') {
      pos = tag_end + 1;  // <math/>
      continue;
    }
    size_t close = FindNoCase(text, "</math>", tag_end + 1);
    if (close == std::string::npos) throw WikiTextError("unclosed <math> tag");
    bool chem = FindNoCase(attributes, "chem", 0) != std::string_view::npos;
    std::string latex = Trim(std::string_view(text).substr(tag_end + 1, close - tag_end - 1));
    if (!chem && !latex.empty()) spans.push_back({pos, std::move(latex)});
    pos = close + 7;
  }
  return spans;
}

}  // namespace

WikiPage ParseWikiText(std::string title, std::string text) {
  WikiPage page;
  page.title = std::move(title);
  std::string clean = StripComments(text);
  page.text = std::move(text);

  CollectCategories(clean, page.categories);
  std::vector<RawSpan> spans = CollectMath(clean);

  // Section start offsets, parallel to page.sections.
  std::vector<size_t> starts = {0};
  page.sections.push_back({"", ""});
  size_t line_start = 0;
  while (line_start <= clean.size()) {
    size_t line_end = clean.find('\n', line_start);
    if (line_end == std::string::npos) line_end = clean.size();
    std::string_view line(clean.data() + line_start, line_end - line_start);
    if (std::optional<std::string> heading = Heading(line)) {
      page.sections.push_back({*heading, ""});
      starts.push_back(line_start);
    } else {
      page.sections.back().body.append(line).append("\n");
    }
    line_start = line_end + 1;
  }

  for (RawSpan &span : spans) {
    size_t section = 0;
    while (section + 1 < starts.size() && starts[section + 1] <= span.offset) ++section;
    page.math_spans.push_back({section, std::move(span.latex)});
  }
  return page;
}

namespace {

class DumpHandler {
 public:
  explicit DumpHandler(ScanStats *stats) : stats_(stats) {}

  static void OnStart(void *self, const XML_Char *name, const XML_Char **) {
    static_cast<DumpHandler *>(self)->Start(name);
  }
  static void OnEnd(void *self, const XML_Char *name) {
    static_cast<DumpHandler *>(self)->End(name);
  }
  static void OnText(void *self, const XML_Char *s, int len) {
    auto *h = static_cast<DumpHandler *>(self);
    if (h->capture_ != nullptr) h->capture_->append(s, len);
  }

  std::deque<WikiPage> &ready() { return ready_; }

 private:
  void Start(std::string_view name) {
    if (name == "page") {
      in_page_ = true;
      title_.clear();
      ns_.clear();
      text_.clear();
    } else if (in_page_ && name == "title") {
      capture_ = &title_;
    } else if (in_page_ && name == "ns") {
      capture_ = &ns_;
    } else if (in_page_ && name == "text") {
      capture_ = &text_;
    } else if (!in_page_ && name == "dbname") {
      capture_ = &stats_->dump_id;
    }
  }

  void End(std::string_view name) {
    capture_ = nullptr;
    if (name != "page") return;
    in_page_ = false;
    std::string ns = Trim(ns_);
    if (!ns.empty() && ns != "0") return;
    ++stats_->pages;
    try {
      WikiPage page = ParseWikiText(Trim(title_), std::move(text_));
      if (page.math_spans.empty()) return;
      ++stats_->math_pages;
      ready_.push_back(std::move(page));
    } catch (const WikiTextError &e) {
      stats_->warnings.push_back("skipped page '" + Trim(title_) + "': " + e.what());
    }
  }

  ScanStats *stats_;
  bool in_page_ = false;
  std::string *capture_ = nullptr;
  std::string title_, ns_, text_;
  std::deque<WikiPage> ready_;
};

}  // namespace

ScanStats ScanDump(std::istream &in, const std::function<void(WikiPage)> &sink) {
  ScanStats stats;
  DumpHandler handler(&stats);
  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(XML_ParserCreate("UTF-8"),
                                                                      &XML_ParserFree);
  if (!parser) throw DumpIoError("cannot allocate XML parser");
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(parser.get(), &DumpHandler::OnStart, &DumpHandler::OnEnd);
  XML_SetCharacterDataHandler(parser.get(), &DumpHandler::OnText);

  // Pages are handed to the sink between chunks so that exceptions thrown by
  // the sink never unwind through expat.
  std::vector<char> buffer(1 << 16);
  for (;;) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    std::streamsize n = in.gcount();
    bool last = n < static_cast<std::streamsize>(buffer.size());
    if (in.bad()) throw DumpIoError("read error in dump");
    if (XML_Parse(parser.get(), buffer.data(), static_cast<int>(n), last) == XML_STATUS_ERROR) {
      throw XmlError(XML_ErrorString(XML_GetErrorCode(parser.get())),
                     XML_GetCurrentByteIndex(parser.get()));
    }
    while (!handler.ready().empty()) {
      WikiPage page = std::move(handler.ready().front());
      handler.ready().pop_front();
      sink(std::move(page));
    }
    if (last) break;
  }
  stats.dump_id = Trim(stats.dump_id);
  return stats;
}

ScanStats ScanDumpFile(const std::string &path, const std::function<void(WikiPage)> &sink) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DumpIoError("cannot open dump '" + path + "'");
  return ScanDump(in, sink);
}

}  // namespace mathqa
