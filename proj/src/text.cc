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

#include "mathqa/text.h"

#include <array>
#include <utility>

namespace mathqa {

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Multi-byte sequences folded onto ASCII before comparison.
constexpr std::array<std::pair<std::string_view, char>, 13> kFolds = {{
    {"’", '\''},  // right single quotation mark
    {"‘", '\''},  // left single quotation mark
    {"ʼ", '\''},  // modifier letter apostrophe
    {"′", '\''},  // prime
    {"´", '\''},  // acute accent
    {"‐", '-'},   // hyphen
    {"‑", '-'},   // non-breaking hyphen
    {"‒", '-'},   // figure dash
    {"–", '-'},   // en dash
    {"—", '-'},   // em dash
    {"−", '-'},   // minus sign
    {" ", ' '},   // no-break space
    {" ", ' '},   // narrow no-break space
}};

constexpr std::string_view kDanda = "।";
constexpr std::string_view kDoubleDanda = "॥";

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && IsSpace(s[b])) ++b;
  while (e > b && IsSpace(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string ToLowerAscii(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string NormalizeLabel(std::string_view label) {
  std::string folded;
  folded.reserve(label.size());
  for (size_t i = 0; i < label.size();) {
    bool matched = false;
    for (const auto &[from, to] : kFolds) {
      if (label.substr(i, from.size()) == from) {
        folded += to;
        i += from.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    folded += label[i++];
  }

  std::string out;
  out.reserve(folded.size());
  bool pending_space = false;
  for (char c : ToLowerAscii(folded)) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }

  for (;;) {
    while (!out.empty() && IsSpace(out.back())) out.pop_back();
    if (out.empty()) break;
    char c = out.back();
    if (c == '?' || c == '.' || c == '!' || c == ',' || c == ';' || c == ':') {
      out.pop_back();
    } else if (EndsWith(out, kDanda) || EndsWith(out, kDoubleDanda)) {
      out.resize(out.size() - kDanda.size());
    } else {
      break;
    }
  }
  return out;
}

}  // namespace mathqa
