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

#include "mathqa/question_parser.h"

#include <array>
#include <cstring>
#include <fstream>
#include <utility>

#include "mathqa/latex_parser.h"
#include "mathqa/text.h"

namespace mathqa {

namespace {

constexpr std::array<std::pair<Predicate, std::string_view>, 8> kPredicateNames = {{
    {Predicate::kFormula, "formula"},
    {Predicate::kVolume, "volume"},
    {Predicate::kArea, "area"},
    {Predicate::kCircumference, "circumference"},
    {Predicate::kPerimeter, "perimeter"},
    {Predicate::kCircumradius, "circumradius"},
    {Predicate::kInradius, "inradius"},
    {Predicate::kMedian, "median"},
}};

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

// Strips leading "a ", "an ", "the ".
std::string_view DropArticle(std::string_view s) {
  for (std::string_view article : {"a ", "an ", "the "}) {
    if (StartsWith(s, article) && s.size() > article.size()) return s.substr(article.size());
  }
  return s;
}

std::string StripLeadingPunctuation(std::string_view s) {
  size_t i = 0;
  while (i < s.size() && std::strchr("?!.,;:\"' ", s[i]) != nullptr) ++i;
  return std::string(s.substr(i));
}

std::optional<Triple> MatchFormulaTemplate(std::string_view q) {
  for (std::string_view prefix : {"what is the formula for ", "what is the formula of ",
                                  "what's the formula for ", "what's the formula of "}) {
    if (!StartsWith(q, prefix)) continue;
    std::string subject = Trim(DropArticle(q.substr(prefix.size())));
    if (subject.empty()) return std::nullopt;
    return MakeTriple(subject, Predicate::kFormula);
  }
  return std::nullopt;
}

std::optional<Triple> MatchPropertyTemplate(std::string_view q) {
  std::string_view rest;
  if (StartsWith(q, "what is the ")) {
    rest = q.substr(12);
  } else if (StartsWith(q, "what's the ")) {
    rest = q.substr(11);
  } else {
    return std::nullopt;
  }
  size_t of = rest.find(" of ");
  if (of == std::string_view::npos) return std::nullopt;
  std::string property = Trim(rest.substr(0, of));
  std::string subject = Trim(DropArticle(Trim(rest.substr(of + 4))));
  if (property.empty() || subject.empty()) return std::nullopt;

  size_t space = property.rfind(' ');
  std::string_view head =
      space == std::string::npos ? std::string_view(property)
                                 : std::string_view(property).substr(space + 1);
  std::optional<Predicate> p = PredicateFromName(head);
  if (!p || *p == Predicate::kFormula) return std::nullopt;
  Triple t = MakeTriple(subject, *p);
  t.property = property;
  return t;
}

bool IsAsciiAlpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

// Prose is not offered to the LaTeX parser: juxtaposed letters would
// otherwise turn "Tell me a joke" into a product of eleven variables.
bool LooksLikeFormula(std::string_view text) {
  bool signal = false;
  for (char c : text) {
    if (std::strchr("=+-*/^_\\()|", c) != nullptr || (c >= '0' && c <= '9') ||
        static_cast<unsigned char>(c) >= 0x80) {
      signal = true;
    }
  }
  if (!signal) return false;
  for (const std::string &token : Split(text, ' ')) {
    size_t letters = 0;
    for (char c : token) letters += IsAsciiAlpha(c) ? 1 : 0;
    if (letters >= 4 && letters == token.size()) return false;
  }
  return true;
}

}  // namespace

std::string_view PredicateName(Predicate p) {
  for (const auto &[pred, name] : kPredicateNames) {
    if (pred == p) return name;
  }
  return "formula";
}

std::optional<Predicate> PredicateFromName(std::string_view name) {
  for (const auto &[pred, n] : kPredicateNames) {
    if (n == name) return pred;
  }
  return std::nullopt;
}

const std::vector<Predicate> &GeometryPredicates() {
  static const std::vector<Predicate> kAll = {
      Predicate::kVolume,       Predicate::kArea,     Predicate::kCircumference,
      Predicate::kPerimeter,    Predicate::kCircumradius, Predicate::kInradius,
      Predicate::kMedian,
  };
  return kAll;
}

Triple MakeTriple(std::string_view subject, Predicate predicate) {
  Triple t;
  t.subject = NormalizeLabel(subject);
  t.predicate = predicate;
  t.property = std::string(PredicateName(predicate));
  return t;
}

ParsedQuestion ParseFormula(std::string_view text) {
  std::string trimmed = Trim(text);
  if (trimmed.empty()) return NoParse{"empty input"};
  try {
    return DirectFormula{ParseLatex(trimmed), trimmed};
  } catch (const LatexParseError &e) {
    return NoParse{e.what()};
  }
}

ParsedQuestion ParseEnglish(std::string_view question) {
  std::string q = StripLeadingPunctuation(NormalizeLabel(question));
  if (q.empty()) return NoParse{"empty question"};
  if (std::optional<Triple> t = MatchFormulaTemplate(q)) return *t;
  if (std::optional<Triple> t = MatchPropertyTemplate(q)) return *t;

  std::string trimmed = Trim(question);
  if (!LooksLikeFormula(trimmed)) {
    return NoParse{"question does not match any known question form"};
  }
  ParsedQuestion direct = ParseFormula(trimmed);
  if (auto *failure = std::get_if<NoParse>(&direct)) {
    failure->reason = "not a known question form and not a formula: " + failure->reason;
  }
  return direct;
}

PatternFileError::PatternFileError(size_t line, const std::string &reason)
    : std::runtime_error("pattern file line " + std::to_string(line) + ": " + reason),
      line_(line) {}

namespace {

constexpr char kSubjectMark = '\x01';
constexpr char kPredicateMark = '\x02';

std::string ReplaceAll(std::string s, std::string_view from, char to) {
  size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), 1, to);
    ++pos;
  }
  return s;
}

size_t Count(std::string_view s, char c) {
  size_t n = 0;
  for (char x : s) n += x == c ? 1 : 0;
  return n;
}

void CompilePattern(PatternTable::Pattern &p) {
  std::string text = ReplaceAll(ReplaceAll(p.text, "<X>", kSubjectMark), "<P>", kPredicateMark);
  text = NormalizeLabel(text);
  if (Count(text, kSubjectMark) != 1) throw PatternFileError(p.line, "pattern needs exactly one <X>");
  size_t predicates = Count(text, kPredicateMark);
  if (predicates > 1) throw PatternFileError(p.line, "pattern has more than one <P>");
  if (predicates == 1 && p.predicate) {
    throw PatternFileError(p.line, "pattern with <P> must use <P> as its predicate");
  }
  if (predicates == 0 && !p.predicate) {
    throw PatternFileError(p.line, "predicate <P> used but the pattern has no <P>");
  }

  std::string re = "\\s*";
  int group = 0;
  for (char c : text) {
    if (c == kSubjectMark || c == kPredicateMark) {
      ++group;
      (c == kSubjectMark ? p.subject_group : p.predicate_group) = group;
      re += "(.+?)";
    } else if (c == ' ') {
      re += "\\s+";
    } else if (std::strchr("\\^$.|?*+()[]{}", c) != nullptr) {
      re += '\\';
      re += c;
    } else {
      re += c;
    }
  }
  re += "\\s*";
  try {
    p.regex = std::regex(re, std::regex::ECMAScript);
  } catch (const std::regex_error &e) {
    throw PatternFileError(p.line, std::string("bad pattern: ") + e.what());
  }
}

}  // namespace

PatternTable PatternTable::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw PatternFileError(0, "cannot open '" + path + "'");
  return Parse(in);
}

PatternTable PatternTable::Parse(std::istream &in) {
  PatternTable table;
  std::string text;
  size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    std::string trimmed = Trim(text);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::vector<std::string> fields = Split(trimmed, '\t');
    for (std::string &f : fields) f = Trim(f);

    if (fields[0] == "@predicate") {
      if (fields.size() != 3) throw PatternFileError(line, "@predicate needs a word and a predicate");
      std::optional<Predicate> p = PredicateFromName(fields[2]);
      if (!p) throw PatternFileError(line, "unknown predicate '" + fields[2] + "'");
      table.predicate_words_[NormalizeLabel(fields[1])] = *p;
      continue;
    }
    if (fields[0] == "@stem") {
      if (fields.size() != 3) throw PatternFileError(line, "@stem needs a form and its stem");
      table.stems_[NormalizeLabel(fields[1])] = NormalizeLabel(fields[2]);
      continue;
    }
    if (fields[0][0] == '@') throw PatternFileError(line, "unknown directive '" + fields[0] + "'");
    if (fields.size() != 2 && fields.size() != 4) {
      throw PatternFileError(line, "expected 2 or 4 tab-separated fields");
    }

    Pattern p;
    p.line = line;
    p.text = fields[0];
    if (fields[1] != "<P>") {
      p.predicate = PredicateFromName(fields[1]);
      if (!p.predicate) throw PatternFileError(line, "unknown predicate '" + fields[1] + "'");
    }
    if (fields.size() == 4) {
      p.example = fields[2];
      p.expected_subject = fields[3];
    }
    CompilePattern(p);
    table.patterns_.push_back(std::move(p));
  }

  // Directives may follow the patterns that use them.
  for (const Pattern &p : table.patterns_) {
    if (p.example.empty()) continue;
    ParsedQuestion q = ParseHindi(p.example, table);
    const Triple *t = std::get_if<Triple>(&q);
    if (t == nullptr) throw PatternFileError(p.line, "example '" + p.example + "' does not parse");
    if (t->subject != table.Stem(p.expected_subject)) {
      throw PatternFileError(p.line, "example subject is '" + t->subject + "', expected '" +
                                         p.expected_subject + "'");
    }
  }
  return table;
}

std::string PatternTable::Stem(std::string_view subject) const {
  std::string s = NormalizeLabel(subject);
  size_t space = s.rfind(' ');
  size_t start = space == std::string::npos ? 0 : space + 1;
  auto it = stems_.find(s.substr(start));
  if (it != stems_.end()) s = s.substr(0, start) + it->second;
  return s;
}

ParsedQuestion ParseHindi(std::string_view question, const PatternTable &patterns) {
  std::string q = NormalizeLabel(question);
  if (q.empty()) return NoParse{"empty question"};
  for (const PatternTable::Pattern &p : patterns.patterns()) {
    std::smatch m;
    if (!std::regex_match(q, m, p.regex)) continue;
    Predicate predicate = Predicate::kFormula;
    if (p.predicate) {
      predicate = *p.predicate;
    } else {
      auto word = patterns.predicate_words().find(NormalizeLabel(m[p.predicate_group].str()));
      if (word == patterns.predicate_words().end()) continue;
      predicate = word->second;
    }
    std::string subject = patterns.Stem(m[p.subject_group].str());
    if (subject.empty()) continue;
    return MakeTriple(subject, predicate);
  }
  return NoParse{"no Hindi question pattern matches"};
}

}  // namespace mathqa
