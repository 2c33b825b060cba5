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

#ifndef MATHQA_QUESTION_PARSER_H_
#define MATHQA_QUESTION_PARSER_H_

#include <istream>
#include <map>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mathqa/expr.h"

namespace mathqa {

enum class Predicate {
  kFormula,
  kVolume,
  kArea,
  kCircumference,
  kPerimeter,
  kCircumradius,
  kInradius,
  kMedian,
};

// Lowercase English name, e.g. "volume".
std::string_view PredicateName(Predicate p);
std::optional<Predicate> PredicateFromName(std::string_view name);
const std::vector<Predicate> &GeometryPredicates();

// (subject, predicate, ?). The object is filled in by retrieval.
struct Triple {
  std::string subject;  // NormalizeLabel'd
  Predicate predicate = Predicate::kFormula;
  // Property phrase as asked, e.g. "surface area" for predicate kArea.
  // Equals PredicateName(predicate) unless the question qualified it.
  std::string property;

  friend bool operator==(const Triple &, const Triple &) = default;
};

struct DirectFormula {
  Equation equation;
  std::string source;
};

struct NoParse {
  std::string reason;
};

using ParsedQuestion = std::variant<Triple, DirectFormula, NoParse>;

Triple MakeTriple(std::string_view subject, Predicate predicate);

// Ordered template grammar, case-insensitive:
//   1. "what is the formula for|of X"            -> (X, formula, ?)
//   2. "what is the [Q] P of [a|an|the] X"      -> (X, P, ?)
//   3. anything ParseLatex accepts                -> DirectFormula
//   4. otherwise                                  -> NoParse
// Never throws.
ParsedQuestion ParseEnglish(std::string_view question);

// Direct formula input. NoParse carries the parser's message.
ParsedQuestion ParseFormula(std::string_view text);

class PatternFileError : public std::runtime_error {
 public:
  PatternFileError(size_t line, const std::string &reason);
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Regular-expression table for Hindi questions. File format, UTF-8, one
// entry per line, fields separated by TAB:
//
//   # comment
//   <X> का सूत्र क्या है	formula	[example	expected subject]
//   <X> का <P> क्या है	<P>
//   @predicate	आयतन	volume
//   @stem	गोले	गोला
//
// A pattern holds exactly one <X> (the subject) and optionally one <P>
// (a predicate word translated through the @predicate entries). Runs of
// spaces match any whitespace. @stem rewrites the last word of a captured
// subject, turning oblique forms into the label form.
class PatternTable {
 public:
  struct Pattern {
    size_t line = 0;
    std::string text;
    // Unset when the predicate comes from the <P> capture.
    std::optional<Predicate> predicate;
    std::string example;
    std::string expected_subject;
    std::regex regex;
    int subject_group = 1;
    int predicate_group = 0;
  };

  static PatternTable Load(const std::string &path);
  static PatternTable Parse(std::istream &in);

  const std::vector<Pattern> &patterns() const { return patterns_; }
  const std::map<std::string, Predicate> &predicate_words() const { return predicate_words_; }

  // Subject after @stem rewriting and label normalization.
  std::string Stem(std::string_view subject) const;

 private:
  std::vector<Pattern> patterns_;
  std::map<std::string, Predicate> predicate_words_;
  std::map<std::string, std::string> stems_;
};

// First pattern that matches wins. Never throws.
ParsedQuestion ParseHindi(std::string_view question, const PatternTable &patterns);

}  // namespace mathqa

#endif  // MATHQA_QUESTION_PARSER_H_
