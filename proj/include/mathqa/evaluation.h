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

#ifndef MATHQA_EVALUATION_H_
#define MATHQA_EVALUATION_H_

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mathqa/knowledge_store.h"
#include "mathqa/question_parser.h"

namespace mathqa {

// Seeding annotations say whether a page's formula was retrieved. Retrieval
// annotations carry a true/false verdict per answered question: a correct
// answer counts as a true positive, a wrong one as a false positive.
enum class AnnotationMode { kSeeding, kRetrieval };

enum class Outcome { kTruePositive, kFalsePositive, kFalseNegative, kTrueNegative };

struct Annotation {
  long long id = 0;
  std::string name;
  bool relevant = false;
  bool observed = false;  // retrieved, or verdict true
  Outcome outcome = Outcome::kTrueNegative;
};

struct ContingencyMatrix {
  long long tp = 0, fp = 0, fn = 0, tn = 0;

  long long total() const { return tp + fp + fn + tn; }
  friend bool operator==(const ContingencyMatrix &, const ContingencyMatrix &) = default;
};

// Unset members are undefined (zero denominator).
struct Metrics {
  std::optional<double> precision, recall, f1, accuracy;
};

class EvalError : public std::runtime_error {
 public:
  EvalError(size_t line, const std::string &reason);
  size_t line() const { return line_; }

 private:
  size_t line_;
};

class DuplicateId : public EvalError {
 public:
  DuplicateId(size_t line, long long id);
};

class UnknownLabel : public EvalError {
 public:
  UnknownLabel(size_t line, const std::string &label);
};

// Annotation CSV with header "id,name,expected,observed". expected is
// relevant|non-relevant; observed is retrieved|not-retrieved in seeding mode
// and true|false in retrieval mode. Fields may be double-quoted.
std::vector<Annotation> ReadAnnotations(std::istream &in, AnnotationMode mode);
std::vector<Annotation> LoadAnnotations(const std::string &path, AnnotationMode mode);

ContingencyMatrix Tabulate(const std::vector<Annotation> &annotations);

// P = tp/(tp+fp), R = tp/(tp+fn), F1 from the unrounded P and R,
// accuracy = (tp+tn)/total.
Metrics ComputeMetrics(const ContingencyMatrix &m);

// Rounds half away from zero to `digits` decimals.
double RoundTo(double value, int digits);

std::string FormatReport(const ContingencyMatrix &m, const Metrics &metrics);
std::string ReportJson(const ContingencyMatrix &m, const Metrics &metrics);

struct QuestionCase {
  size_t line = 0;
  std::string question;
  std::optional<std::string> expected_latex;  // nullopt for ABSENT
  std::string lang = "en";
};

struct Verdict {
  QuestionCase question;
  bool correct = false;
  std::string retrieved_latex;  // empty when nothing was retrieved
  std::string detail;
};

struct RetrievalScore {
  std::vector<Verdict> verdicts;  // file order
  size_t correct = 0;
  std::optional<double> accuracy;
};

// Lines "question TAB expected_latex|ABSENT [TAB en|hi|formula]"; blank
// lines and lines starting with '#' are skipped. Throws EvalError.
std::vector<QuestionCase> ReadQuestions(std::istream &in);
std::vector<QuestionCase> LoadQuestions(const std::string &path);

// Runs parse and retrieval for every question. A verdict is correct when the
// retrieved formula is structurally equal to the expected one, or, for
// ABSENT, when nothing is retrieved. `patterns` is needed for Hindi
// questions; without it they score as not retrieved.
RetrievalScore ScoreRetrieval(const KnowledgeStore &store,
                              const std::vector<QuestionCase> &questions,
                              const PatternTable *patterns);

std::string FormatVerdicts(const RetrievalScore &score);
std::string VerdictsJson(const RetrievalScore &score);

}  // namespace mathqa

#endif  // MATHQA_EVALUATION_H_
