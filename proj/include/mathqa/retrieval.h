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

#ifndef MATHQA_RETRIEVAL_H_
#define MATHQA_RETRIEVAL_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mathqa/expr.h"
#include "mathqa/knowledge_store.h"
#include "mathqa/question_parser.h"

namespace mathqa {

// Which retrieval case produced an answer.
enum class Provenance { kDefiningFormula, kHasQuality };

std::string_view ProvenanceName(Provenance p);

struct FormulaAnswer {
  std::string qid;  // the subject item
  std::string item_label;
  Equation formula;
  std::string formula_latex;  // Render(formula)
  // Free identifiers of the formula (sorted), then any further KB parts.
  // KB metadata is attached where the symbols match.
  std::vector<IdentifierPart> identifiers;
  // Item each KB part came from, keyed by symbol.
  std::map<std::string, std::string> part_sources;
  Provenance provenance = Provenance::kDefiningFormula;
  // Item holding the formula; differs from qid for quality targets.
  std::string formula_qid;
  // Property label the quality was found under, empty for defining formulae.
  std::string property;
};

class RetrievalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ItemNotFound : public RetrievalError {
 public:
  ItemNotFound(std::string subject, std::vector<std::string> tried);
  const std::string &subject() const { return subject_; }
  const std::vector<std::string> &tried() const { return tried_; }

 private:
  std::string subject_;
  std::vector<std::string> tried_;
};

// Candidates the tie-break chain could not order. Unreachable with the
// qid rule in place.
class Ambiguous : public RetrievalError {
 public:
  explicit Ambiguous(std::vector<std::string> qids);
  const std::vector<std::string> &qids() const { return qids_; }

 private:
  std::vector<std::string> qids_;
};

// instance_of values marking an item as a geometric shape.
const std::vector<std::string> &ShapeClasses();

// Picks among items sharing a label: those that can answer the predicate,
// then (for geometry predicates) shapes, then the lowest qid. Returns
// nullptr for an empty list.
const KBItem *SelectCandidate(const KnowledgeStore &store,
                              const std::vector<const KBItem *> &candidates,
                              const Triple &triple);

// Resolves (subject, predicate, ?) against the store. Throws ItemNotFound,
// NoFormula, NoSuchQuality.
FormulaAnswer Retrieve(const Triple &triple, const KnowledgeStore &store, std::string_view lang);

// Builds the answer for a known item. `property` empty selects the
// defining formula. Throws ItemNotFound, NoFormula, NoSuchQuality.
FormulaAnswer AnswerForItem(const KnowledgeStore &store, std::string_view qid,
                            std::string_view property);

}  // namespace mathqa

#endif  // MATHQA_RETRIEVAL_H_
