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

#ifndef MATHQA_CALCULATION_H_
#define MATHQA_CALCULATION_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mathqa/expr.h"
#include "mathqa/knowledge_store.h"

namespace mathqa {

struct CalculationRequest {
  Equation formula;
  Bindings user_bindings;
  std::vector<IdentifierPart> kb_parts;
  // Item each KB part came from, keyed by symbol. Optional.
  std::map<std::string, std::string> part_sources;
};

struct ConstantSource {
  std::string qid;  // empty when unknown
  std::string label;

  friend bool operator==(const ConstantSource &, const ConstantSource &) = default;
};

struct CalculationResult {
  double value = 0;
  std::optional<std::string> solved_for;
  // User values plus the KB constants the evaluated side needed.
  Bindings effective_bindings;
  std::map<std::string, ConstantSource> constant_sources;
  size_t side_index = 0;
  std::string evaluated_latex;
};

// Identifiers still needing a value; drives the service's value prompt.
struct MissingBindings {
  std::vector<std::string> identifiers;
};

using CalculationOutcome = std::variant<CalculationResult, MissingBindings>;

// User bindings naming identifiers the formula does not contain.
class UnknownBinding : public std::invalid_argument {
 public:
  explicit UnknownBinding(std::vector<std::string> names);
  const std::vector<std::string> &names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

// Values come from the user first, then from KB parts; π and e are
// constants of the expression language itself. Throws UnknownBinding and
// MathDomainError.
CalculationOutcome Calculate(const CalculationRequest &request);

}  // namespace mathqa

#endif  // MATHQA_CALCULATION_H_
