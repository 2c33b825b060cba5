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

#include "mathqa/calculation.h"

#include <set>

namespace mathqa {

namespace {

std::string JoinNames(const std::vector<std::string> &names) {
  std::string out;
  for (const std::string &n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

bool IsLone(const Expression &side) {
  return side.kind() == NodeKind::kIdentifier || side.kind() == NodeKind::kFunctionHeader;
}

std::vector<std::string> Unbound(const std::set<std::string> &ids, const Bindings &b) {
  std::vector<std::string> out;
  for (const std::string &id : ids) {
    if (!b.Contains(id)) out.push_back(id);
  }
  return out;
}

// With a lone-identifier side to solve for, only the cheapest other side
// needs values. Without one, every unbound identifier is reported.
MissingBindings Missing(const Equation &eq, const Bindings &bindings) {
  bool has_target = false;
  std::optional<std::vector<std::string>> best;
  for (const Expression &side : eq.sides()) {
    if (IsLone(side)) {
      has_target = true;
      continue;
    }
    std::vector<std::string> unbound = Unbound(Identifiers(side), bindings);
    if (!best || unbound.size() < best->size()) best = std::move(unbound);
  }
  if (has_target && best) return MissingBindings{*best};
  return MissingBindings{Unbound(Identifiers(eq), bindings)};
}

}  // namespace

UnknownBinding::UnknownBinding(std::vector<std::string> names)
    : std::invalid_argument("the formula has no identifier named " + JoinNames(names)),
      names_(std::move(names)) {}

CalculationOutcome Calculate(const CalculationRequest &request) {
  const Equation &eq = request.formula;
  std::set<std::string> ids = Identifiers(eq);

  std::vector<std::string> unknown;
  for (const auto &[name, value] : request.user_bindings.values()) {
    if (ids.count(name) == 0) unknown.push_back(name);
  }
  if (!unknown.empty()) throw UnknownBinding(std::move(unknown));

  Bindings all = request.user_bindings;
  std::map<std::string, ConstantSource> injected;
  for (const IdentifierPart &part : request.kb_parts) {
    if (!part.value || ids.count(part.symbol) == 0 || all.Contains(part.symbol)) continue;
    all.Set(part.symbol, *part.value);
    auto source = request.part_sources.find(part.symbol);
    injected[part.symbol] = ConstantSource{
        source == request.part_sources.end() ? "" : source->second, part.label};
  }

  EvaluableSide side = [&] {
    try {
      return SelectEvaluableSide(eq, all);
    } catch (const NoEvaluableSide &) {
      return EvaluableSide{std::nullopt, eq.size(), Expression::Number(0)};
    }
  }();
  if (side.index == eq.size()) return Missing(eq, all);

  CalculationResult result;
  result.value = Evaluate(side.expression, all);
  result.solved_for = side.target;
  result.side_index = side.index;
  result.evaluated_latex = Render(side.expression);
  result.effective_bindings = request.user_bindings;
  for (const std::string &id : Identifiers(side.expression)) {
    auto it = injected.find(id);
    if (it == injected.end()) continue;
    result.effective_bindings.Set(id, *all.Get(id));
    result.constant_sources.insert(*it);
  }
  return result;
}

}  // namespace mathqa
