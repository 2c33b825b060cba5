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

#include "mathqa/service.h"

#include "mathqa/calculation.h"
#include "mathqa/latex_parser.h"
#include "mathqa/retrieval.h"
#include "mathqa/text.h"

namespace mathqa {

using json = nlohmann::json;

namespace {

json Status(std::string_view status, std::string message) {
  return json{{"status", status}, {"message", std::move(message)}};
}

json OptionalJson(const std::optional<std::string> &s) { return s ? json(*s) : json(nullptr); }

// The identifier solved for when the equation has a lone-identifier side.
std::optional<std::string> SolveTarget(const Equation &eq) {
  for (const Expression &side : eq.sides()) {
    if (side.kind() == NodeKind::kIdentifier || side.kind() == NodeKind::kFunctionHeader) {
      return side.name();
    }
  }
  return std::nullopt;
}

json IdentifierList(const Equation &eq, const std::vector<IdentifierPart> &parts,
                    const std::map<std::string, std::string> &sources,
                    const std::optional<std::string> &skip) {
  json list = json::array();
  for (const std::string &symbol : Identifiers(eq)) {
    if (skip && symbol == *skip) continue;
    json entry = {{"symbol", symbol},       {"label", ""},          {"known_value", nullptr},
                  {"unit", nullptr},        {"source_qid", nullptr}};
    for (const IdentifierPart &p : parts) {
      if (p.symbol != symbol) continue;
      entry["label"] = p.label;
      entry["known_value"] = p.value ? json(*p.value) : json(nullptr);
      entry["unit"] = OptionalJson(p.unit);
      auto src = sources.find(symbol);
      if (src != sources.end()) entry["source_qid"] = src->second;
      break;
    }
    list.push_back(std::move(entry));
  }
  return list;
}

// ok or needs-values: a formula with something to solve for needs values
// unless the knowledge base already supplies all of them.
json FormulaPayload(const Equation &eq, const std::vector<IdentifierPart> &parts,
                    const std::map<std::string, std::string> &sources) {
  std::optional<std::string> target = SolveTarget(eq);
  std::string_view status = kStatusOk;
  if (target) {
    try {
      CalculationOutcome outcome = Calculate(CalculationRequest{eq, {}, parts, sources});
      if (std::holds_alternative<MissingBindings>(outcome)) status = kStatusNeedsValues;
    } catch (const std::exception &) {
      status = kStatusNeedsValues;
    }
  }
  return json{{"status", status},
              {"message", ""},
              {"formula_latex", Render(eq)},
              {"solves_for", OptionalJson(target)},
              {"identifiers", IdentifierList(eq, parts, sources, target)}};
}

json NotFound(const std::exception &e) { return Status(kStatusNotFound, e.what()); }

}  // namespace

QaService::QaService(KnowledgeStore store, std::optional<PatternTable> patterns)
    : store_(std::move(store)), patterns_(std::move(patterns)) {
  for (const KBItem &item : store_.items()) {
    for (size_t i = 0; i < item.defining_formulae.size(); ++i) {
      if (!item.formula_parseable[i]) continue;
      formula_owner_.try_emplace(Render(ParseLatex(item.defining_formulae[i])), item.qid, "");
    }
    for (const QualityLink &q : item.qualities) {
      try {
        std::string latex = store_.QualityFormula(item, q.property_label);
        formula_owner_.try_emplace(Render(ParseLatex(latex)), item.qid, q.property_label);
      } catch (const KnowledgeStoreError &) {
      }
    }
  }
}

json QaService::AnswerFromTriple(const Triple &triple, std::string_view lang) const {
  try {
    FormulaAnswer a = Retrieve(triple, store_, lang);
    json payload = FormulaPayload(a.formula, a.identifiers, a.part_sources);
    payload["qid"] = a.qid;
    payload["item_label"] = a.item_label;
    payload["provenance"] = ProvenanceName(a.provenance);
    payload["property"] = a.property;
    payload["formula_qid"] = a.formula_qid;
    return payload;
  } catch (const NoFormula &e) {
    return Status(e.unparseable() ? kStatusUnparseable : kStatusNotFound, e.what());
  } catch (const RetrievalError &e) {
    return NotFound(e);
  } catch (const KnowledgeStoreError &e) {
    return NotFound(e);
  }
}

json QaService::Ask(std::string_view text, std::string_view lang) const {
  if (Trim(text).empty()) throw InvalidRequest("question text is empty");
  ParsedQuestion parsed = NoParse{""};
  if (lang == "en") {
    parsed = ParseEnglish(text);
  } else if (lang == "hi") {
    if (!patterns_) return Status(kStatusUnparseable, "no Hindi pattern table is loaded");
    parsed = ParseHindi(text, *patterns_);
  } else if (lang == "formula") {
    parsed = ParseFormula(text);
  } else {
    throw InvalidRequest("unknown language '" + std::string(lang) + "'");
  }

  json payload;
  if (const auto *t = std::get_if<Triple>(&parsed)) {
    payload = AnswerFromTriple(*t, lang == "hi" ? "hi" : "en");
    payload["subject"] = t->subject;
    payload["predicate"] = PredicateName(t->predicate);
  } else if (const auto *d = std::get_if<DirectFormula>(&parsed)) {
    std::vector<IdentifierPart> parts;
    std::map<std::string, std::string> sources;
    auto owner = formula_owner_.find(Render(d->equation));
    if (owner != formula_owner_.end()) {
      FormulaAnswer a = AnswerForItem(store_, owner->second.first, owner->second.second);
      parts = a.identifiers;
      sources = a.part_sources;
    }
    payload = FormulaPayload(d->equation, parts, sources);
    payload["qid"] = owner != formula_owner_.end() ? json(owner->second.first) : json(nullptr);
    payload["provenance"] = "direct-formula";
  } else {
    payload = Status(kStatusUnparseable, std::get<NoParse>(parsed).reason);
  }
  if (!payload.contains("qid")) payload["qid"] = nullptr;
  return payload;
}

json QaService::Calculate(const json &request) const {
  if (!request.is_object()) throw InvalidRequest("request body must be a JSON object");
  auto text_field = [&](const char *key) -> std::optional<std::string> {
    auto it = request.find(key);
    if (it == request.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw InvalidRequest(std::string(key) + " must be a string");
    return it->get<std::string>();
  };
  std::optional<std::string> qid = text_field("qid");
  std::optional<std::string> property = text_field("property");
  std::optional<std::string> formula = text_field("formula");
  if (!qid && !formula) throw InvalidRequest("either qid or formula is required");

  Bindings user;
  if (auto it = request.find("bindings"); it != request.end() && !it->is_null()) {
    if (!it->is_object()) throw InvalidRequest("bindings must be an object");
    for (const auto &[name, value] : it->items()) {
      if (!value.is_number()) throw InvalidRequest("binding '" + name + "' is not a number");
      try {
        user.Set(name, value.get<double>());
      } catch (const std::invalid_argument &e) {
        throw InvalidRequest(e.what());
      }
    }
  }

  std::optional<Equation> eq;
  std::vector<IdentifierPart> parts;
  std::map<std::string, std::string> sources;
  try {
    if (formula) eq = ParseLatex(*formula);
  } catch (const LatexParseError &e) {
    return Status(kStatusUnparseable, e.what());
  }
  std::optional<std::pair<std::string, std::string>> owner;
  if (qid) {
    owner = std::make_pair(*qid, property.value_or(""));
  } else if (auto it = formula_owner_.find(Render(*eq)); it != formula_owner_.end()) {
    owner = it->second;
  }
  if (owner) {
    try {
      FormulaAnswer a = AnswerForItem(store_, owner->first, owner->second);
      if (!eq) eq = a.formula;
      parts = a.identifiers;
      sources = a.part_sources;
    } catch (const NoFormula &e) {
      return Status(e.unparseable() ? kStatusUnparseable : kStatusNotFound, e.what());
    } catch (const std::runtime_error &e) {
      return NotFound(e);
    }
  }

  CalculationOutcome outcome = CalculationResult{};
  try {
    outcome = mathqa::Calculate(CalculationRequest{*eq, user, parts, sources});
  } catch (const UnknownBinding &e) {
    throw InvalidRequest(e.what());
  } catch (const MathDomainError &e) {
    json payload = Status(kStatusDomainError, e.what());
    payload["subexpression"] = e.subexpression();
    payload["formula_latex"] = Render(*eq);
    return payload;
  }

  json payload;
  if (const auto *missing = std::get_if<MissingBindings>(&outcome)) {
    payload = FormulaPayload(*eq, parts, sources);
    payload["status"] = kStatusNeedsValues;
    payload["missing"] = missing->identifiers;
    payload["message"] = "values needed for: " + [&] {
      std::string names;
      for (const std::string &n : missing->identifiers) names += (names.empty() ? "" : ", ") + n;
      return names;
    }();
  } else {
    const auto &r = std::get<CalculationResult>(outcome);
    json sources_json = json::object();
    for (const auto &[symbol, src] : r.constant_sources) {
      sources_json[symbol] = {{"qid", src.qid}, {"label", src.label}};
    }
    payload = {{"status", kStatusOk},
               {"message", ""},
               {"value", r.value},
               {"solved_for", OptionalJson(r.solved_for)},
               {"evaluated_latex", r.evaluated_latex},
               {"side_index", r.side_index},
               {"effective_bindings", r.effective_bindings.values()},
               {"constant_sources", sources_json},
               {"formula_latex", Render(*eq)}};
  }
  payload["qid"] = owner ? json(owner->first) : json(nullptr);
  return payload;
}

json QaService::Items(std::string_view label, std::string_view lang) const {
  json items = json::array();
  for (const KBItem *item : store_.LookupByLabel(label, lang)) {
    json qualities = json::array();
    for (const QualityLink &q : item->qualities) qualities.push_back(q.property_label);
    bool formula = false;
    for (bool ok : item->formula_parseable) formula = formula || ok;
    items.push_back({{"qid", item->qid},
                     {"label", item->Label(lang)},
                     {"instance_of", item->instance_of},
                     {"has_defining_formula", formula},
                     {"qualities", qualities}});
  }
  return json{{"status", kStatusOk}, {"items", items}};
}

}  // namespace mathqa
