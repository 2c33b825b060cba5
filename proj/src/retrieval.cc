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

#include "mathqa/retrieval.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "mathqa/latex_parser.h"
#include "mathqa/text.h"

namespace mathqa {

namespace {

std::string JoinTried(const std::vector<std::string> &tried) {
  std::string out;
  for (const std::string &t : tried) {
    if (!out.empty()) out += "', '";
    out += t;
  }
  return "'" + out + "'";
}

std::string JoinQids(const std::vector<std::string> &qids) {
  std::string out;
  for (const std::string &q : qids) out += (out.empty() ? "" : ", ") + q;
  return out;
}

// Property labels to try for a geometry triple, most specific first.
std::vector<std::string> PropertyLabels(const Triple &triple) {
  std::vector<std::string> labels = {triple.property};
  std::string plain(PredicateName(triple.predicate));
  if (plain != triple.property) labels.push_back(plain);
  return labels;
}

bool CanAnswer(const KnowledgeStore &store, const KBItem &item, const Triple &triple) {
  try {
    if (triple.predicate == Predicate::kFormula) {
      store.DefiningFormula(item);
    } else {
      for (const std::string &label : PropertyLabels(triple)) {
        try {
          store.QualityFormula(item, label);
          return true;
        } catch (const NoSuchQuality &) {
        }
      }
      return false;
    }
    return true;
  } catch (const KnowledgeStoreError &) {
    return false;
  }
}

bool IsShape(const KBItem &item) {
  for (const std::string &cls : item.instance_of) {
    const auto &shapes = ShapeClasses();
    if (std::find(shapes.begin(), shapes.end(), cls) != shapes.end()) return true;
  }
  return false;
}

void AddParts(const KBItem &item, std::vector<IdentifierPart> &parts,
              std::map<std::string, std::string> &sources) {
  for (const IdentifierPart &part : item.parts) {
    if (sources.count(part.symbol) > 0) continue;
    sources[part.symbol] = item.qid;
    parts.push_back(part);
  }
}

FormulaAnswer Build(const KBItem &item, const std::string &latex,
                    const KBItem &formula_item, Provenance provenance, std::string property,
                    std::string_view lang) {
  Equation eq = ParseLatex(latex);
  FormulaAnswer answer{item.qid, item.Label(lang), eq, Render(eq), {}, {}, provenance,
                       formula_item.qid, std::move(property)};

  std::vector<IdentifierPart> parts;
  AddParts(formula_item, parts, answer.part_sources);
  if (&formula_item != &item) AddParts(item, parts, answer.part_sources);

  std::set<std::string> free = Identifiers(eq);
  for (const std::string &symbol : free) {
    auto it = std::find_if(parts.begin(), parts.end(),
                           [&](const IdentifierPart &p) { return p.symbol == symbol; });
    answer.identifiers.push_back(it != parts.end() ? *it : IdentifierPart{symbol, "", {}, {}});
  }
  for (const IdentifierPart &p : parts) {
    if (free.count(p.symbol) == 0) answer.identifiers.push_back(p);
  }
  return answer;
}

FormulaAnswer Answer(const KnowledgeStore &store, const KBItem &item, const Triple &triple,
                     std::string_view lang) {
  if (triple.predicate == Predicate::kFormula) {
    return Build(item, store.DefiningFormula(item), item, Provenance::kDefiningFormula, "",
                 lang);
  }
  std::vector<std::string> labels = PropertyLabels(triple);
  for (size_t i = 0; i < labels.size(); ++i) {
    try {
      std::string latex = store.QualityFormula(item, labels[i]);
      const KBItem &source = store.QualitySource(item, labels[i]);
      return Build(item, latex, source, Provenance::kHasQuality, labels[i], lang);
    } catch (const NoSuchQuality &) {
      if (i + 1 == labels.size()) throw;
    }
  }
  throw NoSuchQuality(item.qid, triple.property);
}

}  // namespace

std::string_view ProvenanceName(Provenance p) {
  return p == Provenance::kDefiningFormula ? "defining-formula" : "has-quality";
}

ItemNotFound::ItemNotFound(std::string subject, std::vector<std::string> tried)
    : RetrievalError("no item labelled " + JoinTried(tried)),
      subject_(std::move(subject)),
      tried_(std::move(tried)) {}

Ambiguous::Ambiguous(std::vector<std::string> qids)
    : RetrievalError("ambiguous candidates: " + JoinQids(qids)), qids_(std::move(qids)) {}

const std::vector<std::string> &ShapeClasses() {
  static const std::vector<std::string> kShapes = {
      "Q815741",  // geometric shape
      "Q172937",  // polyhedron
      "Q37555",   // polygon
  };
  return kShapes;
}

const KBItem *SelectCandidate(const KnowledgeStore &store,
                              const std::vector<const KBItem *> &candidates,
                              const Triple &triple) {
  const KBItem *best = nullptr;
  std::tuple<bool, bool, unsigned long long> best_key;
  for (const KBItem *item : candidates) {
    // Smaller keys win.
    std::tuple<bool, bool, unsigned long long> key = {
        !CanAnswer(store, *item, triple),
        triple.predicate != Predicate::kFormula && !IsShape(*item),
        QidNumber(item->qid).value_or(~0ULL),
    };
    if (best == nullptr || key < best_key) {
      best = item;
      best_key = key;
    } else if (key == best_key) {
      throw Ambiguous({best->qid, item->qid});
    }
  }
  return best;
}

FormulaAnswer Retrieve(const Triple &triple, const KnowledgeStore &store, std::string_view lang) {
  std::vector<std::string> tried = {triple.subject};
  std::vector<const KBItem *> candidates = store.LookupByLabel(triple.subject, lang);
  if (candidates.empty() && triple.subject.size() > 1 && triple.subject.back() == 's') {
    tried.push_back(triple.subject.substr(0, triple.subject.size() - 1));
    candidates = store.LookupByLabel(tried.back(), lang);
  }
  if (candidates.empty()) throw ItemNotFound(triple.subject, tried);
  return Answer(store, *SelectCandidate(store, candidates, triple), triple, lang);
}

FormulaAnswer AnswerForItem(const KnowledgeStore &store, std::string_view qid,
                            std::string_view property) {
  const KBItem *item = store.Find(qid);
  if (item == nullptr) throw ItemNotFound(std::string(qid), {std::string(qid)});
  if (property.empty()) {
    return Build(*item, store.DefiningFormula(*item), *item, Provenance::kDefiningFormula, "",
                 "en");
  }
  std::string label = NormalizeLabel(property);
  return Build(*item, store.QualityFormula(*item, label), store.QualitySource(*item, label),
               Provenance::kHasQuality, label, "en");
}

}  // namespace mathqa
