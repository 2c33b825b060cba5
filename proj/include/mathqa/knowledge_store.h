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

#ifndef MATHQA_KNOWLEDGE_STORE_H_
#define MATHQA_KNOWLEDGE_STORE_H_

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mathqa {

// Wikidata property ids modeled by the store.
inline constexpr std::string_view kDefiningFormulaProperty = "P2534";
inline constexpr std::string_view kHasQualityProperty = "P1552";
inline constexpr std::string_view kHasPartProperty = "P527";

// A "has quality" statement. The quality either points at another item
// carrying the defining formula or holds the formula inline.
struct QualityLink {
  std::string property_label;  // normalized, e.g. "area of plane shape"
  std::optional<std::string> target_qid;
  std::optional<std::string> inline_formula;
};

// A "has part" statement naming one identifier of the formula.
struct IdentifierPart {
  std::string symbol;  // canonical identifier name
  std::string label;
  std::optional<double> value;
  std::optional<std::string> unit;

  friend bool operator==(const IdentifierPart &, const IdentifierPart &) = default;
};

struct KBItem {
  std::string qid;
  std::map<std::string, std::string> labels;                // language -> label
  std::map<std::string, std::vector<std::string>> aliases;  // language -> aliases
  std::vector<std::string> defining_formulae;
  // Parallel to defining_formulae: false when the formula failed to parse.
  std::vector<bool> formula_parseable;
  std::vector<QualityLink> qualities;
  std::vector<IdentifierPart> parts;
  std::vector<std::string> instance_of;

  // Label in `lang`, falling back to English, then to the qid.
  std::string Label(std::string_view lang) const;
};

class KnowledgeStoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedRecord : public KnowledgeStoreError {
 public:
  MalformedRecord(size_t line, const std::string &reason);
  size_t line() const { return line_; }

 private:
  size_t line_;
};

class DuplicateQid : public KnowledgeStoreError {
 public:
  DuplicateQid(size_t line, const std::string &qid);
  size_t line() const { return line_; }

 private:
  size_t line_;
};

class StoreIoError : public KnowledgeStoreError {
 public:
  using KnowledgeStoreError::KnowledgeStoreError;
};

class NoFormula : public KnowledgeStoreError {
 public:
  // `unparseable` is true when formulae exist but none of them parse.
  NoFormula(const std::string &qid, bool unparseable);
  const std::string &qid() const { return qid_; }
  bool unparseable() const { return unparseable_; }

 private:
  std::string qid_;
  bool unparseable_;
};

class NoSuchQuality : public KnowledgeStoreError {
 public:
  NoSuchQuality(const std::string &qid, const std::string &property);
  const std::string &qid() const { return qid_; }

 private:
  std::string qid_;
};

// Read-only knowledge base ingested from a dump with one JSON item per line:
//
//   {"qid":"Q11518","labels":{"en":"Pythagorean theorem"},
//    "aliases":{"en":["Pythagoras' theorem"]},"instance_of":["Q65943"],
//    "defining_formulae":["c^2 = a^2 + b^2"],
//    "qualities":[{"label":"area","target_qid":"Q...","inline_formula":null}],
//    "parts":[{"symbol":"c","label":"hypotenuse","value":null,"unit":null}]}
//
// Absent fields default to empty. There are no mutating operations, so one
// store can be shared by any number of reader threads.
class KnowledgeStore {
 public:
  KnowledgeStore();

  // Throws StoreIoError, MalformedRecord, DuplicateQid.
  static KnowledgeStore Ingest(const std::string &path);
  static KnowledgeStore Parse(std::istream &in);

  size_t size() const;
  size_t unparseable_formula_count() const;
  std::vector<std::string> languages() const;

  // Items in ascending numeric qid order.
  const std::vector<KBItem> &items() const;
  const KBItem *Find(std::string_view qid) const;

  // Items whose label or alias in `lang` matches after NormalizeLabel,
  // ascending numeric qid.
  std::vector<const KBItem *> LookupByLabel(std::string_view label,
                                            std::string_view lang) const;

  // First parseable defining formula. Throws NoFormula.
  std::string DefiningFormula(const KBItem &item) const;

  // Formula of the quality whose label equals `property_label` or starts
  // with `property_label + " of"` ("area" matches "area of plane shape").
  // Exact matches win over prefix matches. Throws NoSuchQuality, NoFormula.
  std::string QualityFormula(const KBItem &item, std::string_view property_label) const;

  // Item providing the quality formula (the target item, or `item` itself
  // for an inline formula). Throws like QualityFormula.
  const KBItem &QualitySource(const KBItem &item, std::string_view property_label) const;

  const std::vector<IdentifierPart> &Parts(const KBItem &item) const {
    return item.parts;
  }

 private:
  struct Data;
  explicit KnowledgeStore(std::shared_ptr<const Data> data);

  const QualityLink &FindQuality(const KBItem &item, std::string_view property_label) const;

  std::shared_ptr<const Data> data_;
};

// Numeric part of a qid ("Q42" -> 42); nullopt if malformed.
std::optional<unsigned long long> QidNumber(std::string_view qid);

}  // namespace mathqa

#endif  // MATHQA_KNOWLEDGE_STORE_H_
