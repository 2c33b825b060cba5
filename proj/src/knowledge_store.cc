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

#include "mathqa/knowledge_store.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <unordered_map>

#include "json.hpp"
#include "mathqa/expr.h"
#include "mathqa/latex_parser.h"
#include "mathqa/text.h"

namespace mathqa {

using json = nlohmann::json;

MalformedRecord::MalformedRecord(size_t line, const std::string &reason)
    : KnowledgeStoreError("malformed record on line " + std::to_string(line) + ": " + reason),
      line_(line) {}

DuplicateQid::DuplicateQid(size_t line, const std::string &qid)
    : KnowledgeStoreError("duplicate qid " + qid + " on line " + std::to_string(line)),
      line_(line) {}

NoFormula::NoFormula(const std::string &qid, bool unparseable)
    : KnowledgeStoreError(unparseable ? qid + " has no parseable defining formula"
                                      : qid + " has no defining formula"),
      qid_(qid),
      unparseable_(unparseable) {}

NoSuchQuality::NoSuchQuality(const std::string &qid, const std::string &property)
    : KnowledgeStoreError(qid + " has no quality '" + property + "'"), qid_(qid) {}

std::optional<unsigned long long> QidNumber(std::string_view qid) {
  if (qid.size() < 2 || qid[0] != 'Q') return std::nullopt;
  unsigned long long n = 0;
  const char *begin = qid.data() + 1;
  const char *end = qid.data() + qid.size();
  for (const char *p = begin; p != end; ++p) {
    if (*p < '0' || *p > '9') return std::nullopt;
  }
  auto [ptr, ec] = std::from_chars(begin, end, n);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return n;
}

std::string KBItem::Label(std::string_view lang) const {
  auto it = labels.find(std::string(lang));
  if (it != labels.end()) return it->second;
  it = labels.find("en");
  if (it != labels.end()) return it->second;
  return qid;
}

struct KnowledgeStore::Data {
  std::vector<KBItem> items;
  std::unordered_map<std::string, size_t> by_qid;
  // language -> normalized label -> item indices (ascending, unique)
  std::map<std::string, std::map<std::string, std::vector<size_t>>> label_index;
  size_t unparseable = 0;
};

namespace {

std::string RequireString(const json &v, size_t line, const std::string &field) {
  if (!v.is_string()) throw MalformedRecord(line, field + " must be a string");
  return v.get<std::string>();
}

std::optional<std::string> OptionalString(const json &obj, const char *key, size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return RequireString(*it, line, key);
}

bool Parses(const std::string &latex) {
  try {
    ParseLatex(latex);
    return true;
  } catch (const LatexParseError &) {
    return false;
  }
}

KBItem ParseItem(const json &record, size_t line) {
  if (!record.is_object()) throw MalformedRecord(line, "record is not a JSON object");
  KBItem item;
  auto qid = record.find("qid");
  if (qid == record.end()) throw MalformedRecord(line, "missing qid");
  item.qid = RequireString(*qid, line, "qid");
  if (!QidNumber(item.qid)) throw MalformedRecord(line, "qid '" + item.qid + "' is not Q<digits>");

  if (auto it = record.find("labels"); it != record.end() && !it->is_null()) {
    if (!it->is_object()) throw MalformedRecord(line, "labels must be an object");
    for (const auto &[lang, label] : it->items()) {
      item.labels[lang] = RequireString(label, line, "labels." + lang);
    }
  }
  if (auto it = record.find("aliases"); it != record.end() && !it->is_null()) {
    if (!it->is_object()) throw MalformedRecord(line, "aliases must be an object");
    for (const auto &[lang, list] : it->items()) {
      if (!list.is_array()) throw MalformedRecord(line, "aliases." + lang + " must be a list");
      for (const json &alias : list) {
        item.aliases[lang].push_back(RequireString(alias, line, "aliases." + lang));
      }
    }
  }
  if (auto it = record.find("instance_of"); it != record.end() && !it->is_null()) {
    if (!it->is_array()) throw MalformedRecord(line, "instance_of must be a list");
    for (const json &q : *it) {
      std::string s = RequireString(q, line, "instance_of");
      if (!QidNumber(s)) throw MalformedRecord(line, "instance_of entry '" + s + "' is not a qid");
      item.instance_of.push_back(std::move(s));
    }
  }
  if (auto it = record.find("defining_formulae"); it != record.end() && !it->is_null()) {
    if (!it->is_array()) throw MalformedRecord(line, "defining_formulae must be a list");
    for (const json &f : *it) {
      std::string latex = RequireString(f, line, "defining_formulae");
      item.formula_parseable.push_back(Parses(latex));
      item.defining_formulae.push_back(std::move(latex));
    }
  }
  if (auto it = record.find("qualities"); it != record.end() && !it->is_null()) {
    if (!it->is_array()) throw MalformedRecord(line, "qualities must be a list");
    for (const json &q : *it) {
      if (!q.is_object()) throw MalformedRecord(line, "quality must be an object");
      QualityLink link;
      auto label = q.find("label");
      if (label == q.end()) throw MalformedRecord(line, "quality without label");
      link.property_label = NormalizeLabel(RequireString(*label, line, "qualities.label"));
      if (link.property_label.empty()) throw MalformedRecord(line, "empty quality label");
      link.target_qid = OptionalString(q, "target_qid", line);
      link.inline_formula = OptionalString(q, "inline_formula", line);
      if (link.target_qid && !QidNumber(*link.target_qid)) {
        throw MalformedRecord(line, "quality target '" + *link.target_qid + "' is not a qid");
      }
      if (!link.target_qid && !link.inline_formula) {
        throw MalformedRecord(line, "quality '" + link.property_label + "' has no target");
      }
      item.qualities.push_back(std::move(link));
    }
  }
  if (auto it = record.find("parts"); it != record.end() && !it->is_null()) {
    if (!it->is_array()) throw MalformedRecord(line, "parts must be a list");
    for (const json &p : *it) {
      if (!p.is_object()) throw MalformedRecord(line, "part must be an object");
      IdentifierPart part;
      auto symbol = p.find("symbol");
      if (symbol == p.end()) throw MalformedRecord(line, "part without symbol");
      std::string raw = RequireString(*symbol, line, "parts.symbol");
      std::optional<std::string> canonical = CanonicalIdentifier(raw);
      if (!canonical) throw MalformedRecord(line, "part symbol '" + raw + "' is not an identifier");
      part.symbol = *canonical;
      part.label = OptionalString(p, "label", line).value_or("");
      if (auto v = p.find("value"); v != p.end() && !v->is_null()) {
        if (!v->is_number()) throw MalformedRecord(line, "part value must be a number");
        part.value = v->get<double>();
      }
      part.unit = OptionalString(p, "unit", line);
      item.parts.push_back(std::move(part));
    }
  }
  return item;
}

}  // namespace

KnowledgeStore::KnowledgeStore() : data_(std::make_shared<Data>()) {}

KnowledgeStore::KnowledgeStore(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

KnowledgeStore KnowledgeStore::Ingest(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw StoreIoError("cannot open knowledge base '" + path + "'");
  return Parse(in);
}

KnowledgeStore KnowledgeStore::Parse(std::istream &in) {
  auto data = std::make_shared<Data>();
  std::map<std::string, size_t> seen;  // qid -> line
  std::string text;
  size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (Trim(text).empty()) continue;
    json record;
    try {
      record = json::parse(text);
    } catch (const json::parse_error &e) {
      throw MalformedRecord(line, e.what());
    }
    KBItem item = ParseItem(record, line);
    if (!seen.emplace(item.qid, line).second) throw DuplicateQid(line, item.qid);
    data->items.push_back(std::move(item));
  }
  if (in.bad()) throw StoreIoError("read error in knowledge base");

  std::sort(data->items.begin(), data->items.end(), [](const KBItem &a, const KBItem &b) {
    return *QidNumber(a.qid) < *QidNumber(b.qid);
  });
  for (size_t i = 0; i < data->items.size(); ++i) {
    const KBItem &item = data->items[i];
    data->by_qid[item.qid] = i;
    for (bool ok : item.formula_parseable) data->unparseable += ok ? 0 : 1;
    std::map<std::string, std::set<std::string>> keys;
    for (const auto &[lang, label] : item.labels) keys[lang].insert(NormalizeLabel(label));
    for (const auto &[lang, list] : item.aliases) {
      for (const std::string &alias : list) keys[lang].insert(NormalizeLabel(alias));
    }
    for (const auto &[lang, set] : keys) {
      for (const std::string &key : set) {
        if (!key.empty()) data->label_index[lang][key].push_back(i);
      }
    }
  }
  return KnowledgeStore(std::move(data));
}

size_t KnowledgeStore::size() const { return data_->items.size(); }

size_t KnowledgeStore::unparseable_formula_count() const { return data_->unparseable; }

std::vector<std::string> KnowledgeStore::languages() const {
  std::vector<std::string> out;
  for (const auto &[lang, index] : data_->label_index) out.push_back(lang);
  return out;
}

const std::vector<KBItem> &KnowledgeStore::items() const { return data_->items; }

const KBItem *KnowledgeStore::Find(std::string_view qid) const {
  auto it = data_->by_qid.find(std::string(qid));
  return it == data_->by_qid.end() ? nullptr : &data_->items[it->second];
}

std::vector<const KBItem *> KnowledgeStore::LookupByLabel(std::string_view label,
                                                          std::string_view lang) const {
  std::vector<const KBItem *> out;
  auto by_lang = data_->label_index.find(std::string(lang));
  if (by_lang == data_->label_index.end()) return out;
  auto hit = by_lang->second.find(NormalizeLabel(label));
  if (hit == by_lang->second.end()) return out;
  for (size_t i : hit->second) out.push_back(&data_->items[i]);
  return out;
}

std::string KnowledgeStore::DefiningFormula(const KBItem &item) const {
  for (size_t i = 0; i < item.defining_formulae.size(); ++i) {
    if (item.formula_parseable[i]) return item.defining_formulae[i];
  }
  throw NoFormula(item.qid, !item.defining_formulae.empty());
}

const QualityLink &KnowledgeStore::FindQuality(const KBItem &item,
                                               std::string_view property_label) const {
  std::string wanted = NormalizeLabel(property_label);
  for (const QualityLink &q : item.qualities) {
    if (q.property_label == wanted) return q;
  }
  std::string prefix = wanted + " of";
  for (const QualityLink &q : item.qualities) {
    const std::string &label = q.property_label;
    if (label.size() >= prefix.size() && label.compare(0, prefix.size(), prefix) == 0 &&
        (label.size() == prefix.size() || label[prefix.size()] == ' ')) {
      return q;
    }
  }
  throw NoSuchQuality(item.qid, wanted);
}

const KBItem &KnowledgeStore::QualitySource(const KBItem &item,
                                            std::string_view property_label) const {
  const QualityLink &q = FindQuality(item, property_label);
  if (q.inline_formula) return item;
  const KBItem *target = Find(*q.target_qid);
  if (target == nullptr) throw NoFormula(*q.target_qid, false);
  return *target;
}

std::string KnowledgeStore::QualityFormula(const KBItem &item,
                                           std::string_view property_label) const {
  const QualityLink &q = FindQuality(item, property_label);
  if (q.inline_formula) {
    if (!Parses(*q.inline_formula)) throw NoFormula(item.qid, true);
    return *q.inline_formula;
  }
  const KBItem *target = Find(*q.target_qid);
  if (target == nullptr) throw NoFormula(*q.target_qid, false);
  return DefiningFormula(*target);
}

}  // namespace mathqa
