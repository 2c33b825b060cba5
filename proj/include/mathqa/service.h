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

#ifndef MATHQA_SERVICE_H_
#define MATHQA_SERVICE_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "json.hpp"
#include "mathqa/knowledge_store.h"
#include "mathqa/question_parser.h"

namespace mathqa {

// Payload status strings.
inline constexpr std::string_view kStatusOk = "ok";
inline constexpr std::string_view kStatusNeedsValues = "needs-values";
inline constexpr std::string_view kStatusNotFound = "not-found";
inline constexpr std::string_view kStatusUnparseable = "unparseable";
inline constexpr std::string_view kStatusDomainError = "domain-error";
inline constexpr std::string_view kStatusInvalidRequest = "invalid-request";

// A request the service refuses outright (missing fields, bad language,
// malformed bindings). The HTTP layer maps it to 400, the CLI to exit 2.
class InvalidRequest : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Ties parsing, retrieval and calculation together over one immutable store.
// All methods are const and may be called from many threads at once.
class QaService {
 public:
  QaService(KnowledgeStore store, std::optional<PatternTable> patterns);

  // {text, lang} -> {status, formula_latex, identifiers, qid, message, ...}.
  // lang is "en", "hi" or "formula". Throws InvalidRequest.
  nlohmann::json Ask(std::string_view text, std::string_view lang) const;

  // {qid?, property?, formula?, bindings} -> result payload. Throws
  // InvalidRequest.
  nlohmann::json Calculate(const nlohmann::json &request) const;

  // Items whose label or alias matches, as {items: [...]}.
  nlohmann::json Items(std::string_view label, std::string_view lang) const;

  const KnowledgeStore &store() const { return store_; }

 private:
  nlohmann::json AnswerFromTriple(const Triple &triple, std::string_view lang) const;

  KnowledgeStore store_;
  std::optional<PatternTable> patterns_;
  // Canonical formula -> (qid, quality label or "") of the first item
  // carrying it, for attaching KB constants to raw formulae.
  std::map<std::string, std::pair<std::string, std::string>> formula_owner_;
};

}  // namespace mathqa

#endif  // MATHQA_SERVICE_H_
