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

// Command tables shared by the LaTeX parser and the renderer.

#ifndef MATHQA_SRC_LATEX_TABLES_H_
#define MATHQA_SRC_LATEX_TABLES_H_

#include <optional>
#include <string>
#include <string_view>

namespace mathqa {
namespace latex {

bool IsGreek(std::string_view name);
bool IsFunctionName(std::string_view name);
// Markup with no mathematical content: \displaystyle, \left, \quad, ...
bool IsPresentationCommand(std::string_view name);
// Commands wrapping a symbol: \mathrm{...}, \text{...}, \operatorname{...}.
bool IsWrapperCommand(std::string_view name);
bool IsKnownCommand(std::string_view name);

size_t Utf8Length(unsigned char lead);

enum class UnicodeKind { kPi, kGreek, kSymbol };
struct UnicodeMapping {
  UnicodeKind kind;
  std::string text;
};
// Maps one UTF-8 encoded character (π, σ, ×, −, ...) to its LaTeX meaning.
std::optional<UnicodeMapping> MapUnicode(std::string_view ch);

}  // namespace latex
}  // namespace mathqa

#endif  // MATHQA_SRC_LATEX_TABLES_H_
