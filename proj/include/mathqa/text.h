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

#ifndef MATHQA_TEXT_H_
#define MATHQA_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace mathqa {

std::string Trim(std::string_view s);
std::string ToLowerAscii(std::string_view s);
std::vector<std::string> Split(std::string_view s, char sep);

// Label key used for all knowledge-base lookups: ASCII lowercase, typographic
// apostrophes and dashes mapped to ' and -, whitespace collapsed, trailing
// punctuation (including the Devanagari danda) removed. Idempotent.
std::string NormalizeLabel(std::string_view label);

}  // namespace mathqa

#endif  // MATHQA_TEXT_H_
