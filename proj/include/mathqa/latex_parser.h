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

#ifndef MATHQA_LATEX_PARSER_H_
#define MATHQA_LATEX_PARSER_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "mathqa/expr.h"

namespace mathqa {

// Base class for parse failures. position() is a byte offset into the source.
class LatexParseError : public std::runtime_error {
 public:
  LatexParseError(const std::string &what, size_t position)
      : std::runtime_error(what), position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

// The input uses a construct outside the supported subset (\sum, \int,
// matrices, relations other than "=", unknown commands, ...).
class UnsupportedConstruct : public LatexParseError {
 public:
  UnsupportedConstruct(std::string token, size_t position);
  const std::string &token() const { return token_; }

 private:
  std::string token_;
};

// Malformed input within the supported subset.
class SyntaxError : public LatexParseError {
 public:
  SyntaxError(const std::string &message, size_t position);
};

// Parses a formula such as "c_{v} = \frac{\sigma}{\mu}".
//
// Presentation markup (\displaystyle, \left, \right, \bigg, spacing commands,
// \mathrm{...}/\text{...} wrappers, grouping braces) is dropped. Adjacent
// factors multiply; implicit products bind tighter than \cdot and / but
// looser than ^. Trailing sentence punctuation is ignored.
Equation ParseLatex(std::string_view source);

}  // namespace mathqa

#endif  // MATHQA_LATEX_PARSER_H_
