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

#include "latex_tables.h"

#include <map>
#include <set>

namespace mathqa {
namespace latex {

namespace {

const std::set<std::string, std::less<>> &GreekNames() {
  static const std::set<std::string, std::less<>> kNames = {
      "alpha",   "beta",    "gamma",  "delta",   "epsilon", "varepsilon",
      "zeta",    "eta",     "theta",  "vartheta", "iota",   "kappa",
      "lambda",  "mu",      "nu",     "xi",      "rho",     "varrho",
      "sigma",   "varsigma", "tau",   "upsilon", "phi",     "varphi",
      "chi",     "psi",     "omega",  "Gamma",   "Delta",   "Theta",
      "Lambda",  "Xi",      "Pi",     "Sigma",   "Upsilon", "Phi",
      "Psi",     "Omega"};
  return kNames;
}

const std::set<std::string, std::less<>> &PresentationNames() {
  static const std::set<std::string, std::less<>> kNames = {
      "displaystyle", "textstyle", "scriptstyle", "scriptscriptstyle",
      "left",         "right",     "big",         "Big",
      "bigg",         "Bigg",      "bigl",        "bigr",
      "Bigl",         "Bigr",      "biggl",       "biggr",
      "Biggl",        "Biggr",     "quad",        "qquad",
      "limits",       "nolimits"};
  return kNames;
}

const std::set<std::string, std::less<>> &WrapperNames() {
  static const std::set<std::string, std::less<>> kNames = {
      "mathrm", "text",   "textrm",     "mathit", "textit",
      "mathbf", "textbf", "boldsymbol", "mathsf", "operatorname"};
  return kNames;
}

const std::set<std::string, std::less<>> &OtherNames() {
  static const std::set<std::string, std::less<>> kNames = {
      "pi",    "frac",  "cfrac", "dfrac", "tfrac", "cdot",
      "times", "div",   "lvert", "rvert", "vert"};
  return kNames;
}

}  // namespace

bool IsGreek(std::string_view name) { return GreekNames().count(name) > 0; }

bool IsFunctionName(std::string_view name) {
  return name == "sin" || name == "cos" || name == "tan" || name == "log" ||
         name == "ln" || name == "exp" || name == "sqrt";
}

bool IsPresentationCommand(std::string_view name) {
  return PresentationNames().count(name) > 0;
}

bool IsWrapperCommand(std::string_view name) {
  return WrapperNames().count(name) > 0;
}

bool IsKnownCommand(std::string_view name) {
  return IsGreek(name) || IsFunctionName(name) ||
         IsPresentationCommand(name) || IsWrapperCommand(name) ||
         OtherNames().count(name) > 0;
}

size_t Utf8Length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

std::optional<UnicodeMapping> MapUnicode(std::string_view ch) {
  static const std::map<std::string, UnicodeMapping, std::less<>> kTable = {
      {"π", {UnicodeKind::kPi, "pi"}},
      {"α", {UnicodeKind::kGreek, "alpha"}},
      {"β", {UnicodeKind::kGreek, "beta"}},
      {"γ", {UnicodeKind::kGreek, "gamma"}},
      {"δ", {UnicodeKind::kGreek, "delta"}},
      {"ε", {UnicodeKind::kGreek, "epsilon"}},
      {"ζ", {UnicodeKind::kGreek, "zeta"}},
      {"η", {UnicodeKind::kGreek, "eta"}},
      {"θ", {UnicodeKind::kGreek, "theta"}},
      {"κ", {UnicodeKind::kGreek, "kappa"}},
      {"λ", {UnicodeKind::kGreek, "lambda"}},
      {"μ", {UnicodeKind::kGreek, "mu"}},
      {"ν", {UnicodeKind::kGreek, "nu"}},
      {"ξ", {UnicodeKind::kGreek, "xi"}},
      {"ρ", {UnicodeKind::kGreek, "rho"}},
      {"σ", {UnicodeKind::kGreek, "sigma"}},
      {"τ", {UnicodeKind::kGreek, "tau"}},
      {"φ", {UnicodeKind::kGreek, "phi"}},
      {"χ", {UnicodeKind::kGreek, "chi"}},
      {"ψ", {UnicodeKind::kGreek, "psi"}},
      {"ω", {UnicodeKind::kGreek, "omega"}},
      {"Γ", {UnicodeKind::kGreek, "Gamma"}},
      {"Δ", {UnicodeKind::kGreek, "Delta"}},
      {"Θ", {UnicodeKind::kGreek, "Theta"}},
      {"Λ", {UnicodeKind::kGreek, "Lambda"}},
      {"Σ", {UnicodeKind::kGreek, "Sigma"}},
      {"Φ", {UnicodeKind::kGreek, "Phi"}},
      {"Ψ", {UnicodeKind::kGreek, "Psi"}},
      {"Ω", {UnicodeKind::kGreek, "Omega"}},
      {"·", {UnicodeKind::kSymbol, "*"}},
      {"×", {UnicodeKind::kSymbol, "*"}},
      {"⋅", {UnicodeKind::kSymbol, "*"}},
      {"−", {UnicodeKind::kSymbol, "-"}},
      {"÷", {UnicodeKind::kSymbol, "/"}},
  };
  auto it = kTable.find(ch);
  if (it == kTable.end()) return std::nullopt;
  return it->second;
}

}  // namespace latex
}  // namespace mathqa
