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

#include "mathqa/expr.h"

#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include "latex_tables.h"
#include "mathqa/latex_parser.h"

namespace mathqa {

Expression Expression::Number(double value) {
  if (!std::isfinite(value) || value < 0) {
    throw std::invalid_argument("number literals must be finite and non-negative");
  }
  Expression e;
  e.kind_ = NodeKind::kNumber;
  e.number_ = value;
  return e;
}

Expression Expression::Identifier(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty identifier name");
  Expression e;
  e.kind_ = NodeKind::kIdentifier;
  e.name_ = std::move(name);
  return e;
}

Expression Expression::MakeConstant(Constant c) {
  Expression e;
  e.kind_ = NodeKind::kConstant;
  e.constant_ = c;
  return e;
}

Expression Expression::Negate(Expression operand) {
  Expression e;
  e.kind_ = NodeKind::kNegate;
  e.children_.push_back(std::move(operand));
  return e;
}

Expression Expression::Binary(BinaryOp op, Expression lhs, Expression rhs) {
  Expression e;
  e.kind_ = NodeKind::kBinary;
  e.op_ = op;
  e.children_.reserve(2);
  e.children_.push_back(std::move(lhs));
  e.children_.push_back(std::move(rhs));
  return e;
}

Expression Expression::Fraction(Expression numerator, Expression denominator) {
  Expression e;
  e.kind_ = NodeKind::kFraction;
  e.children_.reserve(2);
  e.children_.push_back(std::move(numerator));
  e.children_.push_back(std::move(denominator));
  return e;
}

Expression Expression::Apply(Function fn, std::vector<Expression> args) {
  size_t max_args = (fn == Function::kLog || fn == Function::kSqrt) ? 2 : 1;
  if (args.empty() || args.size() > max_args) {
    throw std::invalid_argument("wrong number of function arguments");
  }
  Expression e;
  e.kind_ = NodeKind::kFunction;
  e.function_ = fn;
  e.children_ = std::move(args);
  return e;
}

Expression Expression::Header(std::string name, std::vector<Expression> params) {
  if (params.empty()) throw std::invalid_argument("function header without parameters");
  for (const Expression &p : params) {
    if (p.kind() != NodeKind::kIdentifier) {
      throw std::invalid_argument("function header parameters must be identifiers");
    }
  }
  Expression e;
  e.kind_ = NodeKind::kFunctionHeader;
  e.name_ = std::move(name);
  e.children_ = std::move(params);
  return e;
}

bool operator==(const Expression &a, const Expression &b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case NodeKind::kNumber:
      return a.number_ == b.number_;
    case NodeKind::kIdentifier:
      return a.name_ == b.name_;
    case NodeKind::kConstant:
      return a.constant_ == b.constant_;
    case NodeKind::kBinary:
      if (a.op_ != b.op_) return false;
      break;
    case NodeKind::kFunction:
      if (a.function_ != b.function_) return false;
      break;
    case NodeKind::kFunctionHeader:
      if (a.name_ != b.name_) return false;
      break;
    case NodeKind::kNegate:
    case NodeKind::kFraction:
      break;
  }
  return a.children_ == b.children_;
}

Equation::Equation(std::vector<Expression> sides) : sides_(std::move(sides)) {
  if (sides_.empty()) throw std::invalid_argument("equation without sides");
}

void Bindings::Set(std::string_view name, double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("binding for '" + std::string(name) + "' is not finite");
  }
  std::optional<std::string> canonical = CanonicalIdentifier(name);
  if (!canonical) {
    throw std::invalid_argument("'" + std::string(name) + "' is not an identifier");
  }
  values_[*canonical] = value;
}

std::optional<double> Bindings::Get(const std::string &name) const {
  auto it = values_.find(name);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

MathDomainError::MathDomainError(const std::string &what, std::string subexpression)
    : std::runtime_error(what + " in " + subexpression),
      subexpression_(std::move(subexpression)) {}

UnboundIdentifier::UnboundIdentifier(std::string name)
    : std::runtime_error("no value for identifier " + name), name_(std::move(name)) {}

// Rendering ---------------------------------------------------------------

namespace {

// Binding strength of a rendered string, loosest first.
enum Level {
  kSum = 1,
  kExplicitProduct = 2,
  kSigned = 3,
  kImplicitProduct = 4,
  kPowerLevel = 5,
  kAtom = 6,
};

struct Rendered {
  std::string text;
  int level;
};

std::string Parenthesize(const Rendered &r, int min_level) {
  if (r.level >= min_level) return r.text;
  return "(" + r.text + ")";
}

std::string RenderNumber(double value) {
  char buf[512];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
  if (ec != std::errc()) return "0";
  return std::string(buf, ptr);
}

std::string RenderIdentifier(const std::string &name) {
  size_t underscore = name.find('_');
  std::string base = name.substr(0, underscore);
  std::string out;
  if (base.size() == 1 || base[0] == '\\') {
    out = base;
  } else {
    out = "\\mathrm{" + base + "}";
  }
  if (underscore != std::string::npos) {
    out += "_{" + name.substr(underscore + 1) + "}";
  }
  return out;
}

const char *FunctionCommand(Function fn) {
  switch (fn) {
    case Function::kSin: return "\\sin";
    case Function::kCos: return "\\cos";
    case Function::kTan: return "\\tan";
    case Function::kLog: return "\\log";
    case Function::kLn: return "\\ln";
    case Function::kExp: return "\\exp";
    case Function::kSqrt: return "\\sqrt";
    case Function::kAbs: return "|";
  }
  return "";
}

bool StartsWithDigit(const std::string &s) {
  return !s.empty() && ((s[0] >= '0' && s[0] <= '9') || s[0] == '.');
}

bool IsAbs(const Expression &e) {
  return e.kind() == NodeKind::kFunction && e.function() == Function::kAbs;
}

Rendered RenderNode(const Expression &e);

Rendered RenderBinary(const Expression &e) {
  const Expression &lhs = e.child(0);
  const Expression &rhs = e.child(1);
  Rendered l = RenderNode(lhs);
  Rendered r = RenderNode(rhs);
  switch (e.op()) {
    case BinaryOp::kAdd:
    case BinaryOp::kSubtract: {
      std::string rtext = rhs.kind() == NodeKind::kNegate
                              ? "(" + r.text + ")"
                              : Parenthesize(r, kExplicitProduct);
      return {l.text + (e.op() == BinaryOp::kAdd ? " + " : " - ") + rtext, kSum};
    }
    case BinaryOp::kMultiply: {
      bool implicit = l.level >= kImplicitProduct && lhs.kind() != NodeKind::kNegate &&
                      !IsAbs(rhs);
      if (implicit) {
        std::string rtext = Parenthesize(r, kPowerLevel);
        if (!StartsWithDigit(rtext)) return {l.text + " " + rtext, kImplicitProduct};
      }
      std::string rtext = rhs.kind() == NodeKind::kNegate
                              ? "(" + r.text + ")"
                              : Parenthesize(r, kImplicitProduct);
      return {Parenthesize(l, kExplicitProduct) + " \\cdot " + rtext, kExplicitProduct};
    }
    case BinaryOp::kDivide: {
      std::string rtext = rhs.kind() == NodeKind::kNegate
                              ? "(" + r.text + ")"
                              : Parenthesize(r, kImplicitProduct);
      return {Parenthesize(l, kExplicitProduct) + " / " + rtext, kExplicitProduct};
    }
    case BinaryOp::kPower: {
      std::string base;
      if (lhs.kind() == NodeKind::kConstant && lhs.constant() == Constant::kEuler) {
        base = "e";
      } else if (lhs.kind() == NodeKind::kIdentifier && lhs.name() == "e") {
        // A bare e carrying a superscript reads as Euler's number.
        base = "(e)";
      } else if (lhs.IsBinary(BinaryOp::kPower)) {
        base = "(" + l.text + ")";
      } else {
        base = Parenthesize(l, kAtom);
      }
      return {base + "^{" + r.text + "}", kPowerLevel};
    }
  }
  return {"", kAtom};
}

Rendered RenderNode(const Expression &e) {
  switch (e.kind()) {
    case NodeKind::kNumber:
      return {RenderNumber(e.number()), kAtom};
    case NodeKind::kIdentifier:
      return {RenderIdentifier(e.name()), kAtom};
    case NodeKind::kConstant:
      return {e.constant() == Constant::kPi ? "\\pi" : "\\mathrm{e}", kAtom};
    case NodeKind::kNegate: {
      Rendered operand = RenderNode(e.child(0));
      return {"-" + Parenthesize(operand, kSigned), kSigned};
    }
    case NodeKind::kBinary:
      return RenderBinary(e);
    case NodeKind::kFraction:
      return {"\\frac{" + RenderNode(e.child(0)).text + "}{" +
                  RenderNode(e.child(1)).text + "}",
              kAtom};
    case NodeKind::kFunction: {
      std::string arg = RenderNode(e.child(0)).text;
      switch (e.function()) {
        case Function::kAbs:
          return {"\\left|" + arg + "\\right|", kAtom};
        case Function::kSqrt:
          if (e.children().size() == 2) {
            return {"\\sqrt[" + RenderNode(e.child(1)).text + "]{" + arg + "}", kAtom};
          }
          return {"\\sqrt{" + arg + "}", kAtom};
        case Function::kLog:
          if (e.children().size() == 2) {
            return {"\\log_{" + RenderNode(e.child(1)).text + "}(" + arg + ")", kAtom};
          }
          break;
        default:
          break;
      }
      return {std::string(FunctionCommand(e.function())) + "(" + arg + ")", kAtom};
    }
    case NodeKind::kFunctionHeader: {
      std::string out = RenderIdentifier(e.name()) + "(";
      for (size_t i = 0; i < e.children().size(); ++i) {
        if (i > 0) out += ", ";
        out += RenderIdentifier(e.child(i).name());
      }
      return {out + ")", kAtom};
    }
  }
  return {"", kAtom};
}

bool AllLetters(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return false;
  }
  return true;
}

void CollectIdentifiers(const Expression &e, std::set<std::string> *out) {
  switch (e.kind()) {
    case NodeKind::kIdentifier:
      out->insert(e.name());
      return;
    case NodeKind::kFunctionHeader:
      for (const Expression &p : e.children()) out->insert(p.name());
      return;
    default:
      for (const Expression &c : e.children()) CollectIdentifiers(c, out);
  }
}

}  // namespace

std::string Render(const Expression &expr) { return RenderNode(expr).text; }

std::string Render(const Equation &eq) {
  std::string out;
  for (size_t i = 0; i < eq.size(); ++i) {
    if (i > 0) out += " = ";
    out += Render(eq.side(i));
  }
  return out;
}

std::optional<std::string> CanonicalIdentifier(std::string_view text) {
  size_t first = text.find_first_not_of(" \t");
  if (first == std::string_view::npos) return std::nullopt;
  size_t last = text.find_last_not_of(" \t");
  std::string_view trimmed = text.substr(first, last - first + 1);

  size_t underscore = trimmed.find('_');
  std::string_view base = trimmed.substr(0, underscore);
  std::string latex;
  if (AllLetters(base) && latex::IsGreek(base)) {
    latex = "\\" + std::string(base);
  } else if (AllLetters(base) && base.size() > 1 && base != "pi") {
    latex = "\\mathrm{" + std::string(base) + "}";
  } else {
    latex = std::string(base);
  }
  if (underscore != std::string_view::npos) {
    std::string_view sub = trimmed.substr(underscore + 1);
    if (sub.size() > 1 && sub[0] != '{' && sub[0] != '\\') {
      latex += "_{" + std::string(sub) + "}";
    } else {
      latex += "_" + std::string(sub);
    }
  }
  try {
    Equation eq = ParseLatex(latex);
    if (eq.size() == 1 && eq.side(0).kind() == NodeKind::kIdentifier) {
      return eq.side(0).name();
    }
  } catch (const LatexParseError &) {
  }
  return std::nullopt;
}

std::set<std::string> Identifiers(const Expression &expr) {
  std::set<std::string> out;
  CollectIdentifiers(expr, &out);
  return out;
}

std::set<std::string> Identifiers(const Equation &eq) {
  std::set<std::string> out;
  for (const Expression &side : eq.sides()) CollectIdentifiers(side, &out);
  return out;
}

// Evaluation --------------------------------------------------------------

namespace {

bool IsInteger(double x) { return std::floor(x) == x; }

double Checked(double value, const Expression &e) {
  if (!std::isfinite(value)) throw MathDomainError("result is not a finite real number", Render(e));
  return value;
}

double EvalNode(const Expression &e, const Bindings &bindings) {
  switch (e.kind()) {
    case NodeKind::kNumber:
      return e.number();
    case NodeKind::kIdentifier:
      return *bindings.Get(e.name());
    case NodeKind::kConstant:
      return e.constant() == Constant::kPi ? std::numbers::pi : std::numbers::e;
    case NodeKind::kNegate:
      return -EvalNode(e.child(0), bindings);
    case NodeKind::kFraction: {
      double num = EvalNode(e.child(0), bindings);
      double den = EvalNode(e.child(1), bindings);
      if (den == 0) throw MathDomainError("division by zero", Render(e));
      return Checked(num / den, e);
    }
    case NodeKind::kBinary: {
      double a = EvalNode(e.child(0), bindings);
      double b = EvalNode(e.child(1), bindings);
      switch (e.op()) {
        case BinaryOp::kAdd: return Checked(a + b, e);
        case BinaryOp::kSubtract: return Checked(a - b, e);
        case BinaryOp::kMultiply: return Checked(a * b, e);
        case BinaryOp::kDivide:
          if (b == 0) throw MathDomainError("division by zero", Render(e));
          return Checked(a / b, e);
        case BinaryOp::kPower:
          if (a == 0 && b < 0) throw MathDomainError("division by zero", Render(e));
          if (a < 0 && !IsInteger(b)) {
            throw MathDomainError("negative base with non-integer exponent", Render(e));
          }
          return Checked(std::pow(a, b), e);
      }
      break;
    }
    case NodeKind::kFunction: {
      double x = EvalNode(e.child(0), bindings);
      switch (e.function()) {
        case Function::kSin: return Checked(std::sin(x), e);
        case Function::kCos: return Checked(std::cos(x), e);
        case Function::kTan: return Checked(std::tan(x), e);
        case Function::kExp: return Checked(std::exp(x), e);
        case Function::kAbs: return std::fabs(x);
        case Function::kLn:
          if (x <= 0) throw MathDomainError("logarithm of a non-positive number", Render(e));
          return std::log(x);
        case Function::kLog: {
          if (x <= 0) throw MathDomainError("logarithm of a non-positive number", Render(e));
          if (e.children().size() == 1) return std::log(x);
          double base = EvalNode(e.child(1), bindings);
          if (base <= 0 || base == 1) throw MathDomainError("invalid logarithm base", Render(e));
          return Checked(std::log(x) / std::log(base), e);
        }
        case Function::kSqrt: {
          if (e.children().size() == 1) {
            if (x < 0) throw MathDomainError("square root of a negative number", Render(e));
            return std::sqrt(x);
          }
          double n = EvalNode(e.child(1), bindings);
          if (n == 0) throw MathDomainError("zeroth root", Render(e));
          if (x < 0) {
            bool odd = IsInteger(n) && std::fmod(std::fabs(n), 2.0) == 1.0;
            if (!odd) throw MathDomainError("even root of a negative number", Render(e));
            return Checked(-std::pow(-x, 1.0 / n), e);
          }
          if (n == 2) return std::sqrt(x);
          if (n == 3) return std::cbrt(x);
          return Checked(std::pow(x, 1.0 / n), e);
        }
      }
      break;
    }
    case NodeKind::kFunctionHeader:
      throw MathDomainError("a function header has no value", Render(e));
  }
  throw MathDomainError("unknown node", Render(e));
}

bool FullyBound(const Expression &e, const Bindings &bindings) {
  for (const std::string &name : Identifiers(e)) {
    if (!bindings.Contains(name)) return false;
  }
  return true;
}

}  // namespace

double Evaluate(const Expression &expr, const Bindings &bindings) {
  for (const std::string &name : Identifiers(expr)) {
    if (!bindings.Contains(name)) throw UnboundIdentifier(name);
  }
  return EvalNode(expr, bindings);
}

EvaluableSide SelectEvaluableSide(const Equation &eq, const Bindings &bindings) {
  const auto &sides = eq.sides();
  for (size_t i = 0; i < sides.size(); ++i) {
    const Expression &lone = sides[i];
    if (lone.kind() != NodeKind::kIdentifier && lone.kind() != NodeKind::kFunctionHeader) {
      continue;
    }
    for (size_t j = 0; j < sides.size(); ++j) {
      if (j == i || sides[j].kind() == NodeKind::kFunctionHeader) continue;
      if (!FullyBound(sides[j], bindings)) continue;
      if (lone.kind() == NodeKind::kIdentifier && Identifiers(sides[j]).count(lone.name())) {
        continue;
      }
      return EvaluableSide{lone.name(), j, sides[j]};
    }
  }
  for (size_t i = 0; i < sides.size(); ++i) {
    if (sides[i].kind() == NodeKind::kFunctionHeader) continue;
    if (FullyBound(sides[i], bindings)) return EvaluableSide{std::nullopt, i, sides[i]};
  }
  throw NoEvaluableSide("no side of the equation has all of its identifiers bound");
}

}  // namespace mathqa
