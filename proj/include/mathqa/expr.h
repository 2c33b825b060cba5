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

#ifndef MATHQA_EXPR_H_
#define MATHQA_EXPR_H_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mathqa {

// Expression trees for the LaTeX subset understood by the calculator.
//
// Nodes are plain values. Children are owned by their parent, so copying an
// Expression copies the whole subtree. Trees are never shared or mutated
// after construction, which makes every operation in this header safe to call
// concurrently.

enum class NodeKind {
  kNumber,
  kIdentifier,
  kConstant,
  kNegate,
  kBinary,
  kFraction,
  kFunction,
  // Left-hand side "f(x)" of a definition. Names a function, binds nothing.
  kFunctionHeader,
};

enum class BinaryOp { kAdd, kSubtract, kMultiply, kDivide, kPower };

enum class Constant { kPi, kEuler };

// Supported function applications. kLog takes an optional second child with
// the base, kSqrt an optional second child with the root index.
enum class Function { kSin, kCos, kTan, kLog, kLn, kExp, kSqrt, kAbs };

class Expression {
 public:
  static Expression Number(double value);
  static Expression Identifier(std::string name);
  static Expression MakeConstant(Constant c);
  static Expression Negate(Expression operand);
  static Expression Binary(BinaryOp op, Expression lhs, Expression rhs);
  static Expression Fraction(Expression numerator, Expression denominator);
  static Expression Apply(Function fn, std::vector<Expression> args);
  static Expression Header(std::string name, std::vector<Expression> params);

  NodeKind kind() const { return kind_; }
  double number() const { return number_; }
  // Identifier or function-header name.
  const std::string &name() const { return name_; }
  BinaryOp op() const { return op_; }
  Constant constant() const { return constant_; }
  Function function() const { return function_; }
  const std::vector<Expression> &children() const { return children_; }
  const Expression &child(size_t i) const { return children_.at(i); }

  bool IsBinary(BinaryOp op) const {
    return kind_ == NodeKind::kBinary && op_ == op;
  }

  // Structural equality. Numbers compare by value.
  friend bool operator==(const Expression &a, const Expression &b);

 private:
  Expression() = default;

  NodeKind kind_ = NodeKind::kNumber;
  double number_ = 0;
  std::string name_;
  BinaryOp op_ = BinaryOp::kAdd;
  Constant constant_ = Constant::kPi;
  Function function_ = Function::kSin;
  std::vector<Expression> children_;
};

// A chain of equal expressions, e.g. "C = 2 \pi r = \pi d". A single side is
// a plain expression.
class Equation {
 public:
  explicit Equation(std::vector<Expression> sides);

  const std::vector<Expression> &sides() const { return sides_; }
  const Expression &side(size_t i) const { return sides_.at(i); }
  size_t size() const { return sides_.size(); }

  friend bool operator==(const Equation &a, const Equation &b) {
    return a.sides_ == b.sides_;
  }

 private:
  std::vector<Expression> sides_;
};

// Identifier values supplied for evaluation. Keys are canonical identifier
// names (see CanonicalIdentifier); values are always finite.
class Bindings {
 public:
  Bindings() = default;

  // Throws std::invalid_argument for a non-finite value or a key that is not
  // an identifier.
  void Set(std::string_view name, double value);
  std::optional<double> Get(const std::string &name) const;
  bool Contains(const std::string &name) const {
    return values_.count(name) > 0;
  }
  size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  const std::map<std::string, double> &values() const { return values_; }

  friend bool operator==(const Bindings &a, const Bindings &b) {
    return a.values_ == b.values_;
  }

 private:
  std::map<std::string, double> values_;
};

// Thrown when a subexpression has no real value: division by zero, square
// root or logarithm outside its domain, overflow.
class MathDomainError : public std::runtime_error {
 public:
  MathDomainError(const std::string &what, std::string subexpression);
  const std::string &subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
};

class UnboundIdentifier : public std::runtime_error {
 public:
  explicit UnboundIdentifier(std::string name);
  const std::string &name() const { return name_; }

 private:
  std::string name_;
};

class NoEvaluableSide : public std::runtime_error {
 public:
  explicit NoEvaluableSide(const std::string &what)
      : std::runtime_error(what) {}
};

// Canonical LaTeX. parse_latex(Render(e)) is structurally equal to e.
std::string Render(const Equation &eq);
std::string Render(const Expression &expr);

// Canonical spelling of an identifier name: "\sigma", "x_0", "c_v",
// "A_ellipse", "Area". Accepts LaTeX ("c_{v}", "\mu"), bare Greek names
// ("sigma") and Unicode Greek letters. Returns nullopt if the text is not a
// single identifier.
std::optional<std::string> CanonicalIdentifier(std::string_view text);

// Free identifiers. Constants and function-header names are excluded;
// function-header parameters are included.
std::set<std::string> Identifiers(const Equation &eq);
std::set<std::string> Identifiers(const Expression &expr);

// Evaluates in IEEE double precision. Throws UnboundIdentifier if any free
// identifier is missing from the bindings (checked before evaluating
// anything), MathDomainError otherwise.
double Evaluate(const Expression &expr, const Bindings &bindings);

struct EvaluableSide {
  // Set when a lone identifier (or function header) side was solved for.
  std::optional<std::string> target;
  size_t index = 0;
  Expression expression;
};

// Picks the side of an equation chain to compute. A lone-identifier side
// whose identifier does not occur in some fully bound other side is solved
// for, leftmost first. Otherwise the leftmost fully bound side is returned.
// Throws NoEvaluableSide.
EvaluableSide SelectEvaluableSide(const Equation &eq, const Bindings &bindings);

}  // namespace mathqa

#endif  // MATHQA_EXPR_H_
