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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mathqa/expr.h"
#include "mathqa/knowledge_store.h"
#include "mathqa/latex_parser.h"
#include "test_support.h"

namespace mathqa {
namespace {

using testing::BigFloat;

Expression Id(const std::string &n) { return Expression::Identifier(n); }
Expression Num(double v) { return Expression::Number(v); }
Expression Pow(Expression a, Expression b) {
  return Expression::Binary(BinaryOp::kPower, std::move(a), std::move(b));
}
Expression Mul(Expression a, Expression b) {
  return Expression::Binary(BinaryOp::kMultiply, std::move(a), std::move(b));
}
Expression Add(Expression a, Expression b) {
  return Expression::Binary(BinaryOp::kAdd, std::move(a), std::move(b));
}

double Eval(const std::string &latex, const Bindings &b) {
  Equation eq = ParseLatex(latex);
  return Evaluate(eq.side(eq.size() - 1), b);
}

TEST(LatexParserTest, PythagoreanStructure) {
  Equation eq = ParseLatex("c^2 = a^2 + b^2");
  ASSERT_EQ(eq.size(), 2u);
  EXPECT_EQ(eq.side(0), Pow(Id("c"), Num(2)));
  EXPECT_EQ(eq.side(1), Add(Pow(Id("a"), Num(2)), Pow(Id("b"), Num(2))));
}

TEST(LatexParserTest, EquationChain) {
  Equation eq = ParseLatex("C = 2 \\pi r = \\pi d");
  ASSERT_EQ(eq.size(), 3u);
  EXPECT_EQ(eq.side(0), Id("C"));
  EXPECT_EQ(Identifiers(eq), (std::set<std::string>{"C", "d", "r"}));
}

TEST(LatexParserTest, UnsupportedConstructs) {
  for (const char *src : {"\\sum_{n=1}^\\infty \\frac{1}{n^s}",
                          "\\zeta(s) \\sum_{n=1}^\\infty \\frac{1}{n^s}",
                          "p \\iff q",
                          "a = m^2 - n^2, b = 2mn, c = m^2 + n^2",
                          "\\int_{-\\infty}^\\infty f(\\tau) d\\tau",
                          "a_0 + \\cfrac{b_1}{a_1 + ...}",
                          "x \\le y"}) {
    EXPECT_THROW(ParseLatex(src), UnsupportedConstruct) << src;
  }
  try {
    ParseLatex("\\sum_{n=1}^\\infty \\frac{1}{n^s}");
  } catch (const UnsupportedConstruct &e) {
    EXPECT_EQ(e.token(), "\\sum");
  }
}

TEST(LatexParserTest, SyntaxErrors) {
  for (const char *src : {"", "a +", "\\frac{1}", "(a + b", "a = ", "x^"}) {
    EXPECT_THROW(ParseLatex(src), LatexParseError) << src;
  }
}

TEST(LatexParserTest, PresentationMarkupIsDropped) {
  std::vector<std::pair<std::string, std::string>> same = {
      {"\\displaystyle V = \\frac{4}{3}\\pi r^3", "V = \\frac{4}{3}\\pi r^3"},
      {"\\left( a + b \\right)^2", "(a+b)^2"},
      {"a \\, b \\; c \\quad d", "a b c d"},
      {"{a}+{{b}}", "a+b"},
      {"E = mc^2.", "E = mc^2"},
      {"\\mathrm{Area} = \\pi r^{2}", "\\text{Area} = \\pi r^2"},
      {"f\\left(x\\right) = x", "f(x) = x"},
      {"{\\displaystyle c^2 = a^2 + b^2}", "c^2 = a^2 + b^2"},
      {" {{ y = x }} ", "y = x"},
  };
  for (const auto &[a, b] : same) EXPECT_EQ(ParseLatex(a), ParseLatex(b)) << a;
  // Braces that do not enclose everything still group.
  EXPECT_THROW(ParseLatex("{a = b} = {c}"), SyntaxError);
}

TEST(LatexParserTest, ImplicitProductBindsTighterThanExplicit) {
  Bindings b;
  b.Set("a", 8);
  b.Set("b", 2);
  b.Set("c", 2);
  EXPECT_DOUBLE_EQ(Eval("a / b c", b), 2);
  EXPECT_DOUBLE_EQ(Eval("a \\cdot b c", b), 32);
  EXPECT_DOUBLE_EQ(Eval("a b^2", b), 32);
  EXPECT_DOUBLE_EQ(Eval("-b^2", b), -4);
  EXPECT_EQ(ParseLatex("a \\cdot b c").side(0), Mul(Id("a"), Mul(Id("b"), Id("c"))));
}

TEST(LatexParserTest, FunctionsAndRoots) {
  Bindings b;
  b.Set("x", 0.5);
  EXPECT_NEAR(Eval("\\sin^2 x + \\cos^2 x", b), 1, 1e-15);
  EXPECT_NEAR(Eval("\\sqrt[3]{27}", b), 3, 1e-15);
  EXPECT_NEAR(Eval("\\log_{10} 1000", b), 3, 1e-15);
  EXPECT_NEAR(Eval("\\ln \\mathrm e", b), 1, 1e-15);
  EXPECT_NEAR(Eval("\\left|-x\\right|", b), 0.5, 1e-15);
  EXPECT_NEAR(Eval("\\exp(x) - e^{x}", b), 0, 1e-15);
  EXPECT_NEAR(Eval("\\frac 1 2", b), 0.5, 1e-15);
  EXPECT_NEAR(Eval("\\tfrac{3}{4}", b), 0.75, 1e-15);
}

TEST(LatexParserTest, IdentifierSpellings) {
  EXPECT_EQ(CanonicalIdentifier("c_{v}"), "c_v");
  EXPECT_EQ(CanonicalIdentifier("\\mu"), "\\mu");
  EXPECT_EQ(CanonicalIdentifier("sigma"), "\\sigma");
  EXPECT_EQ(CanonicalIdentifier("x_0"), "x_0");
  EXPECT_EQ(CanonicalIdentifier("1x"), std::nullopt);
  EXPECT_EQ(CanonicalIdentifier("a+b"), std::nullopt);
  EXPECT_EQ(Identifiers(ParseLatex("A_\\text{ellipse} = \\pi ab")),
            (std::set<std::string>{"A_ellipse", "a", "b"}));
  EXPECT_EQ(Identifiers(ParseLatex("c_{v} = \\frac{\\sigma}{\\mu}")),
            (std::set<std::string>{"\\mu", "\\sigma", "c_v"}));
}

TEST(LatexParserTest, FunctionHeaderBindsNothing) {
  Equation eq = ParseLatex("f(x) = \\frac{L}{1 + \\mathrm e^{-k(x-x_0)}}");
  EXPECT_EQ(eq.side(0).kind(), NodeKind::kFunctionHeader);
  EXPECT_EQ(Identifiers(eq), (std::set<std::string>{"L", "k", "x", "x_0"}));
}

// parse(render(parse(F))) == parse(F) over every formula we ship.
TEST(RoundTripTest, CorpusAndKnowledgeBase) {
  std::vector<std::string> formulas;
  for (const auto &e : testing::LoadCorpus()) formulas.push_back(e.latex);
  KnowledgeStore store = KnowledgeStore::Ingest(testing::DataPath("kb/fixture_kb.jsonl"));
  for (const KBItem &item : store.items()) {
    for (size_t i = 0; i < item.defining_formulae.size(); ++i) {
      if (item.formula_parseable[i]) formulas.push_back(item.defining_formulae[i]);
    }
  }
  ASSERT_GE(formulas.size(), 25u);
  for (const std::string &f : formulas) {
    Equation once = ParseLatex(f);
    std::string text = Render(once);
    Equation twice = ParseLatex(text);
    EXPECT_EQ(once, twice) << f << "  rendered as  " << text;
    EXPECT_EQ(Render(twice), text) << f;
  }
}

TEST(RoundTripTest, RandomExpressions) {
  testing::ExprGenerator gen(7);
  for (int i = 0; i < 1000; ++i) {
    testing::RandomExpr e = gen.Next();
    Equation once = ParseLatex(e.latex);
    EXPECT_EQ(ParseLatex(Render(once)), once) << e.latex;
  }
}

// The double evaluator against the 50-digit oracle on random trees.
TEST(EvaluateTest, AgreesWithOracleOnRandomExpressions) {
  testing::ExprGenerator gen(20260101);
  std::uniform_real_distribution<double> value(0.5, 3.0);
  for (int i = 0; i < 1000; ++i) {
    testing::RandomExpr e = gen.Next();
    Bindings b;
    std::map<std::string, BigFloat> vars;
    for (const std::string &v : e.variables) {
      double x = value(gen.rng());
      b.Set(v, x);
      vars[v] = BigFloat(x);
    }
    BigFloat expected = testing::OracleEval(e.oracle, vars);
    Equation eq = ParseLatex(e.latex);
    ASSERT_EQ(eq.size(), 1u) << e.latex;
    EXPECT_EQ(Identifiers(eq), e.variables) << e.latex;
    double got = Evaluate(eq.side(0), b);
    EXPECT_LE(testing::RelativeError(got, expected, 1.0), 1e-12)
        << e.latex << "\n  oracle " << e.oracle << "\n  got " << got;
  }
}

// Unbound identifiers are reported exactly when a binding is missing.
TEST(EvaluateTest, UnboundIdentifierSoundness) {
  testing::ExprGenerator gen(99);
  for (int i = 0; i < 500; ++i) {
    testing::RandomExpr e = gen.Next();
    Equation eq = ParseLatex(e.latex);
    Bindings b;
    std::set<std::string> missing;
    for (const std::string &v : e.variables) {
      if (gen.rng()() % 3 == 0) {
        missing.insert(v);
      } else {
        b.Set(v, 1.5);
      }
    }
    if (missing.empty()) {
      EXPECT_NO_THROW(Evaluate(eq.side(0), b)) << e.latex;
    } else {
      try {
        Evaluate(eq.side(0), b);
        ADD_FAILURE() << "no UnboundIdentifier for " << e.latex;
      } catch (const UnboundIdentifier &u) {
        EXPECT_EQ(missing.count(u.name()), 1u) << u.name();
      }
    }
  }
}

TEST(EvaluateTest, DomainErrors) {
  Bindings b;
  b.Set("x", 0);
  b.Set("y", -4);
  for (const char *src : {"\\frac{1}{x}", "\\sqrt{y}", "\\ln x", "\\log_{10} y", "10^{400}"}) {
    try {
      Eval(src, b);
      ADD_FAILURE() << src;
    } catch (const MathDomainError &e) {
      EXPECT_FALSE(e.subexpression().empty()) << src;
    }
  }
}

TEST(BindingsTest, RejectsNonFiniteAndBadNames) {
  Bindings b;
  EXPECT_THROW(b.Set("x", std::nan("")), std::invalid_argument);
  EXPECT_THROW(b.Set("x", INFINITY), std::invalid_argument);
  EXPECT_THROW(b.Set("a+b", 1), std::invalid_argument);
  b.Set("c_{v}", 2);
  EXPECT_EQ(b.Get("c_v"), 2);
}

TEST(SelectEvaluableSideTest, SolvesForLoneIdentifier) {
  Bindings b;
  b.Set("r", 2);
  EvaluableSide s = SelectEvaluableSide(ParseLatex("C = 2 \\pi r = \\pi d"), b);
  EXPECT_EQ(s.target, "C");
  EXPECT_EQ(s.index, 1u);
  EXPECT_NEAR(Evaluate(s.expression, b), 4 * M_PI, 1e-12);

  Bindings d;
  d.Set("d", 4);
  s = SelectEvaluableSide(ParseLatex("C = 2 \\pi r = \\pi d"), d);
  EXPECT_EQ(s.index, 2u);

  EXPECT_THROW(SelectEvaluableSide(ParseLatex("C = 2 \\pi r"), Bindings()), NoEvaluableSide);
}

TEST(SelectEvaluableSideTest, FullyBoundWithoutTarget) {
  Bindings b;
  b.Set("a", 3);
  b.Set("b", 4);
  EvaluableSide s = SelectEvaluableSide(ParseLatex("c^2 = a^2 + b^2"), b);
  EXPECT_EQ(s.target, std::nullopt);
  EXPECT_EQ(s.index, 1u);
  EXPECT_DOUBLE_EQ(Evaluate(s.expression, b), 25);
}

}  // namespace
}  // namespace mathqa
