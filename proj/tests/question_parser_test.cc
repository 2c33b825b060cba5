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

#include <sstream>

#include <gtest/gtest.h>

#include "mathqa/latex_parser.h"
#include "mathqa/question_parser.h"
#include "test_support.h"

namespace mathqa {
namespace {

Triple T(const std::string &subject, Predicate p, const std::string &property = "") {
  Triple t = MakeTriple(subject, p);
  if (!property.empty()) t.property = property;
  return t;
}

std::optional<Triple> AsTriple(const ParsedQuestion &q) {
  if (const auto *t = std::get_if<Triple>(&q)) return *t;
  return std::nullopt;
}

PatternTable Hindi() { return PatternTable::Load(testing::DataPath("patterns/hindi.tsv")); }

PatternTable PatternsFrom(const std::string &text) {
  std::istringstream in(text);
  return PatternTable::Parse(in);
}

TEST(PredicateTest, NamesRoundTrip) {
  for (Predicate p : GeometryPredicates()) {
    EXPECT_EQ(PredicateFromName(PredicateName(p)), p);
  }
  EXPECT_EQ(PredicateFromName("formula"), Predicate::kFormula);
  EXPECT_EQ(PredicateFromName("Volume"), std::nullopt);
  EXPECT_EQ(PredicateFromName("height"), std::nullopt);
  EXPECT_EQ(GeometryPredicates().size(), 7u);
}

TEST(ParseEnglishTest, FormulaTemplate) {
  EXPECT_EQ(AsTriple(ParseEnglish("What is the formula for Pythagorean theorem?")),
            T("pythagorean theorem", Predicate::kFormula));
  EXPECT_EQ(AsTriple(ParseEnglish("what is the formula of gas")),
            T("gas", Predicate::kFormula));
  EXPECT_EQ(AsTriple(ParseEnglish("  WHAT IS THE FORMULA FOR   Earth’s radius ?")),
            T("earth's radius", Predicate::kFormula));
  EXPECT_EQ(AsTriple(ParseEnglish("What is the formula for the logistic function?")),
            T("logistic function", Predicate::kFormula));
}

TEST(ParseEnglishTest, PropertyTemplate) {
  EXPECT_EQ(AsTriple(ParseEnglish("What is the volume of a sphere?")),
            T("sphere", Predicate::kVolume));
  EXPECT_EQ(AsTriple(ParseEnglish("What is the surface area of triangular cupola?")),
            T("triangular cupola", Predicate::kArea, "surface area"));
  EXPECT_EQ(AsTriple(ParseEnglish("what is the circumradius of an equilateral triangle")),
            T("equilateral triangle", Predicate::kCircumradius));
  EXPECT_EQ(AsTriple(ParseEnglish("What is the perimeter of the square?")),
            T("square", Predicate::kPerimeter));
  EXPECT_EQ(AsTriple(ParseEnglish("What is the median of triangle?")),
            T("triangle", Predicate::kMedian));
}

TEST(ParseEnglishTest, DirectFormula) {
  ParsedQuestion q = ParseEnglish("c^2 = a^2 + b^2");
  ASSERT_TRUE(std::holds_alternative<DirectFormula>(q));
  EXPECT_EQ(std::get<DirectFormula>(q).equation, ParseLatex("c^2 = a^2 + b^2"));
  EXPECT_TRUE(std::holds_alternative<DirectFormula>(ParseEnglish("E = mc^2")));
  EXPECT_TRUE(std::holds_alternative<DirectFormula>(ParseEnglish("\\frac{1}{2} m v^2")));
}

TEST(ParseEnglishTest, NoParse) {
  for (const char *q : {"", "   ", "Tell me a joke", "What is the height of Everest?",
                        "How are you", "\\sum_{n=1}^\\infty n", "volume"}) {
    EXPECT_TRUE(std::holds_alternative<NoParse>(ParseEnglish(q))) << q;
  }
  EXPECT_FALSE(std::get<NoParse>(ParseEnglish("\\sum_{n=1}^\\infty n")).reason.empty());
}

TEST(ParseFormulaTest, ReportsParserMessage) {
  EXPECT_TRUE(std::holds_alternative<DirectFormula>(ParseFormula("x = 1")));
  ParsedQuestion q = ParseFormula("p \\iff q");
  ASSERT_TRUE(std::holds_alternative<NoParse>(q));
  EXPECT_NE(std::get<NoParse>(q).reason.find("iff"), std::string::npos);
}

TEST(PatternTableTest, ShippedTableLoads) {
  PatternTable table = Hindi();
  EXPECT_GE(table.patterns().size(), 10u);
  EXPECT_EQ(table.predicate_words().at("आयतन"), Predicate::kVolume);
  EXPECT_EQ(table.Stem("गोले"), "गोला");
  EXPECT_EQ(table.Stem("त्रिभुज"), "त्रिभुज");
}

// Every documented example parses to its expected subject and predicate.
TEST(PatternTableTest, ExamplesRoundTrip) {
  PatternTable table = Hindi();
  size_t checked = 0;
  for (const PatternTable::Pattern &p : table.patterns()) {
    if (p.example.empty()) continue;
    std::optional<Triple> t = AsTriple(ParseHindi(p.example, table));
    ASSERT_TRUE(t.has_value()) << "line " << p.line << ": " << p.example;
    EXPECT_EQ(t->subject, table.Stem(p.expected_subject)) << "line " << p.line;
    if (p.predicate) {
      EXPECT_EQ(t->predicate, *p.predicate) << "line " << p.line;
    }
    ++checked;
  }
  EXPECT_GE(checked, 10u);
}

TEST(ParseHindiTest, Questions) {
  PatternTable table = Hindi();
  EXPECT_EQ(AsTriple(ParseHindi("पाइथागोरस प्रमेय का सूत्र क्या है?", table)),
            T("पाइथागोरस प्रमेय", Predicate::kFormula));
  EXPECT_EQ(AsTriple(ParseHindi("गोले का आयतन क्या है?", table)), T("गोला", Predicate::kVolume));
  EXPECT_EQ(AsTriple(ParseHindi("वृत्त  की परिधि क्या है।", table)),
            T("वृत्त", Predicate::kCircumference));
  EXPECT_EQ(AsTriple(ParseHindi("बेलन का घनफल क्या है?", table)), T("बेलन", Predicate::kVolume));
  EXPECT_TRUE(std::holds_alternative<NoParse>(ParseHindi("आज मौसम कैसा है?", table)));
  EXPECT_TRUE(std::holds_alternative<NoParse>(ParseHindi("बेलन का रंग क्या है?", table)));
  EXPECT_TRUE(std::holds_alternative<NoParse>(ParseHindi("", table)));
}

TEST(PatternTableTest, FileErrors) {
  struct Case {
    std::string text;
    size_t line;
  };
  std::vector<Case> cases = {
      {"<X> का सूत्र\tformula\n<X> का\n", 2},
      {"का सूत्र\tformula\n", 1},
      {"<X> <X>\tformula\n", 1},
      {"<X> का\tcolour\n", 1},
      {"<X> का\t<P>\n", 1},
      {"<X> का <P>\tformula\n", 1},
      {"@predicate\tआयतन\n", 1},
      {"@predicate\tआयतन\theight\n", 1},
      {"@stem\tगोले\n", 1},
      {"@bogus\ta\tb\n", 1},
      {"<X> का\tformula\tगोले का\tघन\n", 1},
  };
  for (const Case &c : cases) {
    try {
      PatternsFrom(c.text);
      ADD_FAILURE() << c.text;
    } catch (const PatternFileError &e) {
      EXPECT_EQ(e.line(), c.line) << c.text << ": " << e.what();
    }
  }
  EXPECT_THROW(PatternTable::Load("/nonexistent/hindi.tsv"), PatternFileError);
}

TEST(PatternTableTest, FirstMatchWins) {
  PatternTable table = PatternsFrom(
      "<X> का सूत्र\tformula\n"
      "<X> का <P>\t<P>\n"
      "@predicate\tसूत्र\tarea\n");
  EXPECT_EQ(AsTriple(ParseHindi("गैस का सूत्र", table)), T("गैस", Predicate::kFormula));
}

}  // namespace
}  // namespace mathqa
