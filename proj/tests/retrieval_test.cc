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

#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "mathqa/latex_parser.h"
#include "mathqa/retrieval.h"
#include "test_support.h"

namespace mathqa {
namespace {

using nlohmann::json;

KnowledgeStore Small() {
  return KnowledgeStore::Ingest(std::string(MATHQA_TEST_LOCAL_DIR) + "/small_kb.jsonl");
}

KnowledgeStore StoreFrom(const std::vector<json> &items) {
  std::string text;
  for (const json &j : items) text += j.dump() + "\n";
  std::istringstream in(text);
  return KnowledgeStore::Parse(in);
}

std::vector<std::string> Symbols(const FormulaAnswer &a) {
  std::vector<std::string> out;
  for (const IdentifierPart &p : a.identifiers) out.push_back(p.symbol);
  return out;
}

TEST(RetrievalTest, DefiningFormula) {
  KnowledgeStore store = Small();
  FormulaAnswer a = Retrieve(MakeTriple("pythagorean theorem", Predicate::kFormula), store, "en");
  EXPECT_EQ(a.qid, "Q11518");
  EXPECT_EQ(a.formula_qid, "Q11518");
  EXPECT_EQ(a.provenance, Provenance::kDefiningFormula);
  EXPECT_EQ(a.formula, ParseLatex("c^2 = a^2 + b^2"));
  EXPECT_EQ(a.formula_latex, Render(ParseLatex("c^2 = a^2 + b^2")));
  EXPECT_EQ(Symbols(a), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(a.property.empty());
  EXPECT_EQ(ProvenanceName(a.provenance), "defining-formula");
}

TEST(RetrievalTest, QualityViaTargetItem) {
  KnowledgeStore store = Small();
  FormulaAnswer a = Retrieve(MakeTriple("sphere", Predicate::kVolume), store, "en");
  EXPECT_EQ(a.qid, "Q12507");
  EXPECT_EQ(a.formula_qid, "Q8000001");
  EXPECT_EQ(a.provenance, Provenance::kHasQuality);
  EXPECT_EQ(a.property, "volume");
  EXPECT_EQ(a.formula, ParseLatex("V = \\frac{4}{3}\\pi r^3"));
  // The radius part lives on the subject item.
  ASSERT_EQ(Symbols(a), (std::vector<std::string>{"V", "r"}));
  EXPECT_EQ(a.identifiers[1].label, "radius");
  EXPECT_EQ(a.part_sources.at("r"), "Q12507");
  EXPECT_EQ(ProvenanceName(a.provenance), "has-quality");
}

TEST(RetrievalTest, QualityInline) {
  KnowledgeStore store = Small();
  FormulaAnswer a = Retrieve(MakeTriple("circle", Predicate::kArea), store, "en");
  EXPECT_EQ(a.qid, "Q17278");
  EXPECT_EQ(a.formula_qid, "Q17278");
  EXPECT_EQ(a.property, "area");
  EXPECT_EQ(a.formula, ParseLatex("\\mathrm{Area} = \\pi r^2"));

  FormulaAnswer c = Retrieve(MakeTriple("circle", Predicate::kCircumference), store, "en");
  EXPECT_EQ(c.formula.size(), 3u);
}

TEST(RetrievalTest, SurfaceAreaPhraseFirst) {
  KnowledgeStore store = Small();
  Triple t = MakeTriple("sphere", Predicate::kArea);
  t.property = "surface area";
  FormulaAnswer a = Retrieve(t, store, "en");
  EXPECT_EQ(a.property, "surface area");
  EXPECT_EQ(a.formula, ParseLatex("A = 4 \\pi r^2"));
}

TEST(RetrievalTest, PrismDisambiguation) {
  KnowledgeStore store = Small();
  EXPECT_EQ(store.LookupByLabel("prism", "en").size(), 2u);
  FormulaAnswer v = Retrieve(MakeTriple("prism", Predicate::kVolume), store, "en");
  EXPECT_EQ(v.qid, "Q180544");
  EXPECT_EQ(v.formula, ParseLatex("V = B h"));
  FormulaAnswer f = Retrieve(MakeTriple("prism", Predicate::kFormula), store, "en");
  EXPECT_EQ(f.qid, "Q165896");
}

TEST(RetrievalTest, LowestQidAmongEquals) {
  KnowledgeStore store = Small();
  // Q5000 has nothing; Q17278 answers, so capability beats qid order.
  EXPECT_EQ(Retrieve(MakeTriple("circle", Predicate::kArea), store, "en").qid, "Q17278");
  // Neither answers the defining formula: Q5000 wins on qid, then fails.
  EXPECT_THROW(Retrieve(MakeTriple("circle", Predicate::kFormula), store, "en"), NoFormula);
}

TEST(RetrievalTest, ApostropheAndDashVariants) {
  KnowledgeStore store = Small();
  for (const char *s : {"pythagoras' theorem", "pythagoras’ theorem", "pythagoras's theorem",
                        "pythagoras’s theorem"}) {
    EXPECT_EQ(Retrieve(MakeTriple(s, Predicate::kFormula), store, "en").qid, "Q11518") << s;
  }
  EXPECT_EQ(Retrieve(MakeTriple("mass-energy equivalence", Predicate::kFormula), store, "en").qid,
            "Q35875");
}

TEST(RetrievalTest, PluralFallback) {
  KnowledgeStore store = Small();
  EXPECT_EQ(Retrieve(MakeTriple("spheres", Predicate::kVolume), store, "en").qid, "Q12507");
  try {
    Retrieve(MakeTriple("unicorns", Predicate::kFormula), store, "en");
    FAIL();
  } catch (const ItemNotFound &e) {
    EXPECT_EQ(e.subject(), "unicorns");
    EXPECT_EQ(e.tried(), (std::vector<std::string>{"unicorns", "unicorn"}));
  }
}

TEST(RetrievalTest, Failures) {
  KnowledgeStore store = Small();
  EXPECT_THROW(Retrieve(MakeTriple("no such thing", Predicate::kFormula), store, "en"),
               ItemNotFound);
  EXPECT_THROW(Retrieve(MakeTriple("gas", Predicate::kVolume), store, "en"), NoSuchQuality);
  try {
    Retrieve(MakeTriple("riemann zeta function", Predicate::kFormula), store, "en");
    FAIL();
  } catch (const NoFormula &e) {
    EXPECT_TRUE(e.unparseable());
  }
  Triple t = MakeTriple("cube", Predicate::kArea);
  t.property = "surface area";
  EXPECT_THROW(Retrieve(t, store, "en"), NoFormula);
}

TEST(RetrievalTest, FirstFormulaAndCanonicalParts) {
  KnowledgeStore store = Small();
  FormulaAnswer a =
      Retrieve(MakeTriple("coefficient of variation", Predicate::kFormula), store, "en");
  EXPECT_EQ(a.formula, ParseLatex("\\frac{\\sigma}{\\mu}"));
  ASSERT_EQ(Symbols(a), (std::vector<std::string>{"\\mu", "\\sigma"}));
  EXPECT_EQ(a.identifiers[0].label, "mean");
  EXPECT_EQ(a.identifiers[1].label, "standard deviation");
}

TEST(RetrievalTest, KbConstantsAttached) {
  KnowledgeStore store = Small();
  FormulaAnswer a = Retrieve(MakeTriple("ideal gas law", Predicate::kFormula), store, "en");
  auto r = std::find_if(a.identifiers.begin(), a.identifiers.end(),
                        [](const IdentifierPart &p) { return p.symbol == "R"; });
  ASSERT_NE(r, a.identifiers.end());
  EXPECT_EQ(r->value, 8.314);
}

TEST(RetrievalTest, Hindi) {
  KnowledgeStore store = Small();
  FormulaAnswer a = Retrieve(MakeTriple("गोला", Predicate::kVolume), store, "hi");
  EXPECT_EQ(a.qid, "Q12507");
  EXPECT_EQ(a.item_label, "गोला");
  EXPECT_EQ(Retrieve(MakeTriple("पाइथागोरस प्रमेय", Predicate::kFormula), store, "hi").qid,
            "Q11518");
  // English labels are not consulted for Hindi questions.
  EXPECT_THROW(Retrieve(MakeTriple("sphere", Predicate::kVolume), store, "hi"), ItemNotFound);
}

TEST(RetrievalTest, AnswerForItem) {
  KnowledgeStore store = Small();
  EXPECT_EQ(AnswerForItem(store, "Q11518", "").formula, ParseLatex("c^2 = a^2 + b^2"));
  EXPECT_EQ(AnswerForItem(store, "Q12507", "Volume").formula_qid, "Q8000001");
  EXPECT_THROW(AnswerForItem(store, "Q1", ""), ItemNotFound);
  EXPECT_THROW(AnswerForItem(store, "Q12507", "mass"), NoSuchQuality);
}

TEST(SelectCandidateTest, EmptyAndDuplicate) {
  KnowledgeStore store = Small();
  EXPECT_EQ(SelectCandidate(store, {}, MakeTriple("x", Predicate::kFormula)), nullptr);
  const KBItem *p = store.Find("Q165896");
  EXPECT_THROW(SelectCandidate(store, {p, p}, MakeTriple("prism", Predicate::kFormula)),
               Ambiguous);
}

// Random same-label stores. The winner must match a direct reading of the
// tie-break chain and must not depend on candidate or file order.
TEST(SelectCandidateTest, TieBreakIsATotalOrder) {
  std::mt19937_64 rng(20260417);
  const std::vector<Predicate> predicates = {Predicate::kFormula, Predicate::kVolume,
                                             Predicate::kArea};
  for (int round = 0; round < 300; ++round) {
    size_t n = 1 + rng() % 6;
    std::vector<json> items;
    std::vector<unsigned long long> numbers;
    while (numbers.size() < n) {
      unsigned long long q = 1 + rng() % 5000;
      if (std::find(numbers.begin(), numbers.end(), q) == numbers.end()) numbers.push_back(q);
    }
    struct Traits {
      bool formula, volume, shape;
    };
    std::map<std::string, Traits> traits;
    for (unsigned long long q : numbers) {
      Traits t{rng() % 2 == 0, rng() % 2 == 0, rng() % 2 == 0};
      json j = {{"qid", "Q" + std::to_string(q)}, {"labels", {{"en", "widget"}}}};
      if (t.formula) j["defining_formulae"] = {"y = x"};
      if (t.volume) j["qualities"] = {{{"label", "volume"}, {"inline_formula", "V = a^3"}}};
      if (t.shape) j["instance_of"] = {ShapeClasses()[rng() % ShapeClasses().size()]};
      else j["instance_of"] = {"Q1420"};
      traits["Q" + std::to_string(q)] = t;
      items.push_back(j);
    }
    KnowledgeStore store = StoreFrom(items);
    Predicate pred = predicates[rng() % predicates.size()];
    Triple triple = MakeTriple("widget", pred);

    // Independent reading of the chain.
    std::string expected;
    std::tuple<int, int, unsigned long long> best{9, 9, 0};
    for (const auto &[qid, t] : traits) {
      bool can = pred == Predicate::kFormula ? t.formula : pred == Predicate::kVolume && t.volume;
      int geometry_penalty = (pred != Predicate::kFormula && !t.shape) ? 1 : 0;
      std::tuple<int, int, unsigned long long> key{can ? 0 : 1, geometry_penalty,
                                                   *QidNumber(qid)};
      if (expected.empty() || key < best) {
        best = key;
        expected = qid;
      }
    }

    std::vector<const KBItem *> candidates = store.LookupByLabel("widget", "en");
    ASSERT_EQ(candidates.size(), n);
    for (int perm = 0; perm < 4; ++perm) {
      std::shuffle(candidates.begin(), candidates.end(), rng);
      const KBItem *got = SelectCandidate(store, candidates, triple);
      ASSERT_NE(got, nullptr);
      EXPECT_EQ(got->qid, expected) << "round " << round;
    }
    std::shuffle(items.begin(), items.end(), rng);
    KnowledgeStore shuffled = StoreFrom(items);
    EXPECT_EQ(SelectCandidate(shuffled, shuffled.LookupByLabel("widget", "en"), triple)->qid,
              expected);
  }
}

TEST(RetrievalTest, FixtureKbAnswersExamples) {
  KnowledgeStore store = KnowledgeStore::Ingest(testing::DataPath("kb/fixture_kb.jsonl"));
  EXPECT_EQ(Retrieve(MakeTriple("pythagorean theorem", Predicate::kFormula), store, "en").formula,
            ParseLatex("c^2 = a^2 + b^2"));
  FormulaAnswer sphere = Retrieve(MakeTriple("sphere", Predicate::kVolume), store, "en");
  EXPECT_EQ(sphere.provenance, Provenance::kHasQuality);
  EXPECT_EQ(sphere.formula, ParseLatex("V = \\frac{4}{3}\\pi r^3"));
}

}  // namespace
}  // namespace mathqa
