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
#include <numbers>
#include <thread>

#include <gtest/gtest.h>

#include "httplib.h"
#include "json.hpp"
#include "mathqa/http_server.h"
#include "mathqa/latex_parser.h"
#include "mathqa/service.h"
#include "test_support.h"

namespace mathqa {
namespace {

using nlohmann::json;

const QaService &Service() {
  static const QaService *service = new QaService(
      KnowledgeStore::Ingest(testing::DataPath("kb/fixture_kb.jsonl")),
      PatternTable::Load(testing::DataPath("patterns/hindi.tsv")));
  return *service;
}

std::vector<std::string> Symbols(const json &payload) {
  std::vector<std::string> out;
  for (const json &i : payload["identifiers"]) out.push_back(i["symbol"]);
  return out;
}

TEST(AskTest, DefiningFormula) {
  json a = Service().Ask("What is the formula for Pythagorean theorem?", "en");
  // No side is a lone identifier, so there is nothing to solve for.
  EXPECT_EQ(a["status"], "ok");
  EXPECT_EQ(a["qid"], "Q11518");
  EXPECT_EQ(a["provenance"], "defining-formula");
  EXPECT_TRUE(a["solves_for"].is_null());
  EXPECT_EQ(ParseLatex(a["formula_latex"].get<std::string>()), ParseLatex("c^2 = a^2 + b^2"));
  EXPECT_EQ(Symbols(a), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(a["subject"], "pythagorean theorem");
  EXPECT_EQ(a["predicate"], "formula");
}

TEST(AskTest, QualityFormula) {
  json a = Service().Ask("What is the volume of a sphere?", "en");
  EXPECT_EQ(a["status"], "needs-values");
  EXPECT_EQ(a["provenance"], "has-quality");
  EXPECT_EQ(a["property"], "volume");
  EXPECT_EQ(ParseLatex(a["formula_latex"].get<std::string>()),
            ParseLatex("V = \\frac{4}{3}\\pi r^3"));
  EXPECT_EQ(Symbols(a), std::vector<std::string>{"r"});
}

TEST(AskTest, KbSuppliesEveryValue) {
  json a = Service().Ask("What is the formula for Earth's radius?", "en");
  EXPECT_EQ(a["status"], "ok");
  for (const json &i : a["identifiers"]) {
    EXPECT_TRUE(i["known_value"].is_number()) << i.dump();
    EXPECT_EQ(i["source_qid"], "Q3274580");
  }
}

TEST(AskTest, Hindi) {
  json a = Service().Ask("गोले का आयतन क्या है?", "hi");
  EXPECT_EQ(a["status"], "needs-values");
  EXPECT_EQ(a["qid"], "Q12507");
  EXPECT_EQ(a["subject"], "गोला");
}

TEST(AskTest, DirectFormula) {
  json a = Service().Ask("c^2 = a^2 + b^2", "formula");
  EXPECT_EQ(a["provenance"], "direct-formula");
  EXPECT_EQ(a["qid"], "Q11518");
  json b = Service().Ask("y = m x + q", "formula");
  EXPECT_EQ(b["status"], "needs-values");
  EXPECT_TRUE(b["qid"].is_null());
  json c = Service().Ask("x^3 = x + 1", "en");
  EXPECT_EQ(c["status"], "ok");
  EXPECT_TRUE(c["solves_for"].is_null());
}

TEST(AskTest, Failures) {
  EXPECT_EQ(Service().Ask("What is the formula for flux capacitor?", "en")["status"],
            "not-found");
  EXPECT_EQ(Service().Ask("What is the formula for Riemann zeta function?", "en")["status"],
            "unparseable");
  EXPECT_EQ(Service().Ask("Tell me a joke", "en")["status"], "unparseable");
  EXPECT_EQ(Service().Ask("p \\iff q", "formula")["status"], "unparseable");
  EXPECT_THROW(Service().Ask("  ", "en"), InvalidRequest);
  EXPECT_THROW(Service().Ask("x = 1", "fr"), InvalidRequest);

  QaService no_hindi(KnowledgeStore::Ingest(testing::DataPath("kb/fixture_kb.jsonl")),
                     std::nullopt);
  EXPECT_EQ(no_hindi.Ask("गोले का आयतन क्या है?", "hi")["status"], "unparseable");
}

TEST(CalculateRequestTest, ByQid) {
  json r = Service().Calculate({{"qid", "Q11518"}, {"bindings", {{"a", 3}, {"b", 4}}}});
  EXPECT_EQ(r["status"], "ok");
  EXPECT_DOUBLE_EQ(r["value"].get<double>(), 25.0);
  EXPECT_TRUE(r["solved_for"].is_null());
  EXPECT_EQ(r["side_index"], 1);

  json v = Service().Calculate(
      {{"qid", "Q12507"}, {"property", "volume"}, {"bindings", {{"r", 2}}}});
  EXPECT_EQ(v["status"], "ok");
  EXPECT_NEAR(v["value"].get<double>(), 4.0 / 3 * std::numbers::pi * 8, 1e-12);
}

TEST(CalculateRequestTest, ChainFormula) {
  json r = Service().Calculate({{"formula", "C = 2 \\pi r = \\pi d"}, {"bindings", {{"r", 2}}}});
  EXPECT_EQ(r["status"], "ok");
  EXPECT_NEAR(r["value"].get<double>(), 4 * std::numbers::pi, 1e-14);
  EXPECT_EQ(r["side_index"], 1);
}

TEST(CalculateRequestTest, NeedsValues) {
  json r = Service().Calculate({{"qid", "Q11518"}, {"bindings", {{"a", 3}}}});
  EXPECT_EQ(r["status"], "needs-values");
  EXPECT_EQ(r["missing"], json({"b", "c"}));
  json v = Service().Calculate({{"qid", "Q12507"}, {"property", "volume"}});
  EXPECT_EQ(v["status"], "needs-values");
  EXPECT_EQ(v["missing"], json({"r"}));
}

TEST(CalculateRequestTest, KbConstants) {
  json r = Service().Calculate({{"formula", "R = \\sqrt[3]{a^2 b}"}});
  EXPECT_EQ(r["status"], "ok");
  EXPECT_EQ(r["qid"], "Q3274580");
  EXPECT_EQ(r["constant_sources"]["a"]["qid"], "Q3274580");
  EXPECT_NEAR(r["value"].get<double>(), std::cbrt(6378137.0 * 6378137.0 * 6356752.3), 1e-6);
}

TEST(CalculateRequestTest, Errors) {
  const QaService &qa = Service();
  EXPECT_EQ(qa.Calculate({{"formula", "y = \\sqrt{x}"}, {"bindings", {{"x", -1}}}})["status"],
            "domain-error");
  EXPECT_EQ(qa.Calculate({{"formula", "x \\le 1"}})["status"], "unparseable");
  EXPECT_EQ(qa.Calculate({{"qid", "Q1"}})["status"], "not-found");
  EXPECT_EQ(qa.Calculate({{"qid", "Q12507"}, {"property", "mass"}})["status"], "not-found");
  EXPECT_THROW(qa.Calculate(json::array()), InvalidRequest);
  EXPECT_THROW(qa.Calculate(json::object()), InvalidRequest);
  EXPECT_THROW(qa.Calculate({{"formula", 3}}), InvalidRequest);
  EXPECT_THROW(qa.Calculate({{"formula", "y = x"}, {"bindings", {1, 2}}}), InvalidRequest);
  EXPECT_THROW(qa.Calculate({{"formula", "y = x"}, {"bindings", {{"x", "2"}}}}), InvalidRequest);
  EXPECT_THROW(qa.Calculate({{"formula", "y = x"}, {"bindings", {{"z", 2}}}}), InvalidRequest);
}

TEST(ItemsTest, Lookup) {
  json items = Service().Items("prism", "en")["items"];
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0]["qid"], "Q165896");
  EXPECT_EQ(items[0]["has_defining_formula"], true);
  EXPECT_EQ(items[1]["qualities"], json({"volume"}));
  EXPECT_TRUE(Service().Items("nothing", "en")["items"].empty());
}

class HttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_ = std::make_unique<HttpServer>(Service());
    port_ = server_->Bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->Serve(); });
    server_->WaitUntilReady();
  }

  void TearDown() override {
    server_->Stop();
    if (thread_.joinable()) thread_.join();
  }

  httplib::Client Client() const { return httplib::Client("127.0.0.1", port_); }

  std::unique_ptr<HttpServer> server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(HttpTest, Routes) {
  httplib::Client c = Client();
  auto health = c.Get("/healthz");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);

  json question = {{"text", "What is the volume of a sphere?"}, {"lang", "en"}};
  auto q = c.Post("/api/v1/question", question.dump(), "application/json");
  ASSERT_TRUE(q);
  EXPECT_EQ(q->status, 200);
  EXPECT_EQ(q->get_header_value("Content-Type").rfind("application/json", 0), 0u);
  EXPECT_EQ(json::parse(q->body), Service().Ask("What is the volume of a sphere?", "en"));

  auto calc = c.Post("/api/v1/calculate",
                     json{{"formula", "C = 2 \\pi r = \\pi d"}, {"bindings", {{"r", 2}}}}.dump(),
                     "application/json");
  ASSERT_TRUE(calc);
  EXPECT_EQ(calc->status, 200);
  EXPECT_NEAR(json::parse(calc->body)["value"].get<double>(), 4 * std::numbers::pi, 1e-14);

  auto items = c.Get("/api/v1/items?label=prism&lang=en");
  ASSERT_TRUE(items);
  EXPECT_EQ(json::parse(items->body)["items"].size(), 2u);

  auto not_found = c.Post("/api/v1/question",
                          json{{"text", "What is the formula for flux capacitor?"}}.dump(),
                          "application/json");
  ASSERT_TRUE(not_found);
  EXPECT_EQ(not_found->status, 200);
  EXPECT_EQ(json::parse(not_found->body)["status"], "not-found");
}

TEST_F(HttpTest, MalformedRequestsAre400) {
  httplib::Client c = Client();
  struct Case {
    std::string path, body;
  };
  for (const Case &k : std::vector<Case>{
           {"/api/v1/question", "{not json"},
           {"/api/v1/question", "[1]"},
           {"/api/v1/question", R"({"lang":"en"})"},
           {"/api/v1/question", R"({"text":"x = 1","lang":"fr"})"},
           {"/api/v1/question", R"({"text":"x = 1","lang":3})"},
           {"/api/v1/calculate", R"({})"},
           {"/api/v1/calculate", R"({"formula":"y = x","bindings":{"x":"a"}})"},
           {"/api/v1/calculate", R"({"formula":"y = x","bindings":{"q":1}})"},
       }) {
    auto r = c.Post(k.path, k.body, "application/json");
    ASSERT_TRUE(r) << k.body;
    EXPECT_EQ(r->status, 400) << k.body;
    EXPECT_EQ(json::parse(r->body)["status"], "invalid-request") << k.body;
  }
  auto r = c.Get("/api/v1/items");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 400);
  auto missing = c.Get("/api/v1/nope");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
}

// 100 identical questions at once all get the single-threaded answer.
TEST_F(HttpTest, ParallelIdenticalRequests) {
  const std::string body =
      json{{"text", "What is the formula for Pythagorean theorem?"}, {"lang", "en"}}.dump();
  const std::string expected =
      Service().Ask("What is the formula for Pythagorean theorem?", "en").dump();
  std::vector<std::string> bodies(100);
  std::vector<int> statuses(100, 0);
  std::vector<std::thread> threads;
  for (size_t i = 0; i < bodies.size(); ++i) {
    threads.emplace_back([&, i] {
      httplib::Client c = Client();
      c.set_read_timeout(30, 0);
      auto r = c.Post("/api/v1/question", body, "application/json");
      if (r) {
        statuses[i] = r->status;
        bodies[i] = r->body;
      } else {
        bodies[i] = httplib::to_string(r.error());
      }
    });
  }
  for (std::thread &t : threads) t.join();
  for (size_t i = 0; i < bodies.size(); ++i) {
    EXPECT_EQ(statuses[i], 200) << i;
    EXPECT_EQ(bodies[i], expected) << i;
  }
}

}  // namespace
}  // namespace mathqa
