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

#ifndef MATHQA_TESTS_TEST_SUPPORT_H_
#define MATHQA_TESTS_TEST_SUPPORT_H_

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace mathqa::testing {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

// Absolute path of a file under the shipped data directory.
std::string DataPath(const std::string &relative);

std::string ReadFile(const std::string &path);

// Plain infix arithmetic evaluated in 50-digit binary floating point:
// + - * / ^, unary minus, parentheses, pi, and the functions sqrt cbrt sin
// cos tan exp ln log10 abs. Names may start with a backslash and contain
// letters, digits and underscores ("\lambda", "x_0", "A_ellipse").
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BigFloat OracleEval(const std::string &expr, const std::map<std::string, BigFloat> &vars);

// Names referenced by an oracle expression, excluding pi and functions.
std::set<std::string> OracleNames(const std::string &expr);

struct Range {
  double lo = 0.5;
  double hi = 5.0;
};

struct CorpusEntry {
  size_t line = 0;
  std::string latex;
  std::string oracle;
  std::map<std::string, Range> ranges;
};

// Oracle spelling of a canonical identifier: "m_{1}" -> "m_1".
std::string OracleSpelling(const std::string &canonical);

// data/corpus/formulas.tsv
std::vector<CorpusEntry> LoadCorpus();

// |actual - expected| / max(|expected|, floor).
double RelativeError(double actual, const BigFloat &expected, double floor = 0);

// Random expression trees, rendered both as LaTeX and as oracle infix. The
// generator keeps every subexpression inside its real domain for variables
// drawn from [0.5, 3].
struct RandomExpr {
  std::string latex;
  std::string oracle;
  std::set<std::string> variables;
};

class ExprGenerator {
 public:
  explicit ExprGenerator(uint64_t seed) : rng_(seed) {}

  RandomExpr Next(int max_depth = 4);
  std::mt19937_64 &rng() { return rng_; }

 private:
  struct Node {
    std::string latex;
    std::string oracle;
    bool atom = false;
  };

  Node Any(int depth);
  Node Positive(int depth);
  Node Leaf(bool positive);
  std::string Wrap(const Node &n) const;
  int Pick(int n);

  std::mt19937_64 rng_;
  std::set<std::string> vars_;
};

extern const std::vector<std::string> kGeneratorVariables;

}  // namespace mathqa::testing

#endif  // MATHQA_TESTS_TEST_SUPPORT_H_
