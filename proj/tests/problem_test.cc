// Copyright 2026 The ciapprox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "ciapprox/errors.hpp"
#include "ciapprox/problem.hpp"
#include "test_util.hpp"

namespace ciapprox {
namespace {

using testing::CT;

constexpr const char* kIntersection =
    "vars: A B C\n"
    "assume: I(A;B|C) I(A;C|B)\n"
    "query: I(A;BC)\n"
    "mode: minlambda\n";

TEST(ParseProblemTest, Basic) {
  const ProblemFile p = parse_problem(kIntersection);
  EXPECT_EQ(p.vars, (VarNames{"A", "B", "C"}));
  EXPECT_EQ(p.assume, (std::vector<CiTriple>{CT("A", "B", "C"), CT("A", "C", "B")}));
  EXPECT_EQ(p.query, (std::vector<CiTriple>{CT("A", "BC")}));
  EXPECT_EQ(p.mode, Engine::kMinLambda);
}

TEST(ParseProblemTest, ConditionalStatement) {
  EXPECT_EQ(parse_statement("I(A;A|B)", {"A", "B"}), CT("A", "A", "B"));
}

TEST(ParseProblemTest, MultiCharacterNames) {
  const VarNames names = {"X1", "X2", "X10", "X3"};
  EXPECT_EQ(parse_statement("I(X10;X2X3|X1)", names), CT("C", "BD", "A"));
  EXPECT_EQ(parse_statement("I( X10 ; X2 X3 | X1 )", names), CT("C", "BD", "A"));
}

TEST(ParseProblemTest, UnknownVariableLocated) {
  try {
    parse_problem("vars: A B C\nquery: I(A;B|X)\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 14);
    EXPECT_NE(std::string(e.what()).find("unknown variable 'X'"),
              std::string::npos);
  }
}

TEST(ParseProblemTest, Errors) {
  EXPECT_THROW(parse_problem("vars: A B\nquery: I(A;B)\nmode: shannon\nmode: positive\n"),
               ParseError);
  EXPECT_THROW(parse_problem("vars: A B\nquery: I(A B)\n"), ParseError);
  EXPECT_THROW(parse_problem("vars: A B\nquery: I(A;)\n"), ParseError);
  EXPECT_THROW(parse_problem("vars: A B\n"), ParseError);
  EXPECT_THROW(parse_problem("query: I(A;B)\n"), ParseError);
  EXPECT_THROW(parse_problem("vars: A A\nquery: I(A;A)\n"), ParseError);
  EXPECT_THROW(parse_problem("vars: A B\nquery: I(A;B)\nmode: magic\n"), ParseError);
  EXPECT_THROW(parse_problem("vars: A B\nquery: I(A;B)\nlambda: 1/0\n"), ParseError);
  EXPECT_THROW(parse_problem("vars: A B\nquery: I(A;B)\nfoo: 1\n"), ParseError);
}

TEST(ParseProblemTest, Params) {
  const ProblemFile p = parse_problem(
      "# comment\nvars: A B\nquery: I(A;B)\nmode: checklambda\n"
      "lambda: 3/2\neps: 1/10\nx: 0.01\ny: 0.02\nkind: marginal\n");
  EXPECT_EQ(p.lambda, Rational(3, 2));
  EXPECT_EQ(p.eps, Rational(1, 10));
  EXPECT_EQ(p.x, 0.01);
  EXPECT_EQ(p.y, 0.02);
  EXPECT_EQ(p.kind, BoundKind::kMarginal);
}

// parse -> serialize -> parse is the identity on canonical problems.
TEST(ParseProblemTest, RoundTrip) {
  std::mt19937_64 rng(61);
  const Engine engines[] = {Engine::kPositive, Engine::kShannon,
                            Engine::kSemigraphoid, Engine::kGraphoid,
                            Engine::kMinLambda, Engine::kCheckLambda,
                            Engine::kBound};
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + k % 5;
    ProblemFile p;
    p.vars = k % 2 ? default_names(n) : VarNames{"A", "B", "C", "D", "E", "F"};
    p.vars.resize(n);
    for (int j = 0; j < k % 4; ++j) {
      p.assume.push_back(testing::random_disjoint_triple(n, rng));
    }
    p.query.push_back(testing::random_disjoint_triple(n, rng));
    if (k % 3 == 0) {
      p.query.push_back(canonicalize(VarSet::single(0), VarSet::single(0),
                                     VarSet::single(1)));
    }
    p.mode = engines[k % 7];
    if (k % 2) p.lambda = make_rational(k, 7);
    if (k % 5 == 0) p.eps = make_rational(1, k + 3);
    if (k % 4 == 0) p.x = 0.1 / (k + 1);
    if (k % 4 == 1) p.y = 1e-5 * k;
    if (k % 3 == 1) p.kind = BoundKind::kRecursive;
    const std::string text = serialize_problem(p);
    const ProblemFile q = parse_problem(text);
    EXPECT_EQ(q, p) << text;
    EXPECT_EQ(serialize_problem(q), text);
  }
}

TEST(RunTest, IntersectionUnbounded) {
  const Report r = run(parse_problem(kIntersection));
  ASSERT_EQ(r.results.size(), 1u);
  EXPECT_EQ(r.results[0].verdict, "unbounded");
  EXPECT_EQ(r.exit_code(), 2);
}

TEST(RunTest, RecursiveChainLambdaOne) {
  const Report r = run(parse_problem(
      "vars: X1 X2 X3 X4\n"
      "assume: I(X1;X2) I(X1;X3|X2) I(X1;X4|X2X3)\n"
      "query: I(X1;X2X3X4)\nmode: minlambda\n"));
  EXPECT_EQ(r.results[0].verdict, "lambda = 1");
  ASSERT_TRUE(r.results[0].certificate);
  EXPECT_NE(r.results[0].certificate->find("lambda = 1"), std::string::npos);
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(RunTest, EnginesAgreeOnExample) {
  const char* base =
      "vars: A B C\nassume: I(A;B) I(A;C|B)\nquery: I(A;C) I(B;C)\n";
  for (const char* mode : {"positive", "shannon", "semigraphoid", "graphoid"}) {
    const Report r = run(parse_problem(std::string(base) + "mode: " + mode + "\n"));
    ASSERT_EQ(r.results.size(), 2u);
    EXPECT_TRUE(r.results[0].positive) << mode;
    EXPECT_FALSE(r.results[1].positive) << mode;
    EXPECT_EQ(r.exit_code(), 2);
  }
  const Report pos = run(parse_problem(std::string(base) + "mode: positive\n"));
  EXPECT_EQ(pos.results[1].witness, "BC");
  const Report sg = run(parse_problem(std::string(base) + "mode: semigraphoid\n"));
  ASSERT_TRUE(sg.results[0].derivation);
  EXPECT_EQ(sg.results[0].derivation->substr(0, 13), "decomposition");
}

TEST(RunTest, CheckLambdaAndBound) {
  const Report c = run(parse_problem(
      "vars: A B C\nassume: I(A;BC)\nquery: I(A;B|C)\nmode: checklambda\n"
      "lambda: 1\n"));
  EXPECT_EQ(c.results[0].verdict, "certified");
  const Report b = run(parse_problem(
      "vars: a b c\nassume: I(ab;c)\nquery: I(a;c|b)\nmode: bound\n"
      "kind: marginal\n"));
  EXPECT_EQ(b.results[0].verdict, "within bound");
  EXPECT_EQ(b.results[0].bound, "1");
  EXPECT_THROW(run(parse_problem("vars: A B\nquery: I(A;B)\nmode: checklambda\n")),
               DomainError);
  EXPECT_THROW(run(parse_problem("vars: A B\nquery: I(A;B)\n")), DomainError);
}

TEST(RunTest, ResultsKeepInputOrder) {
  std::string text = "vars: A B C D\nassume: I(A;BCD)\nquery:";
  std::vector<std::string> queries = {"I(A;B)", "I(C;D)", "I(A;C|B)",
                                      "I(B;C)", "I(A;D|BC)", "I(A;B|D)"};
  for (const auto& q : queries) text += " " + q;
  text += "\nmode: minlambda\n";
  const Report r = run(parse_problem(text));
  ASSERT_EQ(r.results.size(), queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    EXPECT_EQ(r.results[i].query, queries[i]);
  }
  EXPECT_EQ(r.results[1].verdict, "unbounded");
  EXPECT_EQ(r.results[0].verdict, "lambda = 1");
}

TEST(RunTest, CapExceeded) {
  std::string vars = "vars:";
  for (int i = 1; i <= 11; ++i) vars += " X" + std::to_string(i);
  EXPECT_THROW(run(parse_problem(vars + "\nquery: I(X1;X2)\nmode: shannon\n")),
               CapExceeded);
}

TEST(ParseGraphTest, DirectedWithOutOfOrderDeclarations) {
  const GraphFile g = parse_graph(
      "vars: X1 X2 X3\nnode X1 parents X2\nnode X3 parents X1 X2\n");
  ASSERT_TRUE(g.dag);
  EXPECT_EQ(g.dag->order(), (std::vector<int>{1, 0, 2}));
  EXPECT_EQ(g.dag->parents(2), VarSet::of({0, 1}));
  EXPECT_FALSE(g.ugraph);
}

TEST(ParseGraphTest, UndirectedAndErrors) {
  const GraphFile g = parse_graph("vars: A B C\nedge A C\nedge C B\n");
  ASSERT_TRUE(g.ugraph);
  EXPECT_EQ(g.ugraph->edge_count(), 2);
  EXPECT_THROW(parse_graph("vars: A B\nnode A parents B\nnode B parents A\n"),
               ParseError);
  EXPECT_THROW(parse_graph("vars: A B\nedge A Q\n"), ParseError);
  EXPECT_THROW(parse_graph("vars: A B\nedge A B\nnode A parents B\n"), ParseError);
  EXPECT_THROW(parse_graph("edge A B\n"), ParseError);
  EXPECT_THROW(parse_graph("vars: A B\nnode A parents A\n"), ParseError);
}

}  // namespace
}  // namespace ciapprox
