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

#include "ciapprox/distribution.hpp"
#include "ciapprox/errors.hpp"
#include "ciapprox/graphoid.hpp"
#include "ciapprox/graphsep.hpp"
#include "test_util.hpp"

namespace ciapprox {
namespace {

using testing::S;
using testing::T;

UGraph path_acb() {
  UGraph g(3);
  g.add_edge(0, 2);
  g.add_edge(2, 1);
  return g;
}

TEST(USeparatesTest, Examples) {
  EXPECT_TRUE(u_separates(path_acb(), S("A"), S("B"), S("C")));
  EXPECT_FALSE(u_separates(path_acb(), S("A"), S("B"), VarSet()));
  UGraph tri(3);
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(2, 0);
  EXPECT_FALSE(u_separates(tri, S("A"), S("B"), S("C")));
  EXPECT_FALSE(u_separates(tri, S("A"), S("C"), S("B")));
  EXPECT_THROW(u_separates(tri, S("A"), S("AB"), VarSet()), DomainError);
  EXPECT_THROW(u_separates(tri, VarSet(), S("B"), VarSet()), DomainError);
  EXPECT_THROW(tri.add_edge(1, 1), DomainError);
}

Dag chain() { return Dag({VarSet(), S("A"), S("B")}); }
Dag collider() { return Dag({VarSet(), VarSet(), S("AB")}); }

TEST(DSeparatesTest, Chain) {
  EXPECT_TRUE(d_separates(chain(), S("A"), S("C"), S("B")));
  EXPECT_FALSE(d_separates(chain(), S("A"), S("C"), VarSet()));
}

TEST(DSeparatesTest, Collider) {
  EXPECT_TRUE(d_separates(collider(), S("A"), S("B"), VarSet()));
  EXPECT_FALSE(d_separates(collider(), S("A"), S("B"), S("C")));
}

TEST(DSeparatesTest, ColliderDescendant) {
  Dag d({VarSet(), VarSet(), S("AB"), S("C")});
  EXPECT_FALSE(d_separates(d, S("A"), S("B"), S("D")));
  EXPECT_THROW(d_separates(d, S("A"), S("A"), VarSet()), DomainError);
}

TEST(DagTest, RejectsBadOrder) {
  EXPECT_THROW(Dag({S("B"), VarSet()}), DomainError);
  EXPECT_NO_THROW(Dag({S("B"), VarSet()}, {1, 0}));
  EXPECT_EQ(chain().ancestors_of(S("C")), S("ABC"));
  EXPECT_EQ(chain().children(0), S("B"));
}

TEST(RecursiveBasisTest, Examples) {
  EXPECT_EQ(recursive_basis(chain()), CiSet(3, {T("C", "A", "B")}));
  EXPECT_EQ(recursive_basis(collider()), CiSet(3, {T("A", "B")}));
  EXPECT_EQ(recursive_basis(Dag({VarSet(), VarSet(), VarSet()})),
            CiSet(3, {T("B", "A"), T("C", "AB")}));
}

TEST(DagFromBasisTest, Examples) {
  const Dag a = dag_from_basis(CiSet(3, {T("C", "A", "B")}), {0, 1, 2});
  EXPECT_EQ(a.parents(1), S("A"));
  EXPECT_EQ(a.parents(2), S("B"));
  const Dag b = dag_from_basis(CiSet(3, {T("A", "B")}), {0, 1, 2});
  EXPECT_EQ(b.parents(1), VarSet());
  EXPECT_EQ(b.parents(2), S("AB"));
  const Dag c = dag_from_basis(CiSet(3), {0, 1, 2});
  EXPECT_EQ(c.parents(2), S("AB"));
  EXPECT_THROW(dag_from_basis(CiSet(3, {T("A", "B", "C")}), {0, 1, 2}),
               DomainError);
}

TEST(DagFromBasisTest, RoundTripOnAllDags) {
  for (const Dag& d : testing::all_dags(4)) {
    const CiSet basis = recursive_basis(d);
    const Dag back = dag_from_basis(basis, d.order());
    EXPECT_EQ(recursive_basis(back), basis);
  }
}

TEST(PairwiseBasisTest, IndependentBits) {
  const auto h = FloatEntropy::from_map(
      2, {{S("A"), 1.0}, {S("B"), 1.0}, {S("AB"), 2.0}});
  EXPECT_EQ(pairwise_basis(h, 0.0), CiSet(2, {T("A", "B")}));
}

TEST(PairwiseBasisTest, Parity) {
  const auto d = parity_distribution({"a", "b", "c"}, S("A"), S("B"), S("C"));
  EXPECT_TRUE(pairwise_basis(entropy_vector(d), 0.0).empty());
}

// At x = y = 0.01 every pair has I(u;v|w) = 0.10298..., so the threshold
// 0.1 admits no pair and 0.11 admits all three.
TEST(PairwiseBasisTest, CounterexampleGroups) {
  const FloatEntropy h = entropy_vector(intersection_counterexample(0.01, 0.01));
  EXPECT_TRUE(pairwise_basis(h, 0.1).empty());
  EXPECT_EQ(pairwise_basis(h, 0.11),
            CiSet(3, {T("A", "B", "C"), T("A", "C", "B"), T("B", "C", "A")}));
}

TEST(IndependenceGraphTest, Examples) {
  EXPECT_EQ(independence_graph(CiSet(3)).edge_count(), 3);
  EXPECT_EQ(independence_graph(CiSet(3, {T("A", "B", "C"), T("A", "C", "B"),
                                         T("B", "C", "A")}))
                .edge_count(),
            0);
  EXPECT_EQ(independence_graph(CiSet(3, {T("A", "B", "C")})), path_acb());
  EXPECT_THROW(independence_graph(CiSet(3, {T("A", "B")})), DomainError);
}

TEST(GraphsepPropertyTest, DSeparationMatchesTrailOracle) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 400; ++k) {
    const int n = 3 + k % 4;
    const Dag d = testing::random_dag(n, rng, 0.4);
    const CiTriple t = testing::random_disjoint_triple(n, rng);
    EXPECT_EQ(d_separates(d, t.x, t.y, t.z),
              testing::dsep_by_trails(d, t.x, t.y, t.z));
  }
}

TEST(GraphsepPropertyTest, WeakTransitivity) {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> pick(0, 5);
  int premises = 0;
  for (int k = 0; k < 3000; ++k) {
    const int n = 4 + k % 3;
    const Dag d = testing::random_dag(n, rng, 0.35);
    const CiTriple t = testing::random_disjoint_triple(n, rng);
    const VarSet rest = VarSet::full(n) - t.vars();
    if (rest.empty()) continue;
    const std::vector<int> free = rest.elements();
    const VarSet g = VarSet::single(free[pick(rng) % free.size()]);
    if (d_separates(d, t.x, t.y, t.z) && d_separates(d, t.x, t.y, t.z | g)) {
      ++premises;
      EXPECT_TRUE(d_separates(d, t.x, g, t.z) || d_separates(d, t.y, g, t.z));
    }
  }
  EXPECT_GT(premises, 50);
}

TEST(GraphsepPropertyTest, SeparationMonotoneInZ) {
  std::mt19937_64 rng(33);
  std::bernoulli_distribution edge(0.4);
  for (int k = 0; k < 500; ++k) {
    const int n = 5;
    UGraph g(n);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (edge(rng)) g.add_edge(u, v);
      }
    }
    const CiTriple t = testing::random_disjoint_triple(n, rng);
    if (!u_separates(g, t.x, t.y, t.z)) continue;
    const VarSet free = VarSet::full(n) - t.vars();
    for_each_subset(free, [&](VarSet extra) {
      EXPECT_TRUE(u_separates(g, t.x, t.y, t.z | extra));
    });
  }
}

// Graphoid closure of a pairwise basis agrees with separation in the
// independence graph on saturated statements.
TEST(GraphsepPropertyTest, PairwiseGraphoidMatchesSeparation) {
  for (int n = 3; n <= 4; ++n) {
    const VarSet all = VarSet::full(n);
    std::vector<CiTriple> pairs;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        pairs.push_back(
            CiTriple{VarSet::single(u), VarSet::single(v),
                     all - VarSet::of({u, v})});
      }
    }
    for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
      CiSet sigma(n);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (mask >> i & 1) sigma.insert(pairs[i]);
      }
      const UGraph g = independence_graph(sigma);
      const CiSet cl = graphoid_closure(sigma).closure;
      // Saturated (X;Y|Z): every variable goes to X, Y or Z.
      int codes = 1;
      for (int i = 0; i < n; ++i) codes *= 3;
      for (int code = 0; code < codes; ++code) {
        VarSet parts[3];
        for (int i = 0, c = code; i < n; ++i, c /= 3) {
          parts[c % 3] |= VarSet::single(i);
        }
        if (parts[0].empty() || parts[1].empty()) continue;
        const CiTriple t = canonicalize(parts[0], parts[1], parts[2]);
        EXPECT_EQ(cl.contains(t), u_separates(g, t.x, t.y, t.z));
      }
    }
  }
}

}  // namespace
}  // namespace ciapprox
