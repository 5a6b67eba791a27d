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

#include <map>
#include <random>

#include "ciapprox/core.hpp"
#include "ciapprox/entropy.hpp"
#include "ciapprox/errors.hpp"
#include "ciapprox/imeasure.hpp"
#include "test_util.hpp"

namespace ciapprox {
namespace {

using testing::CT;
using testing::S;
using testing::T;

TEST(VarSetTest, BasicAlgebra) {
  const VarSet ab = S("AB"), bc = S("BC");
  EXPECT_EQ(ab | bc, S("ABC"));
  EXPECT_EQ(ab & bc, S("B"));
  EXPECT_EQ(ab - bc, S("A"));
  EXPECT_EQ(ab.complement(4), S("CD"));
  EXPECT_EQ(S("ABC").size(), 3);
  EXPECT_TRUE(S("A").subset_of(ab));
  EXPECT_FALSE(ab.subset_of(bc));
  EXPECT_EQ(S("BD").lowest(), 1);
  EXPECT_EQ(S("BD").highest(), 3);
  EXPECT_EQ(VarSet().lowest(), -1);
  EXPECT_EQ(S("ACD").elements(), (std::vector<int>{0, 2, 3}));
}

TEST(VarSetTest, LexOrder) {
  EXPECT_TRUE(lex_less(S("A"), S("AB")));
  EXPECT_TRUE(lex_less(S("AB"), S("B")));
  EXPECT_TRUE(lex_less(S("AC"), S("B")));
  EXPECT_FALSE(lex_less(S("B"), S("B")));
  EXPECT_TRUE(lex_less(VarSet(), S("A")));
}

TEST(VarSetTest, SubsetEnumerationVisitsEverySubsetOnce) {
  std::set<VarSet::Bits> seen;
  for_each_subset(S("ACD"), [&](VarSet s) { seen.insert(s.bits()); });
  EXPECT_EQ(seen.size(), 8u);
  for (auto b : seen) EXPECT_TRUE(VarSet(b).subset_of(S("ACD")));
}

TEST(CanonicalizeTest, RemovesConditioningVariables) {
  EXPECT_EQ(canonicalize(S("AB"), S("C"), S("B")), T("A", "C", "B"));
}

TEST(CanonicalizeTest, OrdersSidesLexicographically) {
  EXPECT_EQ(canonicalize(S("C"), S("A"), VarSet()), T("A", "C"));
}

TEST(CanonicalizeTest, KeepsConditionals) {
  const CiTriple t = canonicalize(S("B"), S("B"), S("A"));
  EXPECT_EQ(t, T("B", "B", "A"));
  EXPECT_TRUE(t.conditional());
  EXPECT_FALSE(t.trivial());
}

TEST(CanonicalizeTest, FlagsTrivialTriples) {
  const CiTriple t = canonicalize(S("A"), S("BC"), S("A"));
  EXPECT_TRUE(t.trivial());
  EXPECT_TRUE(t.x.empty());
  EXPECT_EQ(t.y, S("BC"));
}

TEST(ClassifyTest, Flags) {
  EXPECT_TRUE(classify(T("A", "B", "C"), 3).saturated);
  EXPECT_FALSE(classify(T("A", "B", "C"), 3).marginal);
  EXPECT_TRUE(classify(T("A", "B"), 3).marginal);
  EXPECT_FALSE(classify(T("A", "B"), 3).saturated);
  const TripleClass c = classify(T("B", "B", "A"), 2);
  EXPECT_TRUE(c.conditional);
  EXPECT_TRUE(c.saturated);
  EXPECT_TRUE(classify(T("A", "B", "C"), 4).general());
}

TEST(CiSetTest, DeduplicatesCanonicalForms) {
  CiSet s(3);
  EXPECT_TRUE(s.insert(T("A", "B")));
  EXPECT_FALSE(s.insert(T("B", "A")));
  EXPECT_FALSE(s.insert(T("A", "BC", "A")));  // trivial
  EXPECT_EQ(s.size(), 1u);
  EXPECT_TRUE(s.contains(T("B", "A")));
  EXPECT_THROW(s.insert(T("A", "D")), DomainError);
}

TEST(CiSetTest, EqualityIgnoresOrder) {
  CiSet a(3, {T("A", "B"), T("A", "C", "B")});
  CiSet b(3, {T("A", "C", "B"), T("B", "A")});
  EXPECT_EQ(a, b);
}

TEST(FormatTest, Triples) {
  const VarNames names = {"A", "B", "C"};
  EXPECT_EQ(format_triple(T("A", "BC"), names), "I(A;BC)");
  EXPECT_EQ(format_triple(T("A", "B", "C"), names), "I(A;B|C)");
  EXPECT_EQ(format_triple(T("A", "B", "C"), default_names(3)),
            "I(X1;X2|X3)");
}

TEST(ParseRationalTest, Forms) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-1/2"), Rational(-1, 2));
  EXPECT_EQ(to_string(Rational(3, 2)), "3/2");
  EXPECT_EQ(to_string(make_rational(4, 2)), "2");
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational("x"), DomainError);
  EXPECT_THROW(parse_rational(""), DomainError);
}

// Two independent fair bits.
FloatEntropy independent_bits() {
  return FloatEntropy::from_map(2, {{S("A"), 1.0}, {S("B"), 1.0},
                                    {S("AB"), 2.0}});
}

TEST(EvalMiTest, IndependentBits) {
  EXPECT_DOUBLE_EQ(eval_mi(independent_bits(), T("A", "B")), 0.0);
}

TEST(EvalMiTest, SharedBit) {
  const auto h = FloatEntropy::from_map(
      2, {{S("A"), 1.0}, {S("B"), 1.0}, {S("AB"), 1.0}});
  EXPECT_DOUBLE_EQ(eval_mi(h, T("A", "B")), 1.0);
}

// a = b + c mod 2 with b, c fair: every single has entropy 1, every larger
// set 2.
ExactEntropy parity3() {
  std::map<VarSet, Rational> m;
  for (VarSet::Bits s = 1; s < 8; ++s) {
    m[VarSet(s)] = VarSet(s).size() == 1 ? 1 : 2;
  }
  return ExactEntropy::from_map(3, m);
}

TEST(EvalMiTest, ParityConditional) {
  EXPECT_EQ(eval_mi(parity3(), T("A", "B", "C")), Rational(1));
}

TEST(EvalSumTest, Examples) {
  EXPECT_EQ(eval_sum(parity3(), CiSet(3)), Rational(0));
  CiSet dup(2, {T("A", "B"), T("A", "B")});
  EXPECT_EQ(dup.size(), 1u);
  EXPECT_DOUBLE_EQ(eval_sum(independent_bits(), dup), 0.0);
  CiSet s(3, {T("A", "B", "C"), T("A", "C", "B")});
  EXPECT_EQ(eval_sum(parity3(), s), Rational(2));
}

TEST(EntropyVectorTest, MissingSubsetIsNamed) {
  try {
    FloatEntropy::from_map(2, {{S("A"), 1.0}, {S("B"), 1.0}}, {"A", "B"});
    FAIL() << "expected MissingSubset";
  } catch (const MissingSubset& e) {
    EXPECT_EQ(e.subset(), "AB");
  }
  const FloatEntropy h = independent_bits();
  EXPECT_THROW(h(S("C")), MissingSubset);
}

TEST(EntropyVectorTest, RejectsNonzeroEmptySet) {
  FloatEntropy::Values v(4);
  v << 1, 1, 1, 2;
  EXPECT_THROW(FloatEntropy(2, v), DomainError);
}

TEST(EntropyVectorTest, PolymatroidCheck) {
  EXPECT_TRUE(mark_polymatroid(parity3()).polymatroid_checked());
  EXPECT_FALSE(parity3().polymatroid_checked());
  const auto bad = FloatEntropy::from_map(
      2, {{S("A"), 1.0}, {S("B"), 1.0}, {S("AB"), 3.0}});
  EXPECT_THROW(mark_polymatroid(bad), DomainError);
  const auto nonmono = FloatEntropy::from_map(
      2, {{S("A"), 2.0}, {S("B"), 1.0}, {S("AB"), 1.5}});
  EXPECT_TRUE(polymatroid_violation(nonmono).has_value());
}

// Random positive polymatroids, the source for the property tests below.
std::vector<ExactEntropy> random_polymatroids(int n, int count,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ExactEntropy> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(testing::entropy_from_atoms(
        n, testing::random_atom_weights(n, rng, 0.3)));
  }
  return out;
}

// Also polymatroids that are not positive: entropy vectors of random
// distributions on four binary variables.
std::vector<FloatEntropy> random_entropic(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<FloatEntropy> out;
  for (int k = 0; k < count; ++k) {
    std::vector<double> p(16);
    double total = 0;
    for (auto& x : p) total += x = u(rng) * u(rng);
    FloatEntropy::Values v(16);
    for (VarSet::Bits s = 0; s < 16; ++s) {
      std::map<unsigned, double> marg;
      for (unsigned i = 0; i < 16; ++i) marg[i & s] += p[i] / total;
      double h = 0;
      for (auto& [_, q] : marg) h -= q > 0 ? q * std::log2(q) : 0;
      v(s) = h;
    }
    v(0) = 0;
    out.push_back(mark_polymatroid(FloatEntropy(4, v)));
  }
  return out;
}

TEST(CorePropertyTest, ChainRule) {
  const auto hs = random_polymatroids(4, 40, 1);
  const auto fs = random_entropic(40, 2);
  // Every assignment of the four variables to B, C, D, A (or none).
  for (int code = 0; code < 625; ++code) {
    VarSet parts[5];
    int c = code;
    for (int i = 0; i < 4; ++i, c /= 5) parts[c % 5] |= VarSet::single(i);
    const VarSet b = parts[0], cc = parts[1], d = parts[2], a = parts[3];
    if (b.empty() || cc.empty() || d.empty()) continue;
    for (const auto& h : hs) {
      EXPECT_EQ(eval_mi(h, {b, cc | d, a}),
                eval_mi(h, {b, cc, a}) + eval_mi(h, {b, d, a | cc}));
    }
    for (const auto& h : fs) {
      EXPECT_NEAR(eval_mi(h, {b, cc | d, a}),
                  eval_mi(h, {b, cc, a}) + eval_mi(h, {b, d, a | cc}), 1e-9);
    }
  }
}

// All canonical triples (including conditionals) over n variables.
std::vector<CiTriple> all_triples(int n) {
  std::set<CiTriple> out;
  const VarSet::Bits full = (1u << n);
  for (VarSet::Bits x = 1; x < full; ++x) {
    for (VarSet::Bits y = 1; y < full; ++y) {
      for (VarSet::Bits z = 0; z < full; ++z) {
        const CiTriple t = canonicalize(VarSet(x), VarSet(y), VarSet(z));
        if (!t.trivial()) out.insert(t);
      }
    }
  }
  return {out.begin(), out.end()};
}

TEST(CorePropertyTest, Nonnegativity) {
  const auto hs = random_polymatroids(4, 20, 3);
  const auto fs = random_entropic(20, 4);
  for (const auto& t : all_triples(4)) {
    for (const auto& h : hs) EXPECT_GE(eval_mi(h, t), 0);
    for (const auto& h : fs) EXPECT_GE(eval_mi(h, t), -1e-9);
  }
}

TEST(CorePropertyTest, CanonicalizeIdempotentAndValuePreserving) {
  const auto hs = random_polymatroids(4, 10, 5);
  const VarSet::Bits full = 16;
  for (VarSet::Bits x = 0; x < full; ++x) {
    for (VarSet::Bits y = 0; y < full; ++y) {
      for (VarSet::Bits z = 0; z < full; z += 3) {
        const CiTriple raw{VarSet(x), VarSet(y), VarSet(z)};
        const CiTriple c = canonicalize(raw);
        EXPECT_EQ(canonicalize(c), c);
        EXPECT_FALSE(lex_less(c.y, c.x));
        for (const auto& h : hs) EXPECT_EQ(eval_mi(h, raw), eval_mi(h, c));
      }
    }
  }
}

// Lemma: A ⊆ X, B ⊆ Y, Z ⊆ C ⊆ XYZ gives I(A;B|C) <= I(X;Y|Z).
TEST(CorePropertyTest, ChainRuleMonotonicity) {
  const auto hs = random_polymatroids(4, 10, 6);
  const auto fs = random_entropic(10, 7);
  int checked = 0;
  for (const auto& big : all_triples(4)) {
    if (!big.disjoint()) continue;
    const VarSet xyz = big.vars();
    for_each_subset(big.x, [&](VarSet a) {
      for_each_subset(big.y, [&](VarSet b) {
        if (a.empty() || b.empty()) return;
        for_each_subset(xyz - big.z, [&](VarSet extra) {
          const VarSet c = big.z | extra;
          if (a.intersects(c) || b.intersects(c)) return;
          const CiTriple small{a, b, c};
          ++checked;
          for (const auto& h : hs) EXPECT_LE(eval_mi(h, small), eval_mi(h, big));
          for (const auto& h : fs) {
            EXPECT_LE(eval_mi(h, small), eval_mi(h, big) + 1e-9);
          }
        });
      });
    });
  }
  EXPECT_GT(checked, 100);
}

}  // namespace
}  // namespace ciapprox
