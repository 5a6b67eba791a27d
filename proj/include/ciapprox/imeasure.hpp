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

#ifndef CIAPPROX_IMEASURE_HPP_
#define CIAPPROX_IMEASURE_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "ciapprox/core.hpp"
#include "ciapprox/entropy.hpp"
#include "ciapprox/rational.hpp"

namespace ciapprox {

// A set of atoms of the field generated by m(X_1), ..., m(X_n). The atom
// with positive part S (a nonempty subset of the ground set) lives at
// position S - 1, so there are 2^n - 1 positions.
class AtomSet {
 public:
  explicit AtomSet(int n = 0);

  int ambient() const { return n_; }
  std::size_t capacity() const { return (std::size_t{1} << n_) - 1; }

  void insert(VarSet atom);
  bool contains(VarSet atom) const;
  std::size_t count() const;
  bool empty() const;
  bool subset_of(const AtomSet& other) const;
  // Lowest-index atom of *this that is missing from `other`.
  std::optional<VarSet> first_not_in(const AtomSet& other) const;
  std::vector<VarSet> atoms() const;

  AtomSet& operator|=(const AtomSet& other);
  friend AtomSet operator|(AtomSet a, const AtomSet& b) { return a |= b; }
  AtomSet& operator&=(const AtomSet& other);
  friend AtomSet operator&(AtomSet a, const AtomSet& b) { return a &= b; }
  friend bool operator==(const AtomSet&, const AtomSet&) = default;

 private:
  int n_;
  std::vector<std::uint64_t> words_;
};

// m(X) ∩ m(Y) ∩ m^c(Z): the atoms meeting both x and y and avoiding z.
AtomSet atoms_of(const CiTriple& t, int n);
// Union of atoms_of over the members of s.
AtomSet atoms_of_set(const CiSet& s);

// A nonnegative weight on every nonempty atom.
class PositiveImeasure {
 public:
  using Weights = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

  explicit PositiveImeasure(int n);
  PositiveImeasure(int n, Weights weights);

  // Weight 1 on `atom`, 0 elsewhere.
  static PositiveImeasure unit(int n, VarSet atom);

  int ambient() const { return n_; }
  const Rational& weight(VarSet atom) const;
  void set_weight(VarSet atom, Rational w);
  const Weights& weights() const { return weights_; }

 private:
  int n_;
  Weights weights_;
};

struct PositiveImplication {
  bool implied = false;
  // Set when not implied: the lowest uncovered atom of m(tau) and the
  // unit measure on it.
  std::optional<VarSet> witness_atom;
  std::optional<PositiveImeasure> witness;
};

// Decides implication over positive polymatroids by atom containment
// m(tau) ⊆ m(Sigma).
PositiveImplication positive_implies(const CiSet& s, const CiTriple& t);

// h(alpha) = sum of weights of atoms meeting alpha. The result is an exact,
// polymatroid-checked vector.
ExactEntropy measure_to_entropy(const PositiveImeasure& m);

// Drops antecedents whose atoms are disjoint from m(tau). Requires
// positive_implies(s, t); throws DomainError otherwise.
CiSet prune_antecedents(const CiSet& s, const CiTriple& t);

}  // namespace ciapprox

#endif  // CIAPPROX_IMEASURE_HPP_
