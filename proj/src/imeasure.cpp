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

#include "ciapprox/imeasure.hpp"

#include <bit>

#include "ciapprox/errors.hpp"

namespace ciapprox {
namespace {

void check_atom_cap(int n) {
  if (n < 0 || n > kMaxSetVars) {
    throw CapExceeded("atom sets support at most " +
                      std::to_string(kMaxSetVars) + " variables");
  }
}

}  // namespace

AtomSet::AtomSet(int n) : n_(n) {
  check_atom_cap(n);
  words_.assign((capacity() + 63) / 64, 0);
}

void AtomSet::insert(VarSet atom) {
  const std::size_t pos = atom.bits() - 1;
  words_[pos / 64] |= std::uint64_t{1} << (pos % 64);
}

bool AtomSet::contains(VarSet atom) const {
  if (atom.empty() || !atom.within(n_)) return false;
  const std::size_t pos = atom.bits() - 1;
  return (words_[pos / 64] >> (pos % 64)) & 1u;
}

std::size_t AtomSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool AtomSet::empty() const { return count() == 0; }

bool AtomSet::subset_of(const AtomSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

std::optional<VarSet> AtomSet::first_not_in(const AtomSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint64_t missing = words_[i] & ~other.words_[i];
    if (missing) {
      const std::size_t pos = i * 64 + std::countr_zero(missing);
      return VarSet(static_cast<VarSet::Bits>(pos + 1));
    }
  }
  return std::nullopt;
}

std::vector<VarSet> AtomSet::atoms() const {
  std::vector<VarSet> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (std::uint64_t w = words_[i]; w != 0; w &= w - 1) {
      out.emplace_back(static_cast<VarSet::Bits>(i * 64 + std::countr_zero(w) + 1));
    }
  }
  return out;
}

AtomSet& AtomSet::operator|=(const AtomSet& other) {
  if (other.n_ != n_) throw DomainError("atom sets over different ground sets");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

AtomSet& AtomSet::operator&=(const AtomSet& other) {
  if (other.n_ != n_) throw DomainError("atom sets over different ground sets");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

AtomSet atoms_of(const CiTriple& t, int n) {
  AtomSet out(n);
  if (t.trivial()) return out;
  if (!t.vars().within(n)) {
    throw DomainError("triple mentions a variable outside the ambient size");
  }
  // Atoms avoiding z are the subsets of its complement.
  const VarSet free = VarSet::full(n) - t.z;
  for_each_subset(free, [&](VarSet s) {
    if (s.intersects(t.x) && s.intersects(t.y)) out.insert(s);
  });
  return out;
}

AtomSet atoms_of_set(const CiSet& s) {
  AtomSet out(s.ambient());
  for (const auto& t : s) out |= atoms_of(t, s.ambient());
  return out;
}

PositiveImeasure::PositiveImeasure(int n)
    : n_(n), weights_(Weights::Zero((Eigen::Index{1} << n) - 1)) {
  check_atom_cap(n);
}

PositiveImeasure::PositiveImeasure(int n, Weights weights)
    : n_(n), weights_(std::move(weights)) {
  check_atom_cap(n);
  if (weights_.size() != (Eigen::Index{1} << n) - 1) {
    throw DomainError("I-measure needs one weight per nonempty atom");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (weights_(i) < 0) throw DomainError("atom weights must be nonnegative");
  }
}

PositiveImeasure PositiveImeasure::unit(int n, VarSet atom) {
  PositiveImeasure m(n);
  m.set_weight(atom, 1);
  return m;
}

const Rational& PositiveImeasure::weight(VarSet atom) const {
  if (atom.empty() || !atom.within(n_)) throw DomainError("not an atom");
  return weights_(atom.bits() - 1);
}

void PositiveImeasure::set_weight(VarSet atom, Rational w) {
  if (atom.empty() || !atom.within(n_)) throw DomainError("not an atom");
  if (w < 0) throw DomainError("atom weights must be nonnegative");
  weights_(atom.bits() - 1) = std::move(w);
}

PositiveImplication positive_implies(const CiSet& s, const CiTriple& t) {
  const int n = s.ambient();
  const AtomSet target = atoms_of(t, n);
  const AtomSet covered = atoms_of_set(s);
  PositiveImplication result;
  if (auto atom = target.first_not_in(covered)) {
    result.witness_atom = atom;
    result.witness = PositiveImeasure::unit(n, *atom);
  } else {
    result.implied = true;
  }
  return result;
}

ExactEntropy measure_to_entropy(const PositiveImeasure& m) {
  const int n = m.ambient();
  const std::size_t size = std::size_t{1} << n;
  // below(T) = total weight of atoms contained in T (zeta transform);
  // h(alpha) = total - below(complement of alpha).
  std::vector<Rational> below(size);
  for (std::size_t s = 1; s < size; ++s) below[s] = m.weights()(s - 1);
  for (int i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t s = 0; s < size; ++s) {
      if (s & bit) below[s] += below[s ^ bit];
    }
  }
  ExactEntropy::Values v(size);
  const Rational& total = below[size - 1];
  for (std::size_t a = 0; a < size; ++a) v(a) = total - below[(size - 1) ^ a];
  return mark_polymatroid(ExactEntropy(n, std::move(v)));
}

CiSet prune_antecedents(const CiSet& s, const CiTriple& t) {
  if (!positive_implies(s, t).implied) {
    throw DomainError("prune_antecedents requires an implied consequent");
  }
  const int n = s.ambient();
  const AtomSet target = atoms_of(t, n);
  CiSet out(n);
  for (const auto& sigma : s) {
    if (!(atoms_of(sigma, n) & target).empty()) out.insert(sigma);
  }
  return out;
}

}  // namespace ciapprox
