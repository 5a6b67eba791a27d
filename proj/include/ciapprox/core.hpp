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

#ifndef CIAPPROX_CORE_HPP_
#define CIAPPROX_CORE_HPP_

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <unordered_set>
#include <vector>

namespace ciapprox {

// Size caps. Set and atom operations are exponential in the number of
// variables; explicit distributions are exponential in the state count.
inline constexpr int kMaxSetVars = 16;
inline constexpr int kMaxDistributionVars = 20;
inline constexpr int kDefaultLpCap = 10;

// A subset of the ground set {0, ..., n-1}. The ambient size n is carried by
// the surrounding context (CiSet, EntropyVector, graphs).
class VarSet {
 public:
  using Bits = std::uint32_t;

  constexpr VarSet() = default;
  constexpr explicit VarSet(Bits bits) : bits_(bits) {}

  static constexpr VarSet single(int i) { return VarSet(Bits{1} << i); }
  static constexpr VarSet full(int n) {
    return VarSet(n >= 32 ? ~Bits{0} : (Bits{1} << n) - 1);
  }
  static constexpr VarSet of(std::initializer_list<int> elements) {
    Bits bits = 0;
    for (int i : elements) bits |= Bits{1} << i;
    return VarSet(bits);
  }

  constexpr Bits bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr bool subset_of(VarSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(VarSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  constexpr bool within(int n) const { return subset_of(full(n)); }
  constexpr VarSet complement(int n) const {
    return VarSet(~bits_ & full(n).bits_);
  }
  // Lowest element, or -1 when empty.
  constexpr int lowest() const {
    return bits_ == 0 ? -1 : std::countr_zero(bits_);
  }
  // Highest element, or -1 when empty.
  constexpr int highest() const {
    return bits_ == 0 ? -1 : 31 - std::countl_zero(bits_);
  }

  std::vector<int> elements() const;

  friend constexpr VarSet operator|(VarSet a, VarSet b) {
    return VarSet(a.bits_ | b.bits_);
  }
  friend constexpr VarSet operator&(VarSet a, VarSet b) {
    return VarSet(a.bits_ & b.bits_);
  }
  friend constexpr VarSet operator-(VarSet a, VarSet b) {
    return VarSet(a.bits_ & ~b.bits_);
  }
  constexpr VarSet& operator|=(VarSet o) { bits_ |= o.bits_; return *this; }
  constexpr VarSet& operator&=(VarSet o) { bits_ &= o.bits_; return *this; }
  constexpr VarSet& operator-=(VarSet o) { bits_ &= ~o.bits_; return *this; }

  friend constexpr bool operator==(VarSet, VarSet) = default;
  // Numeric order on the bitmask; used for containers, not for symmetry.
  friend constexpr auto operator<=>(VarSet a, VarSet b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  Bits bits_ = 0;
};

// Lexicographic order on the sorted element sequences: {0} < {0,1} < {1}.
bool lex_less(VarSet a, VarSet b);

// Calls f(s) for every subset s of `set`, including the empty set and `set`
// itself.
template <typename F>
void for_each_subset(VarSet set, F&& f) {
  const VarSet::Bits full = set.bits();
  VarSet::Bits sub = 0;
  while (true) {
    f(VarSet(sub));
    if (sub == full) break;
    sub = (sub - full) & full;
  }
}

// A statement (X;Y|Z). Values produced by canonicalize() satisfy:
//   x and y are disjoint from z,
//   lex_less(y, x) is false (symmetry),
//   a trivial triple has x empty and holds the other side in y.
// x and y may overlap; x == y encodes the conditional h(X|Z).
struct CiTriple {
  VarSet x;
  VarSet y;
  VarSet z;

  bool trivial() const { return x.empty() || y.empty(); }
  bool conditional() const { return !trivial() && x == y; }
  bool disjoint() const {
    return !x.intersects(y) && !x.intersects(z) && !y.intersects(z);
  }
  VarSet vars() const { return x | y | z; }

  friend bool operator==(const CiTriple&, const CiTriple&) = default;
  friend auto operator<=>(const CiTriple& a, const CiTriple& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.z <=> b.z;
  }
};

CiTriple canonicalize(VarSet x, VarSet y, VarSet z);
inline CiTriple canonicalize(const CiTriple& t) {
  return canonicalize(t.x, t.y, t.z);
}

struct TripleClass {
  bool saturated = false;
  bool marginal = false;
  bool conditional = false;
  bool general() const { return !saturated && !marginal && !conditional; }
};

// Flags for a canonical triple over n variables; several may hold at once.
TripleClass classify(const CiTriple& t, int n);

}  // namespace ciapprox

template <>
struct std::hash<ciapprox::CiTriple> {
  std::size_t operator()(const ciapprox::CiTriple& t) const noexcept {
    std::uint64_t key = (std::uint64_t{t.x.bits()} * 0x9E3779B97F4A7C15ull) ^
                        (std::uint64_t{t.y.bits()} << 21) ^
                        (std::uint64_t{t.z.bits()} << 42) ^ t.z.bits();
    return std::hash<std::uint64_t>{}(key);
  }
};

namespace ciapprox {

// A set of canonical, non-trivial triples over a ground set of size n, kept
// in insertion order.
class CiSet {
 public:
  explicit CiSet(int n = 0) : n_(n) {}
  CiSet(int n, std::initializer_list<CiTriple> triples);

  int ambient() const { return n_; }
  // Canonicalizes t and appends it. Trivial triples and duplicates are
  // ignored; returns whether t was added. Throws DomainError when t
  // mentions a variable outside the ambient size.
  bool insert(const CiTriple& t);
  bool contains(const CiTriple& t) const;

  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const CiTriple& operator[](std::size_t i) const { return triples_[i]; }
  auto begin() const { return triples_.begin(); }
  auto end() const { return triples_.end(); }
  const std::vector<CiTriple>& triples() const { return triples_; }
  VarSet vars() const;

  // Set equality; insertion order is ignored.
  friend bool operator==(const CiSet& a, const CiSet& b) {
    return a.n_ == b.n_ && a.index_ == b.index_;
  }

 private:
  int n_;
  std::vector<CiTriple> triples_;
  std::unordered_set<CiTriple> index_;
};

// Variable names used when formatting. Defaults to X1..Xn.
using VarNames = std::vector<std::string>;
VarNames default_names(int n);

// Concatenated names in index order; "" for the empty set.
std::string format_set(VarSet s, const VarNames& names);
// "I(X;Y|Z)", or "I(X;Y)" when z is empty.
std::string format_triple(const CiTriple& t, const VarNames& names);

}  // namespace ciapprox

#endif  // CIAPPROX_CORE_HPP_
