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

#ifndef CIAPPROX_ENTROPY_HPP_
#define CIAPPROX_ENTROPY_HPP_

#include <Eigen/Core>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <type_traits>

#include "ciapprox/core.hpp"
#include "ciapprox/errors.hpp"
#include "ciapprox/rational.hpp"

namespace ciapprox {

// Comparison slack for polymatroid checks: 1e-9 for floating point, exact
// for rationals.
template <typename Scalar>
Scalar default_tolerance() {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return Scalar(1e-9);
  } else {
    return Scalar(0);
  }
}

// A set function h : 2^[n] -> Scalar stored densely, indexed by the subset
// bitmask. h(empty) is always 0. Float-backed vectors come from
// distributions; rational-backed vectors come from LP vertices and positive
// I-measures. There is deliberately no conversion from float to rational.
template <typename Scalar>
class EntropyVector {
 public:
  using Values = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  EntropyVector() = default;

  // `values` must have 2^n entries with values[0] == 0.
  EntropyVector(int n, Values values) : n_(n), values_(std::move(values)) {
    if (n < 0 || n > kMaxSetVars) {
      throw CapExceeded("entropy vectors support at most " +
                        std::to_string(kMaxSetVars) + " variables");
    }
    if (values_.size() != (Eigen::Index{1} << n)) {
      throw DomainError("entropy vector over " + std::to_string(n) +
                        " variables needs " + std::to_string(1 << n) +
                        " values");
    }
    if (values_(0) != Scalar(0)) {
      throw DomainError("entropy of the empty set must be 0");
    }
  }

  static EntropyVector zero(int n) {
    return EntropyVector(n, Values::Zero(Eigen::Index{1} << n));
  }

  // Builds a vector from explicit values; every nonempty subset must be
  // present. The empty set may be omitted.
  static EntropyVector from_map(int n, const std::map<VarSet, Scalar>& m,
                                const VarNames& names = {}) {
    if (n < 0 || n > kMaxSetVars) {
      throw CapExceeded("entropy vectors support at most " +
                        std::to_string(kMaxSetVars) + " variables");
    }
    Values v = Values::Zero(Eigen::Index{1} << n);
    for (VarSet::Bits s = 1; s < (VarSet::Bits{1} << n); ++s) {
      auto it = m.find(VarSet(s));
      if (it == m.end()) {
        const std::string label = format_set(
            VarSet(s), names.empty() ? default_names(n) : names);
        throw MissingSubset(label, "entropy vector has no value for h(" +
                                       label + ")");
      }
      v(s) = it->second;
    }
    return EntropyVector(n, std::move(v));
  }

  int ambient() const { return n_; }
  const Values& values() const { return values_; }

  const Scalar& operator()(VarSet s) const {
    if (!s.within(n_)) {
      const std::string label = format_set(s, default_names(s.highest() + 1));
      throw MissingSubset(label, "entropy vector over " + std::to_string(n_) +
                                     " variables has no value for h(" +
                                     label + ")");
    }
    return values_(s.bits());
  }

  // Set only by mark_polymatroid().
  bool polymatroid_checked() const { return checked_; }

 private:
  template <typename S>
  friend EntropyVector<S> mark_polymatroid(EntropyVector<S> h);

  int n_ = 0;
  Values values_;
  bool checked_ = false;
};

using FloatEntropy = EntropyVector<double>;
using ExactEntropy = EntropyVector<Rational>;

// h(ZX) + h(ZY) - h(ZXY) - h(Z). For x == y this is the conditional entropy
// h(X|Z).
template <typename Scalar>
Scalar eval_mi(const EntropyVector<Scalar>& h, const CiTriple& t) {
  const VarSet z = t.z;
  const VarSet zx = z | t.x;
  const VarSet zy = z | t.y;
  const VarSet zxy = zx | t.y;
  Scalar r = h(zx);
  r += h(zy);
  r -= h(zxy);
  r -= h(z);
  return r;
}

template <typename Scalar>
Scalar eval_sum(const EntropyVector<Scalar>& h, const CiSet& s) {
  Scalar total(0);
  for (const auto& t : s) total += eval_mi(h, t);
  return total;
}

// Describes the first violated elemental Shannon inequality, or nullopt when
// h is a polymatroid within `tol`. Monotonicity h(Omega) >= h(Omega - i) and
// elemental submodularity I(i;j|K) >= 0 generate all Shannon inequalities.
template <typename Scalar>
std::optional<std::string> polymatroid_violation(
    const EntropyVector<Scalar>& h,
    const Scalar& tol = default_tolerance<Scalar>()) {
  const int n = h.ambient();
  const VarSet all = VarSet::full(n);
  const VarNames names = default_names(n);
  for (int i = 0; i < n; ++i) {
    const CiTriple t{VarSet::single(i), VarSet::single(i),
                     all - VarSet::single(i)};
    if (eval_mi(h, t) < -tol) return "monotonicity fails: " +
                                     format_triple(t, names) + " < 0";
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const VarSet rest = all - VarSet::single(i) - VarSet::single(j);
      bool bad = false;
      CiTriple witness;
      for_each_subset(rest, [&](VarSet k) {
        if (bad) return;
        const CiTriple t{VarSet::single(i), VarSet::single(j), k};
        if (eval_mi(h, t) < -tol) {
          bad = true;
          witness = t;
        }
      });
      if (bad) {
        return "submodularity fails: " + format_triple(witness, names) +
               " < 0";
      }
    }
  }
  return std::nullopt;
}

// Returns h tagged as polymatroid-checked. Throws DomainError naming the
// violated inequality otherwise.
template <typename Scalar>
EntropyVector<Scalar> mark_polymatroid(EntropyVector<Scalar> h) {
  if (auto v = polymatroid_violation(h)) {
    throw DomainError("not a polymatroid: " + *v);
  }
  h.checked_ = true;
  return h;
}

}  // namespace ciapprox

#endif  // CIAPPROX_ENTROPY_HPP_
