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

#ifndef CIAPPROX_SHANNON_HPP_
#define CIAPPROX_SHANNON_HPP_

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ciapprox/core.hpp"
#include "ciapprox/entropy.hpp"
#include "ciapprox/rational.hpp"

namespace ciapprox {

// Largest n accepted by the LP operations: CIAPPROX_LP_CAP when set to an
// integer in [2, kMaxSetVars], kDefaultLpCap otherwise.
int default_lp_cap();

struct LpOptions {
  int cap = default_lp_cap();
};

// A rational linear form over h(S), S nonempty. Stored densely with the
// coefficient of h(S) at position S - 1.
class LinearFunctional {
 public:
  using Coeffs = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

  explicit LinearFunctional(int n = 0);

  // h(ZX) + h(ZY) - h(ZXY) - h(Z).
  static LinearFunctional of_triple(const CiTriple& t, int n);
  // Sum over the members of s.
  static LinearFunctional of_set(const CiSet& s);

  int ambient() const { return n_; }
  const Coeffs& coeffs() const { return coeffs_; }
  Rational coeff(VarSet s) const;
  void add(VarSet s, const Rational& c);
  // Nonzero coefficients keyed by subset.
  std::map<VarSet, Rational> terms() const;
  bool is_zero() const;

  template <typename Scalar>
  Scalar operator()(const EntropyVector<Scalar>& h) const;

  LinearFunctional& operator+=(const LinearFunctional& o);
  LinearFunctional& operator-=(const LinearFunctional& o);
  LinearFunctional& operator*=(const Rational& c);
  friend LinearFunctional operator+(LinearFunctional a,
                                    const LinearFunctional& b) {
    return a += b;
  }
  friend LinearFunctional operator-(LinearFunctional a,
                                    const LinearFunctional& b) {
    return a -= b;
  }
  friend LinearFunctional operator*(const Rational& c, LinearFunctional a) {
    return a *= c;
  }
  friend bool operator==(const LinearFunctional& a,
                         const LinearFunctional& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_compatible(const LinearFunctional& o) const;

  int n_;
  Coeffs coeffs_;
};

template <typename Scalar>
Scalar LinearFunctional::operator()(const EntropyVector<Scalar>& h) const {
  if (h.ambient() != n_) {
    throw DomainError("functional and entropy vector differ in size");
  }
  Scalar total(0);
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_(i)) == 0) continue;
    if constexpr (std::is_floating_point_v<Scalar>) {
      total += coeffs_(i).get_d() * h.values()(i + 1);
    } else {
      total += coeffs_(i) * h.values()(i + 1);
    }
  }
  return total;
}

// Monotonicity h(Omega) - h(Omega - i), written (i;i|Omega - i), for each i,
// then I(i;j|K) for i < j and K ⊆ Omega - ij in increasing bitmask order.
struct ElementalBasis {
  int n = 0;
  std::vector<CiTriple> triples;
  std::vector<LinearFunctional> inequalities;

  std::size_t size() const { return triples.size(); }
};

// Cached and shared across threads. Throws DomainError unless
// 2 <= n <= default_lp_cap().
const ElementalBasis& elemental_basis(int n);

// A nonnegative combination of elemental inequalities equal to
// lambda * f_sigma - f_tau.
struct LpCertificate {
  int n = 0;
  CiSet sigma;
  CiTriple tau;
  Rational lambda;
  // One entry per member of elemental_basis(n).
  std::vector<Rational> multipliers;

  // Recomputes the identity with functional arithmetic.
  bool verify() const;
  // One "coef * I(i;j|K)" line per nonzero multiplier, then "lambda = p/q".
  std::string format(const VarNames& names) const;
};

struct ShannonImplication {
  bool holds = false;
  // Set when !holds: a polymatroid with h(sigma) = 0 < h(tau) and
  // h(Omega) <= 1.
  std::optional<ExactEntropy> counterexample;
};

// Exact implication over all polymatroids.
ShannonImplication shannon_ei(const CiSet& s, const CiTriple& t,
                              const LpOptions& options = {});

struct LambdaCheck {
  bool certified = false;
  std::optional<LpCertificate> certificate;
  // Set when !certified: a polymatroid with lambda * h(sigma) < h(tau).
  std::optional<ExactEntropy> refutation;
};

LambdaCheck check_lambda(const CiSet& s, const CiTriple& t,
                         const Rational& lambda,
                         const LpOptions& options = {});

struct MinLambda {
  bool bounded = false;
  // Set when bounded.
  std::optional<Rational> value;
  std::optional<LpCertificate> certificate;
};

// Smallest lambda with lambda * h(sigma) >= h(tau) on every polymatroid.
MinLambda min_lambda(const CiSet& s, const CiTriple& t,
                     const LpOptions& options = {});

enum class BoundKind { kSaturated, kRecursive, kMarginal };
std::string bound_kind_name(BoundKind kind);
// Accepts "saturated", "recursive" and "marginal". Throws DomainError.
BoundKind parse_bound_kind(const std::string& text);

struct BoundReport {
  BoundKind kind = BoundKind::kSaturated;
  // The implication premise that was validated before solving.
  std::string premise;
  bool shannon_implied = false;
  MinLambda lambda;
  // min{|A|,|B|} for saturated and marginal sets, 1 for recursive bases.
  Rational bound;
  // lambda unbounded or above the bound.
  bool violation = false;
};

// Checks that s has the shape of `kind` and that positive_implies(s, t)
// holds, then compares min_lambda against the bound. Throws DomainError when
// either check fails.
BoundReport verify_theorem_bound(const CiSet& s, const CiTriple& t,
                                 BoundKind kind,
                                 const LpOptions& options = {});

// Replaces each conditional (Y;Y|X) by (Y;Omega-XY|X) and (Y;Y|Omega-Y).
// Members must be saturated or conditional; throws DomainError otherwise.
CiSet saturate_conditionals(const CiSet& s, int n);

// An order under which s is the recursive basis of a DAG, if one exists.
std::optional<std::vector<int>> recursive_order(const CiSet& s);

}  // namespace ciapprox

#endif  // CIAPPROX_SHANNON_HPP_
