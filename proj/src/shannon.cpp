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

#include "ciapprox/shannon.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <sstream>

#include "ciapprox/errors.hpp"
#include "ciapprox/graphsep.hpp"
#include "ciapprox/imeasure.hpp"
#include "ciapprox/simplex.hpp"

namespace ciapprox {
namespace {

using Matrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

Eigen::Index nonempty_count(int n) { return (Eigen::Index{1} << n) - 1; }

ElementalBasis build_basis(int n) {
  ElementalBasis basis;
  basis.n = n;
  const VarSet all = VarSet::full(n);
  for (int i = 0; i < n; ++i) {
    const VarSet vi = VarSet::single(i);
    basis.triples.push_back(CiTriple{vi, vi, all - vi});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const VarSet rest = all - VarSet::of({i, j});
      std::vector<VarSet> ks;
      for_each_subset(rest, [&](VarSet k) { ks.push_back(k); });
      std::sort(ks.begin(), ks.end());
      for (VarSet k : ks) {
        basis.triples.push_back(
            CiTriple{VarSet::single(i), VarSet::single(j), k});
      }
    }
  }
  for (const auto& t : basis.triples) {
    basis.inequalities.push_back(LinearFunctional::of_triple(t, n));
  }
  return basis;
}

const ElementalBasis& cached_basis(int n) {
  static std::mutex mu;
  static std::unique_ptr<ElementalBasis> cache[kMaxSetVars + 1];
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[n]) cache[n] = std::make_unique<ElementalBasis>(build_basis(n));
  return *cache[n];
}

void check_lp_size(int n, const LpOptions& options) {
  if (n < 2) {
    throw DomainError("LP operations need at least 2 variables, got " +
                      std::to_string(n));
  }
  if (n > options.cap || n > kMaxSetVars) {
    throw CapExceeded("LP cap is " + std::to_string(options.cap) +
                      " variables, got " + std::to_string(n));
  }
}

void check_triple(const CiTriple& t, int n) {
  if (!t.vars().within(n)) {
    throw DomainError("triple mentions a variable outside the ground set");
  }
}

// Columns are elemental inequalities (and optionally -f_sigma); rows are
// nonempty subsets.
Matrix multiplier_matrix(const ElementalBasis& basis,
                         const LinearFunctional* sigma) {
  const Eigen::Index rows = nonempty_count(basis.n);
  const Eigen::Index cols =
      static_cast<Eigen::Index>(basis.size()) + (sigma ? 1 : 0);
  Matrix a = Matrix::Zero(rows, cols);
  for (std::size_t e = 0; e < basis.size(); ++e) {
    a.col(e) = basis.inequalities[e].coeffs();
  }
  if (sigma) a.col(cols - 1) = -sigma->coeffs();
  return a;
}

LpCertificate make_certificate(const CiSet& s, const CiTriple& t,
                               const Rational& lambda,
                               const LpSolution<Rational>& sol,
                               std::size_t count) {
  LpCertificate cert;
  cert.n = s.ambient();
  cert.sigma = s;
  cert.tau = t;
  cert.lambda = lambda;
  cert.multipliers.resize(count);
  for (std::size_t e = 0; e < count; ++e) cert.multipliers[e] = sol.x(e);
  if (!cert.verify()) {
    throw Error("internal: LP certificate failed verification");
  }
  return cert;
}

// Maximizes goal(h) over polymatroids with h(Omega) <= 1 and f(h) = 0 for
// each f in `zeros`. Returns the optimal vertex and its value.
std::pair<ExactEntropy, Rational> maximize_over_cone(
    int n, const LinearFunctional& goal,
    const std::vector<LinearFunctional>& zeros) {
  const ElementalBasis& basis = cached_basis(n);
  const Eigen::Index vars = nonempty_count(n);
  const Eigen::Index m = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index k = static_cast<Eigen::Index>(zeros.size());
  const Eigen::Index rows = m + k + 1;
  Matrix a = Matrix::Zero(rows, vars + rows);
  Vector b = Vector::Zero(rows);
  for (Eigen::Index e = 0; e < m; ++e) {
    a.block(e, 0, 1, vars) = -basis.inequalities[e].coeffs().transpose();
  }
  for (Eigen::Index z = 0; z < k; ++z) {
    a.block(m + z, 0, 1, vars) = zeros[z].coeffs().transpose();
  }
  a(rows - 1, vars - 1) = 1;
  b(rows - 1) = 1;
  for (Eigen::Index r = 0; r < rows; ++r) a(r, vars + r) = 1;

  Vector c = Vector::Zero(vars + rows);
  c.head(vars) = -goal.coeffs();
  const LpSolution<Rational> sol = solve_lp(a, b, c);
  if (sol.status != LpStatus::kOptimal) {
    throw Error("internal: bounded polymatroid LP did not reach an optimum");
  }
  ExactEntropy::Values v(vars + 1);
  v(0) = 0;
  for (Eigen::Index i = 0; i < vars; ++i) v(i + 1) = sol.x(i);
  return {mark_polymatroid(ExactEntropy(n, std::move(v))), -sol.objective};
}

}  // namespace

int default_lp_cap() {
  const char* env = std::getenv("CIAPPROX_LP_CAP");
  if (env == nullptr || *env == '\0') return kDefaultLpCap;
  const std::string_view text(env);
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 2 ||
      value > kMaxSetVars) {
    throw DomainError("CIAPPROX_LP_CAP must be an integer in [2, " +
                      std::to_string(kMaxSetVars) + "], got '" +
                      std::string(text) + "'");
  }
  return value;
}

LinearFunctional::LinearFunctional(int n) : n_(n) {
  if (n < 0 || n > kMaxSetVars) {
    throw CapExceeded("functionals support at most " +
                      std::to_string(kMaxSetVars) + " variables");
  }
  coeffs_ = Coeffs::Zero(nonempty_count(n));
}

LinearFunctional LinearFunctional::of_triple(const CiTriple& t, int n) {
  check_triple(t, n);
  LinearFunctional f(n);
  f.add(t.z | t.x, 1);
  f.add(t.z | t.y, 1);
  f.add(t.z | t.x | t.y, -1);
  f.add(t.z, -1);
  return f;
}

LinearFunctional LinearFunctional::of_set(const CiSet& s) {
  LinearFunctional f(s.ambient());
  for (const auto& t : s) f += of_triple(t, s.ambient());
  return f;
}

Rational LinearFunctional::coeff(VarSet s) const {
  if (s.empty()) return 0;
  if (!s.within(n_)) throw DomainError("subset outside the ground set");
  return coeffs_(s.bits() - 1);
}

void LinearFunctional::add(VarSet s, const Rational& c) {
  if (s.empty()) return;
  if (!s.within(n_)) throw DomainError("subset outside the ground set");
  coeffs_(s.bits() - 1) += c;
}

std::map<VarSet, Rational> LinearFunctional::terms() const {
  std::map<VarSet, Rational> out;
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_(i)) != 0) {
      out.emplace(VarSet(static_cast<VarSet::Bits>(i + 1)), coeffs_(i));
    }
  }
  return out;
}

bool LinearFunctional::is_zero() const {
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_(i)) != 0) return false;
  }
  return true;
}

void LinearFunctional::check_compatible(const LinearFunctional& o) const {
  if (o.n_ != n_) throw DomainError("functionals differ in ground set size");
}

LinearFunctional& LinearFunctional::operator+=(const LinearFunctional& o) {
  check_compatible(o);
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) coeffs_(i) += o.coeffs_(i);
  return *this;
}

LinearFunctional& LinearFunctional::operator-=(const LinearFunctional& o) {
  check_compatible(o);
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) coeffs_(i) -= o.coeffs_(i);
  return *this;
}

LinearFunctional& LinearFunctional::operator*=(const Rational& c) {
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) coeffs_(i) *= c;
  return *this;
}

const ElementalBasis& elemental_basis(int n) {
  const int cap = default_lp_cap();
  if (n < 2 || n > cap) {
    throw DomainError("elemental basis needs 2 <= n <= " +
                      std::to_string(cap) + ", got " + std::to_string(n));
  }
  return cached_basis(n);
}

bool LpCertificate::verify() const {
  if (n < 2 || n > kMaxSetVars || sigma.ambient() != n) return false;
  const ElementalBasis& basis = cached_basis(n);
  if (multipliers.size() != basis.size() || lambda < 0) return false;
  LinearFunctional lhs(n);
  for (std::size_t e = 0; e < basis.size(); ++e) {
    if (multipliers[e] < 0) return false;
    if (sgn(multipliers[e]) == 0) continue;
    lhs += multipliers[e] * basis.inequalities[e];
  }
  const LinearFunctional rhs = lambda * LinearFunctional::of_set(sigma) -
                               LinearFunctional::of_triple(tau, n);
  return lhs == rhs;
}

std::string LpCertificate::format(const VarNames& names) const {
  const ElementalBasis& basis = cached_basis(n);
  std::ostringstream out;
  for (std::size_t e = 0; e < multipliers.size(); ++e) {
    if (sgn(multipliers[e]) == 0) continue;
    out << to_string(multipliers[e]) << " * "
        << format_triple(basis.triples[e], names) << "\n";
  }
  out << "lambda = " << to_string(lambda) << "\n";
  return out.str();
}

ShannonImplication shannon_ei(const CiSet& s, const CiTriple& t,
                              const LpOptions& options) {
  const int n = s.ambient();
  check_lp_size(n, options);
  check_triple(t, n);
  const CiTriple tau = canonicalize(t);
  ShannonImplication out;
  if (tau.trivial() || s.contains(tau)) {
    out.holds = true;
    return out;
  }
  std::vector<LinearFunctional> zeros;
  for (const auto& sigma : s) {
    zeros.push_back(LinearFunctional::of_triple(sigma, n));
  }
  auto [h, value] =
      maximize_over_cone(n, LinearFunctional::of_triple(tau, n), zeros);
  out.holds = sgn(value) == 0;
  if (!out.holds) out.counterexample = std::move(h);
  return out;
}

LambdaCheck check_lambda(const CiSet& s, const CiTriple& t,
                         const Rational& lambda, const LpOptions& options) {
  const int n = s.ambient();
  check_lp_size(n, options);
  check_triple(t, n);
  if (lambda < 0) throw DomainError("lambda must be nonnegative");
  const CiTriple tau = canonicalize(t);
  const ElementalBasis& basis = cached_basis(n);
  const LinearFunctional f_sigma = LinearFunctional::of_set(s);
  const LinearFunctional target =
      lambda * f_sigma - LinearFunctional::of_triple(tau, n);

  const Matrix a = multiplier_matrix(basis, nullptr);
  const Vector c = Vector::Zero(a.cols());
  const LpSolution<Rational> sol = solve_lp(a, Vector(target.coeffs()), c);
  LambdaCheck out;
  if (sol.status == LpStatus::kOptimal) {
    out.certified = true;
    out.certificate = make_certificate(s, tau, lambda, sol, basis.size());
    return out;
  }
  // Farkas: some polymatroid makes the target negative.
  auto [h, value] = maximize_over_cone(n, -1 * target, {});
  if (sgn(value) <= 0) {
    throw Error("internal: infeasible multiplier LP without a refutation");
  }
  out.refutation = std::move(h);
  return out;
}

MinLambda min_lambda(const CiSet& s, const CiTriple& t,
                     const LpOptions& options) {
  const int n = s.ambient();
  check_lp_size(n, options);
  check_triple(t, n);
  const CiTriple tau = canonicalize(t);
  const ElementalBasis& basis = cached_basis(n);
  const LinearFunctional f_sigma = LinearFunctional::of_set(s);

  const Matrix a = multiplier_matrix(basis, &f_sigma);
  const Vector b = -LinearFunctional::of_triple(tau, n).coeffs();
  Vector c = Vector::Zero(a.cols());
  c(a.cols() - 1) = 1;
  const LpSolution<Rational> sol = solve_lp(a, b, c);
  MinLambda out;
  if (sol.status != LpStatus::kOptimal) return out;
  out.bounded = true;
  out.value = sol.x(a.cols() - 1);
  out.certificate = make_certificate(s, tau, *out.value, sol, basis.size());
  return out;
}

std::string bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::kSaturated:
      return "saturated";
    case BoundKind::kRecursive:
      return "recursive";
    case BoundKind::kMarginal:
      return "marginal";
  }
  return "?";
}

BoundKind parse_bound_kind(const std::string& text) {
  if (text == "saturated") return BoundKind::kSaturated;
  if (text == "recursive") return BoundKind::kRecursive;
  if (text == "marginal") return BoundKind::kMarginal;
  throw DomainError("unknown bound kind '" + text +
                    "' (expected saturated, recursive or marginal)");
}

std::optional<std::vector<int>> recursive_order(const CiSet& s) {
  const int n = s.ambient();
  std::vector<std::vector<VarSet>> head_options;
  for (const auto& t : s) {
    if (!t.disjoint()) return std::nullopt;
    std::vector<VarSet> heads;
    if (t.x.size() == 1) heads.push_back(t.x);
    if (t.y.size() == 1) heads.push_back(t.y);
    if (heads.empty()) return std::nullopt;
    head_options.push_back(std::move(heads));
  }
  std::vector<std::size_t> pick(s.size(), 0);
  while (true) {
    struct Row {
      VarSet pred;
      int head;
    };
    std::vector<Row> rows;
    VarSet heads;
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i) {
      const VarSet h = head_options[i][pick[i]];
      if (heads.intersects(h)) ok = false;
      heads |= h;
      rows.push_back({s[i].vars() - h, h.lowest()});
    }
    if (ok) {
      std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.pred.size() < b.pred.size();
      });
      const VarSet rowless = VarSet::full(n) - heads;
      std::vector<int> order;
      VarSet placed;
      for (const Row& r : rows) {
        const VarSet gap = r.pred - placed;
        if (!placed.subset_of(r.pred) || !gap.subset_of(rowless)) {
          ok = false;
          break;
        }
        for (int v : gap.elements()) order.push_back(v);
        order.push_back(r.head);
        placed = r.pred | VarSet::single(r.head);
      }
      if (ok) {
        for (int v : (rowless - placed).elements()) order.push_back(v);
        try {
          dag_from_basis(s, order);
          return order;
        } catch (const DomainError&) {
        }
      }
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == head_options[i].size()) {
      pick[i++] = 0;
    }
    if (i == pick.size()) break;
  }
  return std::nullopt;
}

BoundReport verify_theorem_bound(const CiSet& s, const CiTriple& t,
                                 BoundKind kind, const LpOptions& options) {
  const int n = s.ambient();
  const CiTriple tau = canonicalize(t);
  const VarNames names = default_names(n);
  for (const auto& sigma : s) {
    const TripleClass cls = classify(sigma, n);
    const bool fits =
        kind == BoundKind::kSaturated ? cls.saturated || cls.conditional
        : kind == BoundKind::kMarginal ? cls.marginal && sigma.disjoint()
                                       : true;
    if (!fits) {
      throw DomainError(format_triple(sigma, names) + " is not a " +
                        bound_kind_name(kind) + " statement");
    }
  }
  if (kind == BoundKind::kRecursive && !recursive_order(s)) {
    throw DomainError("not the recursive basis of any DAG");
  }
  if (!positive_implies(s, tau).implied) {
    throw DomainError("premise fails: " + format_triple(tau, names) +
                      " is not implied over positive polymatroids");
  }
  BoundReport report;
  report.kind = kind;
  report.premise = "positive_implies";
  report.shannon_implied = shannon_ei(s, tau, options).holds;
  report.lambda = min_lambda(s, tau, options);
  report.bound = kind == BoundKind::kRecursive
                     ? Rational(1)
                     : Rational(std::min(tau.x.size(), tau.y.size()));
  report.violation =
      !report.lambda.bounded || *report.lambda.value > report.bound;
  return report;
}

CiSet saturate_conditionals(const CiSet& s, int n) {
  if (s.ambient() != n) throw DomainError("ground set size mismatch");
  const VarSet all = VarSet::full(n);
  const VarNames names = default_names(n);
  CiSet out(n);
  for (const auto& t : s) {
    const TripleClass cls = classify(t, n);
    if (cls.conditional) {
      out.insert(CiTriple{t.y, all - t.z - t.y, t.z});
      out.insert(CiTriple{t.y, t.y, all - t.y});
    } else if (cls.saturated) {
      out.insert(t);
    } else {
      throw DomainError(format_triple(t, names) +
                        " is neither saturated nor a conditional");
    }
  }
  return out;
}

}  // namespace ciapprox
