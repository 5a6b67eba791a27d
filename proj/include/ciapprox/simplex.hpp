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

#ifndef CIAPPROX_SIMPLEX_HPP_
#define CIAPPROX_SIMPLEX_HPP_

#include <Eigen/Core>
#include <type_traits>
#include <vector>

#include "ciapprox/rational.hpp"

namespace ciapprox {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <typename Scalar>
struct LpSolution {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  LpStatus status = LpStatus::kInfeasible;
  Vector x;
  Scalar objective{0};
  int pivots = 0;
};

// Sign tests. Exact for rationals; floating point uses a fixed 1e-12 slack.
template <typename Scalar>
struct PivotTraits {
  static bool is_zero(const Scalar& v) {
    if constexpr (std::is_floating_point_v<Scalar>) {
      return v < Scalar(1e-12) && v > Scalar(-1e-12);
    } else {
      return sgn(v) == 0;
    }
  }
  static bool is_negative(const Scalar& v) { return v < 0 && !is_zero(v); }
  static bool is_positive(const Scalar& v) { return v > 0 && !is_zero(v); }
};

// Two-phase primal simplex with Bland's rule on a dense tableau:
//
//   minimize c.x  subject to  A x = b,  x >= 0.
//
// Rows whose column set already contains a unit column start with it in the
// basis; the rest receive artificial variables for phase one.
template <typename Scalar>
class DenseSimplex {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Traits = PivotTraits<Scalar>;

  DenseSimplex(const Matrix& a, const Vector& b, const Vector& c)
      : rows_(a.rows()), cols_(a.cols()), cost_(c) {
    build_tableau(a, b);
  }

  LpSolution<Scalar> solve() {
    LpSolution<Scalar> out;
    if (artificial_count_ > 0) {
      set_phase_one_objective();
      run(/*allow_artificial=*/true);
      if (Traits::is_positive(-tableau_(rows_, rhs_col()))) {
        out.status = LpStatus::kInfeasible;
        out.pivots = pivots_;
        return out;
      }
      drive_out_artificials();
    }
    set_phase_two_objective();
    if (!run(/*allow_artificial=*/false)) {
      out.status = LpStatus::kUnbounded;
      out.pivots = pivots_;
      return out;
    }
    out.status = LpStatus::kOptimal;
    out.x = Vector::Zero(cols_);
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (basis_[r] < cols_) out.x(basis_[r]) = tableau_(r, rhs_col());
    }
    out.objective = -tableau_(rows_, rhs_col());
    out.pivots = pivots_;
    return out;
  }

 private:
  Eigen::Index rhs_col() const { return cols_ + artificial_count_; }

  void build_tableau(const Matrix& a, const Vector& b) {
    std::vector<Eigen::Index> unit_col(rows_, -1);
    for (Eigen::Index j = 0; j < cols_; ++j) {
      Eigen::Index row = -1;
      bool unit = true;
      for (Eigen::Index r = 0; r < rows_ && unit; ++r) {
        if (Traits::is_zero(a(r, j))) continue;
        if (row >= 0) unit = false;
        row = r;
      }
      if (!unit || row < 0 || unit_col[row] >= 0) continue;
      // A usable slack: +1 with nonnegative right-hand side.
      if (a(row, j) == Scalar(1) && !Traits::is_negative(b(row))) {
        unit_col[row] = j;
      }
    }
    artificial_count_ = 0;
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (unit_col[r] < 0) ++artificial_count_;
    }
    tableau_ = Matrix::Zero(rows_ + 1, cols_ + artificial_count_ + 1);
    basis_.assign(rows_, -1);
    Eigen::Index next_art = cols_;
    for (Eigen::Index r = 0; r < rows_; ++r) {
      const bool flip = unit_col[r] < 0 && Traits::is_negative(b(r));
      for (Eigen::Index j = 0; j < cols_; ++j) {
        tableau_(r, j) = flip ? Scalar(-a(r, j)) : a(r, j);
      }
      tableau_(r, rhs_col()) = flip ? Scalar(-b(r)) : b(r);
      if (unit_col[r] >= 0) {
        basis_[r] = unit_col[r];
      } else {
        tableau_(r, next_art) = 1;
        basis_[r] = next_art++;
      }
    }
  }

  bool is_artificial(Eigen::Index j) const {
    return j >= cols_ && j < rhs_col();
  }

  void set_phase_one_objective() {
    auto z = tableau_.row(rows_);
    z.setZero();
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      for (Eigen::Index j = 0; j <= rhs_col(); ++j) {
        if (!is_artificial(j)) z(j) -= tableau_(r, j);
      }
    }
  }

  void set_phase_two_objective() {
    auto z = tableau_.row(rows_);
    z.setZero();
    for (Eigen::Index j = 0; j < cols_; ++j) z(j) = cost_(j);
    for (Eigen::Index r = 0; r < rows_; ++r) {
      const Eigen::Index bj = basis_[r];
      if (is_artificial(bj) || Traits::is_zero(cost_(bj))) continue;
      const Scalar cb = cost_(bj);
      for (Eigen::Index j = 0; j <= rhs_col(); ++j) {
        if (!Traits::is_zero(tableau_(r, j))) z(j) -= cb * tableau_(r, j);
      }
    }
  }

  // Artificials left in the basis at level zero are swapped for any real
  // column with a nonzero entry in their row. Rows with no such entry are
  // redundant and stay inert.
  void drive_out_artificials() {
    for (Eigen::Index r = 0; r < rows_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (!Traits::is_zero(tableau_(r, j))) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  // Returns false when the objective is unbounded below.
  bool run(bool allow_artificial) {
    const Eigen::Index limit = allow_artificial ? rhs_col() : cols_;
    while (true) {
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (Traits::is_negative(tableau_(rows_, j))) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;

      Eigen::Index leaving = -1;
      Scalar best_ratio{0};
      for (Eigen::Index r = 0; r < rows_; ++r) {
        const Scalar& coef = tableau_(r, entering);
        if (!Traits::is_positive(coef)) continue;
        Scalar ratio = tableau_(r, rhs_col()) / coef;
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index e) {
    ++pivots_;
    const Scalar p = tableau_(r, e);
    std::vector<Eigen::Index> nonzero;
    for (Eigen::Index j = 0; j <= rhs_col(); ++j) {
      if (Traits::is_zero(tableau_(r, j))) continue;
      tableau_(r, j) /= p;
      nonzero.push_back(j);
    }
    for (Eigen::Index i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const Scalar f = tableau_(i, e);
      if (Traits::is_zero(f)) continue;
      for (Eigen::Index j : nonzero) tableau_(i, j) -= f * tableau_(r, j);
      tableau_(i, e) = 0;
    }
    basis_[r] = e;
  }

  Eigen::Index rows_;
  Eigen::Index cols_;
  Vector cost_;
  Eigen::Index artificial_count_ = 0;
  Matrix tableau_;
  std::vector<Eigen::Index> basis_;
  int pivots_ = 0;
};

template <typename Scalar>
LpSolution<Scalar> solve_lp(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& c) {
  return DenseSimplex<Scalar>(a, b, c).solve();
}

}  // namespace ciapprox

#endif  // CIAPPROX_SIMPLEX_HPP_
