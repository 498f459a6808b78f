// Copyright 2026 The lowrand Authors
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

#pragma once

#include <limits>
#include <vector>

#include "lowrand/core/errors.hpp"
#include "lowrand/core/scalar.hpp"

namespace lowrand {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

// maximize c'x  subject to  A x (rel) b,  x >= 0.
template <typename Scalar>
struct LinearProgram {
  Matrix<Scalar> A;
  Vector<Scalar> b;
  std::vector<Relation> relations;
  Vector<Scalar> c;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <typename Scalar>
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Vector<Scalar> x;
  Scalar objective{0};
  std::size_t pivots = 0;
};

namespace detail {

// Dense tableau. Column layout: structural | slack/surplus | artificial | rhs.
template <typename Scalar>
class Tableau {
 public:
  Tableau(Matrix<Scalar> rows, std::vector<int> basis)
      : t_(std::move(rows)), basis_(std::move(basis)) {}

  Matrix<Scalar>& table() { return t_; }
  std::vector<int>& basis() { return basis_; }
  Eigen::Index num_rows() const { return t_.rows() - 1; }
  Eigen::Index rhs_col() const { return t_.cols() - 1; }

  // Loads maximize obj'x as reduced costs in the last row (row = obj - c_B B^-1 A).
  void set_objective(const Vector<Scalar>& obj) {
    const Eigen::Index m = num_rows();
    t_.row(m).setZero();
    for (Eigen::Index j = 0; j < obj.size(); ++j) t_(m, j) = obj(j);
    for (Eigen::Index r = 0; r < m; ++r) {
      const Scalar& cb = basis_[r] < obj.size() ? obj(basis_[r]) : zero_;
      if (cb != Scalar(0)) t_.row(m) -= cb * t_.row(r);
    }
  }

  // Bland's rule: lowest-index improving column, ties in the ratio test go to
  // the lowest basic variable index. Columns >= `allowed` never enter.
  LpStatus optimize(Eigen::Index allowed, std::size_t& pivots) {
    const Eigen::Index m = num_rows();
    const Eigen::Index rhs = rhs_col();
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed; ++j)
        if (ScalarTraits<Scalar>::is_positive(t_(m, j))) {
          enter = j;
          break;
        }
      if (enter < 0) return LpStatus::kOptimal;
      Eigen::Index leave = -1;
      Scalar best_ratio{0};
      for (Eigen::Index r = 0; r < m; ++r) {
        if (!ScalarTraits<Scalar>::is_positive(t_(r, enter))) continue;
        Scalar ratio = t_(r, rhs) / t_(r, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      pivot(leave, enter);
      ++pivots;
      if (pivots > 1000000) throw InternalError("simplex exceeded the pivot limit");
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const Scalar inv = Scalar(1) / t_(row, col);
    t_.row(row) *= inv;
    for (Eigen::Index r = 0; r < t_.rows(); ++r) {
      if (r == row || t_(r, col) == Scalar(0)) continue;
      const Scalar f = t_(r, col);
      t_.row(r) -= f * t_.row(row);
      if constexpr (!ScalarTraits<Scalar>::kExact) t_(r, col) = 0.0;
    }
    basis_[row] = static_cast<int>(col);
  }

 private:
  Matrix<Scalar> t_;
  std::vector<int> basis_;
  Scalar zero_{0};
};

}  // namespace detail

// Two-phase primal simplex. Exact when Scalar is Rational; Bland's rule rules
// out cycling.
template <typename Scalar>
LpSolution<Scalar> solve_lp(const LinearProgram<Scalar>& lp) {
  const Eigen::Index m = lp.A.rows();
  const Eigen::Index n = lp.A.cols();
  if (lp.b.size() != m || static_cast<Eigen::Index>(lp.relations.size()) != m || lp.c.size() != n)
    throw InvalidInput("linear program dimensions disagree");

  Matrix<Scalar> a = lp.A;
  Vector<Scalar> b = lp.b;
  std::vector<Relation> rel = lp.relations;
  for (Eigen::Index r = 0; r < m; ++r) {
    if (b(r) < Scalar(0)) {
      a.row(r) = -a.row(r);
      b(r) = -b(r);
      if (rel[r] == Relation::kLessEqual) {
        rel[r] = Relation::kGreaterEqual;
      } else if (rel[r] == Relation::kGreaterEqual) {
        rel[r] = Relation::kLessEqual;
      }
    }
  }
  Eigen::Index slacks = 0, artificials = 0;
  for (Relation r : rel) {
    if (r != Relation::kEqual) ++slacks;
    if (r != Relation::kLessEqual) ++artificials;
  }
  const Eigen::Index cols = n + slacks + artificials;
  Matrix<Scalar> t = Matrix<Scalar>::Zero(m + 1, cols + 1);
  std::vector<int> basis(static_cast<std::size_t>(m));
  Eigen::Index next_slack = n, next_art = n + slacks;
  for (Eigen::Index r = 0; r < m; ++r) {
    t.row(r).head(n) = a.row(r);
    t(r, cols) = b(r);
    switch (rel[r]) {
      case Relation::kLessEqual:
        t(r, next_slack) = Scalar(1);
        basis[r] = static_cast<int>(next_slack++);
        break;
      case Relation::kGreaterEqual:
        t(r, next_slack++) = Scalar(-1);
        t(r, next_art) = Scalar(1);
        basis[r] = static_cast<int>(next_art++);
        break;
      case Relation::kEqual:
        t(r, next_art) = Scalar(1);
        basis[r] = static_cast<int>(next_art++);
        break;
    }
  }

  detail::Tableau<Scalar> tab(std::move(t), std::move(basis));
  LpSolution<Scalar> result;

  if (artificials > 0) {
    Vector<Scalar> phase1 = Vector<Scalar>::Zero(cols);
    for (Eigen::Index j = n + slacks; j < cols; ++j) phase1(j) = Scalar(-1);
    tab.set_objective(phase1);
    tab.optimize(cols, result.pivots);
    // Objective row rhs holds -(phase-1 objective value).
    Scalar infeasibility = tab.table()(m, cols);
    if (!ScalarTraits<Scalar>::is_zero(infeasibility)) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (Eigen::Index r = 0; r < m; ++r) {
      if (tab.basis()[r] < n + slacks) continue;
      for (Eigen::Index j = 0; j < n + slacks; ++j)
        if (!ScalarTraits<Scalar>::is_zero(tab.table()(r, j))) {
          tab.pivot(r, j);
          ++result.pivots;
          break;
        }
    }
  }

  Vector<Scalar> obj = Vector<Scalar>::Zero(cols);
  obj.head(n) = lp.c;
  tab.set_objective(obj);
  LpStatus status = tab.optimize(n + slacks, result.pivots);
  if (status == LpStatus::kUnbounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.x = Vector<Scalar>::Zero(n);
  for (Eigen::Index r = 0; r < m; ++r)
    if (tab.basis()[r] < n) result.x(tab.basis()[r]) = tab.table()(r, cols);
  result.objective = lp.c.dot(result.x);
  return result;
}

}  // namespace lowrand
