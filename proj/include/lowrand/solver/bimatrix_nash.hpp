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

#include <numeric>
#include <optional>
#include <vector>

#include "lowrand/core/game.hpp"
#include "lowrand/solver/linear.hpp"
#include "lowrand/solver/zero_sum.hpp"

namespace lowrand {

inline constexpr int kMaxNashActions = 8;

template <typename Scalar>
struct BimatrixEquilibrium {
  std::vector<MixedStrategy<Scalar>> profile;
  PayoffProfile<Scalar> payoff;
};

template <typename Scalar>
struct NashEnumeration {
  std::vector<BimatrixEquilibrium<Scalar>> equilibria;
  // Some equilibrium strategy has more pure best responses than support
  // points: equilibria with unequal supports (or continua) may be missing.
  bool degenerate = false;
};

namespace detail {

// Strategy on `support` of the player owning the columns of `payoff` that
// makes every row in `rows` indifferent. Returns the weights and the common
// payoff, or nullopt if singular / not strictly positive.
template <typename Scalar>
std::optional<std::pair<Vector<Scalar>, Scalar>> indifference(const Matrix<Scalar>& payoff,
                                                              const std::vector<int>& rows,
                                                              const std::vector<int>& support) {
  const int s = static_cast<int>(support.size());
  Matrix<Scalar> sys = Matrix<Scalar>::Zero(s + 1, s + 1);
  Vector<Scalar> rhs = Vector<Scalar>::Zero(s + 1);
  for (int r = 0; r < s; ++r) {
    for (int k = 0; k < s; ++k) sys(r, k) = payoff(rows[r], support[k]);
    sys(r, s) = Scalar(-1);
  }
  for (int k = 0; k < s; ++k) sys(s, k) = Scalar(1);
  rhs(s) = Scalar(1);
  auto solved = solve_square<Scalar>(sys, rhs);
  if (!solved) return std::nullopt;
  Vector<Scalar> w = Vector<Scalar>::Zero(payoff.cols());
  for (int k = 0; k < s; ++k) {
    if (!ScalarTraits<Scalar>::is_positive((*solved)(k))) return std::nullopt;
    w(support[k]) = (*solved)(k);
  }
  return std::make_pair(std::move(w), (*solved)(s));
}

template <typename Scalar>
int count_best_responses(const Vector<Scalar>& values, const Scalar& best) {
  int count = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (ScalarTraits<Scalar>::is_zero(values(i) - best)) ++count;
  return count;
}

}  // namespace detail

// All Nash equilibria of a two-player game with equal-size supports, by
// support enumeration with exact indifference solves.
template <typename Scalar>
NashEnumeration<Scalar> enumerate_bimatrix_nash(const StageGame<Scalar>& game) {
  game.require_two_player("enumerate_bimatrix_nash");
  const int m = game.num_actions(0);
  const int n = game.num_actions(1);
  if (m > kMaxNashActions || n > kMaxNashActions)
    throw ResourceError("support enumeration is capped at 8 actions per player");
  const Matrix<Scalar> a = game.bimatrix(0);
  const Matrix<Scalar> b = game.bimatrix(1);
  const Matrix<Scalar> bt = b.transpose();

  NashEnumeration<Scalar> out;
  for (int s = 1; s <= std::min(m, n); ++s) {
    std::vector<int> rows(s);
    std::iota(rows.begin(), rows.end(), 0);
    do {
      std::vector<int> cols(s);
      std::iota(cols.begin(), cols.end(), 0);
      do {
        // y makes the row player indifferent over `rows`; x makes the column
        // player indifferent over `cols`.
        auto y = detail::indifference<Scalar>(a, rows, cols);
        if (!y) continue;
        auto x = detail::indifference<Scalar>(bt, cols, rows);
        if (!x) continue;
        Vector<Scalar> row_values = a * y->first;
        Vector<Scalar> col_values = bt * x->first;
        bool ok = true;
        for (int i = 0; i < m && ok; ++i)
          if (!detail::geq(y->second, row_values(i))) ok = false;
        for (int j = 0; j < n && ok; ++j)
          if (!detail::geq(x->second, col_values(j))) ok = false;
        if (!ok) continue;
        BimatrixEquilibrium<Scalar> eq;
        eq.profile = {MixedStrategy<Scalar>{0, x->first}, MixedStrategy<Scalar>{1, y->first}};
        eq.payoff = expected_payoff(game, eq.profile);
        if (detail::count_best_responses(row_values, y->second) > s ||
            detail::count_best_responses(col_values, x->second) > s)
          out.degenerate = true;
        out.equilibria.push_back(std::move(eq));
      } while (detail::next_combination(cols, n));
    } while (detail::next_combination(rows, m));
  }
  return out;
}

}  // namespace lowrand
