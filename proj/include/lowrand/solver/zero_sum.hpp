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

#include <algorithm>
#include <numeric>
#include <vector>

#include "lowrand/core/entropy.hpp"
#include "lowrand/core/errors.hpp"
#include "lowrand/core/game.hpp"
#include "lowrand/solver/linear.hpp"
#include "lowrand/solver/simplex.hpp"

namespace lowrand {

template <typename Scalar>
struct MaxminResult {
  Scalar value{0};
  Vector<Scalar> strategy;
};

// max_x min_j (x' M)_j over the simplex of rows, as an LP on the shifted
// matrix (payoffs made >= 1 so the value variable can stay nonnegative).
template <typename Scalar>
MaxminResult<Scalar> solve_maxmin(const Matrix<Scalar>& payoff) {
  const Eigen::Index rows = payoff.rows();
  const Eigen::Index cols = payoff.cols();
  if (rows == 0 || cols == 0) throw InvalidInput("empty payoff matrix");
  const Scalar shift = Scalar(1) - payoff.minCoeff();
  LinearProgram<Scalar> lp;
  // Variables: x_0..x_{rows-1}, v.
  lp.A = Matrix<Scalar>::Zero(cols + 1, rows + 1);
  lp.b = Vector<Scalar>::Zero(cols + 1);
  lp.relations.assign(static_cast<std::size_t>(cols + 1), Relation::kLessEqual);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) lp.A(j, i) = -(payoff(i, j) + shift);
    lp.A(j, rows) = Scalar(1);
  }
  lp.A.row(cols).head(rows).setConstant(Scalar(1));
  lp.b(cols) = Scalar(1);
  lp.relations[cols] = Relation::kEqual;
  lp.c = Vector<Scalar>::Zero(rows + 1);
  lp.c(rows) = Scalar(1);
  LpSolution<Scalar> sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) throw InternalError("maxmin LP did not reach an optimum");
  MaxminResult<Scalar> result;
  result.strategy = sol.x.head(rows);
  // The LP value is exact; recompute from the strategy so both routes agree.
  result.value = (result.strategy.transpose() * payoff).minCoeff();
  if constexpr (ScalarTraits<Scalar>::kExact) {
    if (result.value != sol.x(rows) - shift) throw InternalError("maxmin LP value mismatch");
  }
  return result;
}

// Minmax data of one player in a two-player game.
template <typename Scalar>
struct MinmaxSolution {
  int player = 0;
  Scalar value{0};
  MixedStrategy<Scalar> strategy;           // guarantees >= value
  MixedStrategy<Scalar> opponent_punisher;  // holds the player to <= value
};

template <typename Scalar>
struct ZeroSumSolution {
  Scalar value{0};  // row player's value
  MinmaxSolution<Scalar> row;
  MinmaxSolution<Scalar> col;
};

// Payoff of `player` with that player's actions as rows.
template <typename Scalar>
Matrix<Scalar> own_payoff_matrix(const StageGame<Scalar>& game, int player) {
  game.require_two_player("own_payoff_matrix");
  Matrix<Scalar> m = game.bimatrix(player);
  if (player == 1) return m.transpose();
  return m;
}

// v_i, a strategy of i guaranteeing v_i, and an opponent strategy forcing it,
// from the zero-sum game in which the opponent minimizes u_i.
template <typename Scalar>
MinmaxSolution<Scalar> player_minmax(const StageGame<Scalar>& game, int player) {
  Matrix<Scalar> own = own_payoff_matrix(game, player);
  MaxminResult<Scalar> guarantee = solve_maxmin(own);
  Matrix<Scalar> negated = -own.transpose();
  MaxminResult<Scalar> punisher = solve_maxmin(negated);
  if constexpr (ScalarTraits<Scalar>::kExact) {
    if (guarantee.value != -punisher.value) throw InternalError("nonzero duality gap");
  }
  MinmaxSolution<Scalar> sol;
  sol.player = player;
  sol.value = guarantee.value;
  sol.strategy = MixedStrategy<Scalar>{player, guarantee.strategy};
  sol.opponent_punisher = MixedStrategy<Scalar>{1 - player, punisher.strategy};
  return sol;
}

template <typename Scalar>
ZeroSumSolution<Scalar> solve_zero_sum(const StageGame<Scalar>& game) {
  if (game.num_players() != 2 || !game.is_zero_sum())
    throw DomainError("solve_zero_sum needs a two-player zero-sum game");
  ZeroSumSolution<Scalar> sol;
  sol.row = player_minmax(game, 0);
  sol.col = player_minmax(game, 1);
  if constexpr (ScalarTraits<Scalar>::kExact) {
    if (sol.row.value != -sol.col.value) throw InternalError("zero-sum values disagree");
  }
  sol.value = sol.row.value;
  return sol;
}

template <typename Scalar>
PayoffProfile<Scalar> minmax_profile(const StageGame<Scalar>& game) {
  if (game.num_players() != 2)
    throw Unsupported(
        "minmax computation is implemented for two players only; supply punishment strategies "
        "explicitly for k > 2");
  PayoffProfile<Scalar> p{Vector<Scalar>(2)};
  p.values(0) = player_minmax(game, 0).value;
  p.values(1) = player_minmax(game, 1).value;
  return p;
}

namespace detail {

inline bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  for (int i = k - 1; i >= 0; --i) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <typename Scalar>
bool geq(const Scalar& a, const Scalar& b) {
  if constexpr (ScalarTraits<Scalar>::kExact) {
    return a >= b;
  } else {
    return a >= b - 1e-9;
  }
}

}  // namespace detail

inline constexpr double kMaxVertexCandidates = 2e6;

// Vertices of {x in simplex : (x' M)_j >= value for all j}. A vertex with
// support S is pinned down by sum(x) = 1 plus |S|-1 tight columns, so every
// (support, tight set) pair is tried. Ordered by support size, then
// lexicographically.
template <typename Scalar>
std::vector<Vector<Scalar>> optimal_face_vertices(const Matrix<Scalar>& payoff, const Scalar& value) {
  const int rows = static_cast<int>(payoff.rows());
  const int cols = static_cast<int>(payoff.cols());
  double candidates = 0.0;
  for (int s = 1; s <= rows; ++s)
    candidates += detail::binomial(rows, s) * detail::binomial(cols, s - 1);
  if (candidates > kMaxVertexCandidates)
    throw ResourceError("optimal-face vertex enumeration exceeds the combinatorial guard");

  std::vector<Vector<Scalar>> vertices;
  auto seen = [&](const Vector<Scalar>& x) {
    for (const auto& v : vertices) {
      if constexpr (ScalarTraits<Scalar>::kExact) {
        if (v == x) return true;
      } else {
        if ((v - x).cwiseAbs().maxCoeff() < 1e-9) return true;
      }
    }
    return false;
  };

  for (int s = 1; s <= rows; ++s) {
    std::vector<int> support(s);
    std::iota(support.begin(), support.end(), 0);
    do {
      std::vector<int> tight(s - 1);
      std::iota(tight.begin(), tight.end(), 0);
      if (s - 1 > cols) continue;
      do {
        Matrix<Scalar> sys = Matrix<Scalar>::Zero(s, s);
        Vector<Scalar> rhs = Vector<Scalar>::Zero(s);
        for (int k = 0; k < s; ++k) sys(0, k) = Scalar(1);
        rhs(0) = Scalar(1);
        for (int t = 0; t < s - 1; ++t) {
          for (int k = 0; k < s; ++k) sys(t + 1, k) = payoff(support[k], tight[t]);
          rhs(t + 1) = value;
        }
        auto solved = solve_square<Scalar>(sys, rhs);
        if (!solved) continue;
        bool positive = true;
        for (int k = 0; k < s; ++k)
          if (!ScalarTraits<Scalar>::is_positive((*solved)(k))) positive = false;
        if (!positive) continue;
        Vector<Scalar> x = Vector<Scalar>::Zero(rows);
        for (int k = 0; k < s; ++k) x(support[k]) = (*solved)(k);
        Vector<Scalar> guaranteed = payoff.transpose() * x;
        bool optimal = true;
        for (int j = 0; j < cols; ++j)
          if (!detail::geq(guaranteed(j), value)) optimal = false;
        if (optimal && !seen(x)) vertices.push_back(std::move(x));
      } while (s - 1 > 0 && detail::next_combination(tight, cols));
    } while (detail::next_combination(support, rows));
  }
  return vertices;
}

template <typename Scalar>
struct MinEntropyStrategy {
  double beta = 0.0;
  MixedStrategy<Scalar> strategy;
  Scalar value{0};
};

// Minimal-entropy strategy among those guaranteeing the maxmin value of
// `payoff` (rows = own actions). Entropy is concave, so the minimum over the
// optimal polytope sits at a vertex.
template <typename Scalar>
MinEntropyStrategy<Scalar> min_entropy_maxmin(const Matrix<Scalar>& payoff, int owner) {
  MaxminResult<Scalar> lp = solve_maxmin(payoff);
  std::vector<Vector<Scalar>> vertices = optimal_face_vertices(payoff, lp.value);
  if (vertices.empty()) throw InternalError("optimal face has no vertices");
  MinEntropyStrategy<Scalar> best;
  best.value = lp.value;
  bool first = true;
  for (const auto& v : vertices) {
    double h = shannon_entropy(v);
    if (first || h < best.beta - 1e-12) {
      best.beta = h;
      best.strategy = MixedStrategy<Scalar>{owner, v};
      first = false;
    }
  }
  return best;
}

// beta for `player` in a two-player zero-sum game.
template <typename Scalar>
MinEntropyStrategy<Scalar> min_entropy_minmax(const StageGame<Scalar>& game, int player) {
  if (game.num_players() != 2 || !game.is_zero_sum())
    throw DomainError("min_entropy_minmax needs a two-player zero-sum game");
  return min_entropy_maxmin(own_payoff_matrix(game, player), player);
}

// Minimal-entropy opponent strategy that holds `player` to v_player.
template <typename Scalar>
MinEntropyStrategy<Scalar> min_entropy_punisher(const StageGame<Scalar>& game, int player) {
  Matrix<Scalar> negated = -own_payoff_matrix(game, player).transpose();
  MinEntropyStrategy<Scalar> s = min_entropy_maxmin(negated, 1 - player);
  s.value = -s.value;
  return s;
}

// Minimal-entropy strategy of `player` guaranteeing v_player (general-sum).
template <typename Scalar>
MinEntropyStrategy<Scalar> min_entropy_guarantee(const StageGame<Scalar>& game, int player) {
  return min_entropy_maxmin(own_payoff_matrix(game, player), player);
}

}  // namespace lowrand
