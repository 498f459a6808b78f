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

#include "lowrand/solver/guarantee.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "lowrand/core/entropy.hpp"
#include "lowrand/core/errors.hpp"
#include "lowrand/solver/zero_sum.hpp"

namespace lowrand {
namespace {

double guarantee_of(const Matrix<double>& payoff, const Vector<double>& x) {
  return (payoff.transpose() * x).minCoeff();
}

// Every point of the simplex grid with the given resolution, sorted by
// entropy, with a running best guarantee so that "best point with
// H <= gamma" is a binary search.
class SimplexGrid {
 public:
  SimplexGrid(const Matrix<double>& payoff, int resolution) {
    const int d = static_cast<int>(payoff.rows());
    dims_ = d;
    std::vector<int> counts(d, 0);
    Vector<double> x(d);
    enumerate(payoff, resolution, 0, resolution, counts, x);
    std::vector<std::size_t> order(points_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return points_[a].entropy < points_[b].entropy; });
    std::vector<Point> sorted;
    sorted.reserve(points_.size());
    for (std::size_t i : order) sorted.push_back(points_[i]);
    points_ = std::move(sorted);
    best_prefix_.resize(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      best_prefix_[i] = i;
      if (i > 0 && points_[best_prefix_[i - 1]].value >= points_[i].value)
        best_prefix_[i] = best_prefix_[i - 1];
    }
  }

  // Best grid point with entropy <= gamma (always exists: pure points have 0).
  Vector<double> best_below(double gamma) const {
    auto it = std::upper_bound(points_.begin(), points_.end(), gamma + 1e-12,
                               [](double g, const Point& p) { return g < p.entropy; });
    std::size_t idx = static_cast<std::size_t>(it - points_.begin());
    const auto& x = points_[best_prefix_[idx - 1]].x;
    Vector<double> out(dims_);
    for (int i = 0; i < dims_; ++i) out(i) = x[static_cast<std::size_t>(i)];
    return out;
  }

 private:
  struct Point {
    double entropy;
    double value;
    std::array<double, kMaxGuaranteeActions> x;
  };

  void enumerate(const Matrix<double>& payoff, int resolution, int pos, int remaining,
                 std::vector<int>& counts, Vector<double>& x) {
    const int d = static_cast<int>(counts.size());
    if (pos == d - 1) {
      counts[pos] = remaining;
      for (int i = 0; i < d; ++i) x(i) = static_cast<double>(counts[i]) / resolution;
      std::array<double, kMaxGuaranteeActions> packed{};
      for (int i = 0; i < d; ++i) packed[static_cast<std::size_t>(i)] = x(i);
      points_.push_back({shannon_entropy(x), guarantee_of(payoff, x), packed});
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[pos] = c;
      enumerate(payoff, resolution, pos + 1, remaining - c, counts, x);
    }
  }

  int dims_ = 0;
  std::vector<Point> points_;
  std::vector<std::size_t> best_prefix_;
};

int grid_resolution(int actions) { return actions <= 3 ? 1000 : 200; }

Vector<double> refine(const Matrix<double>& payoff, double gamma, Vector<double> x) {
  const Eigen::Index d = x.size();
  double best = guarantee_of(payoff, x);
  for (double step = 1e-3; step > 5e-7; step *= 0.5) {
    bool improved = true;
    for (int iter = 0; improved && iter < 20000; ++iter) {
      improved = false;
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
          if (i == j || x(j) < step) continue;
          Vector<double> y = x;
          y(i) += step;
          y(j) -= step;
          if (shannon_entropy(y) > gamma + 1e-12) continue;
          double g = guarantee_of(payoff, y);
          if (g > best + 1e-15) {
            x = std::move(y);
            best = g;
            improved = true;
          }
        }
      }
    }
  }
  return x;
}

struct Candidate {
  double entropy;
  Vector<double> x;
};

// Exact optimal strategies (LP solution and minimal-entropy vertex) so the
// top of the curve reaches the game value.
std::vector<Candidate> exact_candidates(const Matrix<double>& payoff) {
  std::vector<Candidate> out;
  MaxminResult<double> lp = solve_maxmin(payoff);
  out.push_back({shannon_entropy(lp.strategy), lp.strategy});
  MinEntropyStrategy<double> low = min_entropy_maxmin(payoff, 0);
  out.push_back({low.beta, low.strategy.probs});
  return out;
}

GuaranteePoint best_at(const Matrix<double>& payoff, const SimplexGrid& grid,
                       const std::vector<Candidate>& exact, double gamma) {
  Vector<double> x = refine(payoff, gamma, grid.best_below(gamma));
  double value = guarantee_of(payoff, x);
  for (const auto& c : exact) {
    if (c.entropy <= gamma + 1e-12) {
      double g = guarantee_of(payoff, c.x);
      if (g > value) {
        value = g;
        x = c.x;
      }
    }
  }
  return {value, x};
}

void check_size(int actions) {
  if (actions > kMaxGuaranteeActions)
    throw InvalidInput("entropy-bounded guarantee supports at most 4 actions");
}

}  // namespace

GuaranteePoint entropy_bounded_guarantee(const Matrix<double>& payoff, double gamma) {
  check_size(static_cast<int>(payoff.rows()));
  if (gamma < 0.0) throw InvalidInput("gamma must be nonnegative");
  SimplexGrid grid(payoff, grid_resolution(static_cast<int>(payoff.rows())));
  return best_at(payoff, grid, exact_candidates(payoff), gamma);
}

GuaranteeCurve guarantee_curve(const StageGame<Rational>& game, int player, int grid_size) {
  if (grid_size < 2) throw InvalidInput("guarantee curve needs grid_size >= 2");
  if (game.num_players() != 2 || !game.is_zero_sum())
    throw DomainError("guarantee curve needs a two-player zero-sum game");
  check_size(game.num_actions(player));
  const Matrix<double> payoff = matrix_cast<double>(own_payoff_matrix(game, player));
  SimplexGrid grid(payoff, grid_resolution(static_cast<int>(payoff.rows())));
  const auto exact = exact_candidates(payoff);
  const double top = std::log2(static_cast<double>(game.num_actions(player)));

  GuaranteeCurve curve;
  curve.player = player;
  for (int k = 0; k < grid_size; ++k) {
    double gamma = top * k / (grid_size - 1);
    GuaranteePoint p = best_at(payoff, grid, exact, gamma);
    // Feasible sets are nested in gamma, so U is nondecreasing.
    if (k > 0 && p.value < curve.values.back()) {
      p.value = curve.values.back();
      p.strategy = curve.strategies.back();
    }
    curve.gammas.push_back(gamma);
    curve.values.push_back(p.value);
    curve.strategies.push_back(p.strategy);
  }
  curve.cav_values = upper_concave_envelope(curve.gammas, curve.values);
  return curve;
}

std::vector<double> upper_concave_envelope(const std::vector<double>& xs,
                                           const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw InvalidInput("envelope needs matching samples");
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2], b = hull.back();
      double cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a]);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<double> out(xs.size());
  std::size_t seg = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (seg + 1 < hull.size() && xs[hull[seg + 1]] < xs[i]) ++seg;
    if (seg + 1 >= hull.size() || xs[hull[seg]] == xs[i]) {
      out[i] = ys[hull[seg]];
      continue;
    }
    std::size_t a = hull[seg], b = hull[seg + 1];
    double t = (xs[i] - xs[a]) / (xs[b] - xs[a]);
    out[i] = ys[a] + t * (ys[b] - ys[a]);
  }
  return out;
}

double stage_exploit_floor(const StageGame<Rational>& game, double gamma) {
  if (game.num_players() != 2 || !game.is_zero_sum())
    throw DomainError("stage_exploit_floor needs a two-player zero-sum game");
  const double v = to_double(solve_zero_sum(game).value);
  const Matrix<double> column = matrix_cast<double>(own_payoff_matrix(game, 1));
  GuaranteePoint p = entropy_bounded_guarantee(column, gamma);
  return std::max(0.0, -p.value - v);
}

}  // namespace lowrand
