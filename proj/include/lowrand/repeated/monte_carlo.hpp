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

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "lowrand/core/errors.hpp"
#include "lowrand/repeated/engine.hpp"
#include "lowrand/repeated/random.hpp"

namespace lowrand {

struct MonteCarloPayoff {
  std::vector<double> mean;     // per player, average over stages and plays
  std::vector<double> std_err;  // standard error of the mean
  std::size_t plays = 0;
};

// One playout of the n-stage game. Each player gets a fresh session; draws
// come from `rng` in player order at every stage.
template <typename Scalar>
History play_out(const StageGame<Scalar>& game, int n, const StrategyProfile<Scalar>& profile, Rng& rng) {
  validate_strategy_profile(game, profile);
  const int k = game.num_players();
  std::vector<std::unique_ptr<PlaySession>> sessions;
  for (const auto& s : profile) sessions.push_back(s.start_session(rng));
  History h(k, n);
  std::vector<int> a(k);
  while (!h.terminal()) {
    for (int i = 0; i < k; ++i) {
      a[i] = sessions[i]->act(h, rng);
      if (a[i] < 0 || a[i] >= game.num_actions(i)) throw InternalError("session produced an invalid action");
    }
    h.push(a);
  }
  return h;
}

template <typename Scalar>
std::vector<double> average_payoff(const StageGame<Scalar>& game, const History& h) {
  std::vector<double> out(static_cast<std::size_t>(game.num_players()), 0.0);
  for (int t = 0; t < h.length(); ++t) {
    const std::size_t idx = game.profile_index(h.profile(t));
    for (int i = 0; i < game.num_players(); ++i) out[i] += to_double(game.payoff(idx, i));
  }
  for (auto& v : out) v /= h.length();
  return out;
}

// Mean of i.i.d. playouts; playout j uses stream_rng(rng_seed, j), so
// results do not depend on evaluation order.
template <typename Scalar>
MonteCarloPayoff monte_carlo_payoff(const StageGame<Scalar>& game, int n, const StrategyProfile<Scalar>& profile,
                                    std::size_t plays, std::uint64_t rng_seed) {
  if (plays < 1) throw InvalidInput("need at least one playout");
  if (n < 1) throw InvalidInput("horizon must be positive");
  const int k = game.num_players();
  const Matrix<double> payoffs = matrix_cast<double>(game.payoffs());
  // Welford, so deterministic play reports exactly zero error.
  std::vector<double> mean(k, 0.0), m2(k, 0.0);
  for (std::size_t j = 0; j < plays; ++j) {
    Rng rng = stream_rng(rng_seed, j);
    const History h = play_out(game, n, profile, rng);
    Vector<double> avg = Vector<double>::Zero(k);
    for (int t = 0; t < n; ++t) avg += payoffs.row(static_cast<Eigen::Index>(game.profile_index(h.profile(t)))).transpose();
    avg /= n;
    for (int i = 0; i < k; ++i) {
      const double d = avg[i] - mean[i];
      mean[i] += d / static_cast<double>(j + 1);
      m2[i] += d * (avg[i] - mean[i]);
    }
  }
  MonteCarloPayoff out;
  out.plays = plays;
  out.mean = mean;
  for (int i = 0; i < k; ++i) {
    const double var = plays > 1 ? m2[i] / static_cast<double>(plays - 1) : 0.0;
    out.std_err.push_back(std::sqrt(var / static_cast<double>(plays)));
  }
  return out;
}

}  // namespace lowrand
