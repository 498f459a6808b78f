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

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>

#include "lowrand/repeated/engine.hpp"

namespace lowrand {

// Backward induction for one player against the fixed strategies of the
// others: V(h) = max_a sum_{a_-i} sigma_-i(h)(a_-i) [u_i(a) + V(h.a)].
// Zero-probability opponent branches are pruned; ties go to the lowest
// action index. Results are cached, so the solver doubles as the policy of
// the optimal deviation.
template <typename Scalar>
class BestResponseSolver {
 public:
  BestResponseSolver(StageGame<Scalar> game, int n, StrategyProfile<Scalar> profile, int player,
                     std::size_t node_limit = kMaxTreeNodes)
      : game_(std::move(game)), n_(n), profile_(std::move(profile)), player_(player),
        keyed_(detail::keyed(profile_, player)), budget_(node_limit) {
    validate_strategy_profile(game_, profile_);
    if (n < 1) throw InvalidInput("horizon must be positive");
    if (player < 0 || player >= game_.num_players()) throw InvalidInput("player out of range");
  }

  int player() const { return player_; }
  int horizon() const { return n_; }
  bool keyed() const { return keyed_; }

  // Optimal expected total payoff from h on, and the optimal action at h.
  std::pair<Scalar, int> solve(const History& h) {
    std::lock_guard<std::mutex> lock(mu_);
    History copy = h;
    return solve_locked(copy);
  }

  // Opponent part of the state; equal keys imply equal continuation values.
  std::string key(const History& h) const {
    if (keyed_) return detail::state_key(profile_, h, player_);
    std::string k = std::to_string(h.length()) + '|';
    for (int v : h.flat()) k += static_cast<char>(v);
    return k;
  }

 private:
  std::pair<Scalar, int> solve_locked(History& h) {
    if (h.terminal()) return {Scalar(0), -1};
    std::string k = key(h);
    if (auto it = cache_.find(k); it != cache_.end()) return it->second;
    budget_.visit();
    const int k_players = game_.num_players();
    std::vector<detail::Support<Scalar>> supports(k_players);
    for (int j = 0; j < k_players; ++j)
      if (j != player_) supports[j] = detail::positive_support(profile_[j].at(h));
    std::pair<Scalar, int> best{Scalar(0), -1};
    for (int a = 0; a < game_.num_actions(player_); ++a) {
      supports[player_] = {{a, Scalar(1)}};
      Scalar value(0);
      detail::for_each_joint(supports, [&](const std::vector<int>& prof, const Scalar& p) {
        const Scalar& u = game_.payoff(game_.profile_index(prof), player_);
        h.push(prof);
        Scalar rest = solve_locked(h).first;
        h.pop();
        value += p * (u + rest);
      });
      if (best.second < 0 || value > best.first) best = {value, a};
    }
    cache_.emplace(std::move(k), best);
    return best;
  }

  StageGame<Scalar> game_;
  int n_;
  StrategyProfile<Scalar> profile_;
  int player_;
  bool keyed_;
  detail::NodeBudget budget_;
  std::unordered_map<std::string, std::pair<Scalar, int>> cache_;
  std::mutex mu_;
};

template <typename Scalar>
struct BestResponse {
  int player = 0;
  Scalar value{0};  // optimal average payoff
  BehavioralStrategy<Scalar> strategy;
};

// Best response value and a deterministic optimal strategy for `player`
// against the other entries of `profile` (the player's own entry is ignored).
template <typename Scalar>
BestResponse<Scalar> best_response_value(const StageGame<Scalar>& game, int n, const StrategyProfile<Scalar>& profile,
                                         int player, std::size_t node_limit = kMaxTreeNodes) {
  auto solver = std::make_shared<BestResponseSolver<Scalar>>(game, n, profile, player, node_limit);
  History root(game.num_players(), n);
  const Scalar total = solver->solve(root).first;
  const int actions = game.num_actions(player);
  BehavioralStrategy<Scalar> s(player, actions, StrategyForm::kRule, "best-response",
                               [solver, player, actions](const History& h) {
                                 return MixedStrategy<Scalar>::pure(player, actions, solver->solve(h).second);
                               });
  if (solver->keyed()) s.with_state_key([solver](const History& h) { return solver->key(h); });
  return BestResponse<Scalar>{player, total / Scalar(n), std::move(s)};
}

// Two-player convenience: best response of `player` to `opponent`.
template <typename Scalar>
BestResponse<Scalar> best_response_value(const StageGame<Scalar>& game, int n, const BehavioralStrategy<Scalar>& opponent,
                                         int player, std::size_t node_limit = kMaxTreeNodes) {
  game.require_two_player("best_response_value");
  if (opponent.owner() != 1 - player) throw InvalidInput("opponent strategy must belong to the other player");
  StrategyProfile<Scalar> profile;
  for (int j = 0; j < 2; ++j)
    profile.push_back(j == player ? uniform_strategy<Scalar>(j, game.num_actions(j)) : opponent);
  return best_response_value(game, n, profile, player, node_limit);
}

}  // namespace lowrand
