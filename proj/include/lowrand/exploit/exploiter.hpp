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

#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "lowrand/core/game.hpp"
#include "lowrand/repeated/strategy.hpp"
#include "lowrand/repeated/strategy_io.hpp"

namespace lowrand {

// What a learner claims about the opponent's next action.
struct Hypothesis {
  int stage = 0;                       // 0-based stage it was emitted for
  MixedStrategy<Rational> prediction;  // opponent's next-action distribution
  Rational sd_bound{0};                // claimed statistical distance to the truth
};

// Engine state as seen before the engine moves at some history.
struct EngineDiagnostics {
  std::string engine;
  bool exploiting = false;                   // playing a best response this stage
  std::optional<std::size_t> posterior_size;  // seed learner
  std::optional<double> confidence;           // predictor / myopic: top predicted probability
  std::optional<Hypothesis> hypothesis;       // once emitted
};

nlohmann::json diagnostics_to_json(const StageGame<Rational>& game, const EngineDiagnostics& d);

// An exploitation engine: its (history-determined) strategy plus a view of
// its internal state at any history.
struct Exploiter {
  BehavioralStrategy<Rational> strategy;
  std::function<EngineDiagnostics(const History&)> diagnose;
};

// Pure stage best response of `player` to the opponent's mixed action;
// lexicographically first on ties. Two-player games.
template <typename Scalar>
int stage_best_response(const StageGame<Scalar>& game, int player, const MixedStrategy<Scalar>& opponent) {
  std::vector<MixedStrategy<Scalar>> profile(2, opponent);
  profile[player] = MixedStrategy<Scalar>::uniform(player, game.num_actions(player));
  return argmax_first(action_values(game, player, std::span<const MixedStrategy<Scalar>>(profile)));
}

// Myopic exploiter: at every history, the stage best response to the
// opponent's stage strategy there.
template <typename Scalar>
BehavioralStrategy<Scalar> best_response_exploiter(const StageGame<Scalar>& game, int n,
                                                   const BehavioralStrategy<Scalar>& opponent) {
  (void)n;
  game.require_two_player("best_response_exploiter");
  const int player = 1 - opponent.owner();
  const int actions = game.num_actions(player);
  BehavioralStrategy<Scalar> s(player, actions, StrategyForm::kRule, "myopic-best-response",
                               [game, opponent, player, actions](const History& h) {
                                 return MixedStrategy<Scalar>::pure(
                                     player, actions, stage_best_response(game, player, opponent.at(h)));
                               });
  if (opponent.has_state_key()) s.with_state_key([opponent](const History& h) { return opponent.state_key(h); });
  if (!opponent.description().is_null())
    s.with_description({{"form", "rule"},
                        {"rule", "myopic-best-response"},
                        {"owner", player},
                        {"actions", actions},
                        {"opponent", opponent.description()}});
  return s;
}

Exploiter myopic_exploiter(const StageGame<Rational>& game, int n, const BehavioralStrategy<Rational>& opponent);

// Resolves "predictor", "seed-learner" and "myopic-best-response" documents.
RuleResolver exploit_rules();

}  // namespace lowrand
