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

#include <optional>
#include <vector>

#include <json.hpp>

#include "lowrand/core/game.hpp"
#include "lowrand/repeated/strategy.hpp"
#include "lowrand/repeated/strategy_io.hpp"
#include "lowrand/solver/feasibility.hpp"

namespace lowrand {

enum class FolkFailure { kNotFeasible, kNotIndividuallyRational, kNoGapEquilibrium, kHorizonTooShort };

class FolkError : public DomainError {
 public:
  FolkError(FolkFailure kind, const std::string& what) : DomainError(what), kind_(kind) {}
  FolkFailure kind() const { return kind_; }

 private:
  FolkFailure kind_;
};

using StageProfile = std::vector<MixedStrategy<Rational>>;

// The trigger-strategy plan: phase 1 repeats a block of K pure profiles
// (each profile a appearing alpha'_a times) l times; the last m stages cycle
// through stage equilibria. A deviation in phase 1 is punished forever.
struct FolkPlan {
  int horizon = 0;
  PayoffProfile<Rational> target;
  PayoffProfile<Rational> minmax;
  FeasibleDecomposition decomposition;
  std::vector<std::vector<int>> block;  // K profiles, lexicographic, contiguous copies
  int repetitions = 0;                  // l
  int tail_length = 0;                  // m
  int min_tail_length = 0;              // smallest m allowed by the averaged inequality
  std::vector<StageProfile> tail_equilibria;
  // punishments[i][j]: player j's stage strategy while i is being punished;
  // punishments[i][i] is what i plays himself in that state.
  std::vector<StageProfile> punishments;
  std::vector<Rational> deviation_gains;  // max_a in block of the best one-shot gain
  std::vector<Rational> punished_caps;    // best stage payoff of i against the punishers

  int block_length() const { return static_cast<int>(block.size()); }
  int phase_one_length() const { return repetitions * block_length(); }
  const std::vector<int>& scheduled(int t) const { return block[static_cast<std::size_t>(t) % block.size()]; }
  const StageProfile& tail_profile(int t) const {
    return tail_equilibria[static_cast<std::size_t>(t - phase_one_length()) % tail_equilibria.size()];
  }
};

struct FolkEquilibrium {
  StrategyProfile<Rational> profile;
  FolkPlan plan;
};

// Builds the plan and the trigger profile for target payoff p. Stage
// equilibria and punishments are derived for two-player games when not
// supplied.
FolkEquilibrium folk_equilibrium(const StageGame<Rational>& game, int n, const PayoffProfile<Rational>& target,
                                 const std::optional<std::vector<StageProfile>>& per_player_ne = std::nullopt,
                                 const std::optional<std::vector<StageProfile>>& punishments = std::nullopt);

FolkPlan plan_folk(const StageGame<Rational>& game, int n, const PayoffProfile<Rational>& target,
                   const std::optional<std::vector<StageProfile>>& per_player_ne = std::nullopt,
                   const std::optional<std::vector<StageProfile>>& punishments = std::nullopt);

StrategyProfile<Rational> folk_profile(const StageGame<Rational>& game, const FolkPlan& plan);
BehavioralStrategy<Rational> folk_trigger_strategy(const StageGame<Rational>& game, const FolkPlan& plan, int owner);

// Exact average payoff of the on-path play and the bound m * max NE entropy
// on each player's effective entropy.
PayoffProfile<Rational> predicted_payoff(const StageGame<Rational>& game, const FolkPlan& plan);
std::vector<double> effective_entropy_bound(const FolkPlan& plan);

// Plan summary document (also the parameter block of the trigger rule).
nlohmann::json plan_to_json(const StageGame<Rational>& game, const FolkPlan& plan);
FolkPlan plan_from_json(const StageGame<Rational>& game, const nlohmann::json& doc);

// Resolves the rules the constructions emit ("folk-trigger").
RuleResolver construction_rules();

}  // namespace lowrand
