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
#include <unordered_map>
#include <vector>

#include "lowrand/core/entropy.hpp"
#include "lowrand/core/example_games.hpp"
#include "lowrand/repeated/engine.hpp"
#include "lowrand/solver/bimatrix_nash.hpp"
#include "lowrand/solver/zero_sum.hpp"
#include "lowrand/verify/best_response.hpp"

namespace lowrand {

// Below this path probability a float-mode history is reported as
// near-zero rather than checked.
inline constexpr double kNearZeroProbability = 1e-12;

template <typename Scalar>
struct StageCheck {
  History history;
  double probability = 0.0;
  bool ok = true;
  StageDeviation<Scalar> deviation;  // best pure stage deviation at the history
};

template <typename Scalar>
struct OnPathReport {
  bool hypothesis_met = false;
  std::string note;  // "hypothesis not met" when some stage NE pays off the minmax level
  std::vector<StageCheck<Scalar>> checks;
  std::vector<History> near_zero;  // float mode only

  std::vector<StageCheck<Scalar>> violations() const {
    std::vector<StageCheck<Scalar>> out;
    for (const auto& c : checks)
      if (!c.ok) out.push_back(c);
    return out;
  }
};

// True when every stage equilibrium of the two-player game pays exactly the
// minmax profile.
template <typename Scalar>
bool all_equilibria_at_minmax(const StageGame<Scalar>& game) {
  if (game.num_players() != 2) return false;
  const auto minmax = minmax_profile(game);
  const auto eqs = enumerate_bimatrix_nash(game);
  for (const auto& e : eqs.equilibria)
    for (int i = 0; i < 2; ++i) {
      if constexpr (ScalarTraits<Scalar>::kExact) {
        if (e.payoff[i] != minmax[i]) return false;
      } else {
        if (std::abs(e.payoff[i] - minmax[i]) > 1e-9) return false;
      }
    }
  return !eqs.equilibria.empty();
}

// Stage-NE test of sigma(h) at every history the profile reaches with
// positive probability. Keyed profiles are checked once per state.
template <typename Scalar>
OnPathReport<Scalar> onpath_stage_check(const StageGame<Scalar>& game, int n, const StrategyProfile<Scalar>& profile,
                                        std::size_t node_limit = kMaxTreeNodes) {
  validate_strategy_profile(game, profile);
  OnPathReport<Scalar> report;
  report.hypothesis_met = all_equilibria_at_minmax(game);
  if (!report.hypothesis_met) report.note = "hypothesis not met";
  const bool use_keys = detail::keyed(profile);
  std::unordered_map<std::string, bool> seen;
  detail::NodeBudget budget(node_limit);

  std::function<void(History&, double)> rec = [&](History& h, double prob) {
    if (h.terminal()) return;
    budget.visit();
    if (use_keys) {
      if (!seen.emplace(detail::state_key(profile, h), true).second) return;
    }
    if constexpr (!ScalarTraits<Scalar>::kExact) {
      if (prob < kNearZeroProbability) {
        report.near_zero.push_back(h);
        return;
      }
    }
    const auto stage = detail::stage_profile(profile, h);
    StageCheck<Scalar> check;
    check.history = h;
    check.probability = prob;
    check.deviation = best_stage_deviation(game, std::span<const MixedStrategy<Scalar>>(stage));
    check.ok = is_stage_nash(game, stage);
    report.checks.push_back(check);

    std::vector<detail::Support<Scalar>> supports;
    for (const auto& s : stage) supports.push_back(detail::positive_support(s));
    detail::for_each_joint(supports, [&](const std::vector<int>& a, const Scalar& p) {
      h.push(a);
      rec(h, prob * to_double(p));
      h.pop();
    });
  };
  History root(game.num_players(), n);
  rec(root, 1.0);
  return report;
}

struct EntropyBound {
  int player = 0;
  double entropy = 0.0;
  std::optional<double> beta;  // per-stage entropy floor, when the game qualifies
  std::optional<double> required;  // n * beta
  bool holds = true;
};

struct ExploitationFloor {
  int player = 0;       // whose strategy is exploited
  double floor = 0.0;   // 1 - H(sigma_player) / n
  Rational best_response{0};  // the opponent's optimal average payoff
  bool holds = true;
};

struct EntropyBoundReport {
  std::string branch;  // "zero-sum", "equilibria-at-minmax" or "none"
  std::vector<EntropyBound> bounds;
  std::vector<ExploitationFloor> floors;  // matching pennies only
};

// beta_i: minimal entropy of a minmax strategy (zero-sum games) or of player
// i's part of any stage equilibrium (games whose equilibria all pay the
// minmax level); nullopt otherwise.
std::optional<double> stage_entropy_floor(const StageGame<Rational>& game, int player, std::string* branch = nullptr);

EntropyBoundReport entropy_bound_check(const StageGame<Rational>& game, int n, const StrategyProfile<Rational>& profile,
                                       std::size_t node_limit = kMaxTreeNodes);

struct PotentialTrace {
  std::vector<double> increments;       // E[phi(t+1) - phi(t)], t = 0..n-1, from the tree
  std::vector<double> formula;          // E[2 p(h) - 1 + H(sigma(h))] at the stage-t histories
  std::vector<double> block_entropy;    // E[H of the column's remaining play], t = 0..n
  std::vector<double> expected_payoff;  // E[u(a^t)] for the row
};

// Matching pennies, the column plays `column`, the row answers with the
// column's most likely action. phi = row payoff so far minus the entropy of
// the column's remaining action sequence.
PotentialTrace mp_potential_trace(const StageGame<Rational>& game, int n, const BehavioralStrategy<Rational>& column,
                                  std::size_t node_limit = kMaxTreeNodes);

// Minimum over terminal histories of the number of stages whose stage
// strategy has entropy <= threshold. All histories count, including ones the
// opponents would never produce.
int min_low_entropy_stages(const StageGame<Rational>& game, int n, const BehavioralStrategy<Rational>& strategy,
                           double threshold, std::size_t node_limit = kMaxTreeNodes);

}  // namespace lowrand
