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

#include "lowrand/construct/epsnash.hpp"

#include "lowrand/construct/stagewise.hpp"
#include "lowrand/core/example_games.hpp"
#include "lowrand/solver/zero_sum.hpp"

namespace lowrand {

Integer floor_rational(const Rational& x) {
  Integer num = boost::multiprecision::numerator(x);
  Integer den = boost::multiprecision::denominator(x);
  Integer q = num / den;  // truncates toward zero
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

Integer ceil_rational(const Rational& x) { return -floor_rational(-x); }

void require_stage_nash(const StageGame<Rational>& game, const std::vector<MixedStrategy<Rational>>& profile) {
  validate_profile(game, std::span<const MixedStrategy<Rational>>(profile));
  auto d = best_stage_deviation(game, std::span<const MixedStrategy<Rational>>(profile));
  if (d.gain > 0)
    throw NotStageEquilibrium("not a stage equilibrium: player " + std::to_string(d.player) + " gains " +
                                  format_rational(d.gain) + " by deviating to " +
                                  game.action_labels(d.player)[d.action],
                              d);
}

StrategyProfile<Rational> stagewise_equilibrium(const StageGame<Rational>& game, int n,
                                                const std::vector<MixedStrategy<Rational>>& stage_profile) {
  if (n < 1) throw InvalidInput("horizon must be positive");
  require_stage_nash(game, stage_profile);
  StrategyProfile<Rational> out;
  for (int i = 0; i < game.num_players(); ++i) {
    MixedStrategy<Rational> s = stage_profile[i];
    s.owner = i;
    out.push_back(stationary_strategy(s));
  }
  return out;
}

ZeroSumEpsNash zerosum_epsnash(const StageGame<Rational>& game, int n, const Rational& eps) {
  if (!game.is_zero_sum()) throw DomainError("zerosum_epsnash needs a two-player zero-sum game");
  if (n < 1) throw InvalidInput("horizon must be positive");
  if (eps <= 0 || eps > 1) throw InvalidInput("eps must be in (0, 1]");

  ZeroSumEpsNash out;
  out.mixed_stages = floor_rational(Rational(n) * (Rational(1) - eps)).convert_to<int>();
  auto row = min_entropy_minmax(game, 0);
  auto col = min_entropy_minmax(game, 1);
  out.beta_row = row.beta;
  out.beta_col = col.beta;

  std::size_t best = 0, worst = 0;
  for (std::size_t idx = 1; idx < game.num_profiles(); ++idx) {
    if (game.payoff(idx, 0) > game.payoff(best, 0)) best = idx;
    if (game.payoff(idx, 0) < game.payoff(worst, 0)) worst = idx;
  }
  out.best_profile = game.decode_profile(best);
  out.worst_profile = game.decode_profile(worst);
  out.constant = (game.payoff(best, 0) - game.payoff(worst, 0)) / 2;
  out.bound = out.constant * (Rational(ceil_rational(Rational(n) * eps)) + 1) / n;

  for (int i = 0; i < 2; ++i) {
    std::vector<MixedStrategy<Rational>> stages;
    const auto& minmax = i == 0 ? row.strategy : col.strategy;
    for (int t = 0; t < n; ++t) {
      if (t < out.mixed_stages) {
        stages.push_back(minmax);
      } else {
        const auto& a = (t - out.mixed_stages) % 2 == 0 ? out.best_profile : out.worst_profile;
        stages.push_back(MixedStrategy<Rational>::pure(i, game.num_actions(i), a[i]));
      }
    }
    out.profile.push_back(schedule_strategy(i, std::move(stages)));
  }
  return out;
}

MatchingPenniesEpsNash mp_epsnash(int n, const Rational& eps) {
  if (n < 1) throw InvalidInput("horizon must be positive");
  if (eps < 0 || eps > 1) throw InvalidInput("eps must be in [0, 1]");
  MatchingPenniesEpsNash out;
  out.mixed_stages = floor_rational((Rational(1) - eps) * n).convert_to<int>();
  out.bound = eps + Rational(2) / n;
  constexpr int kHeads = 0, kTails = 1;
  for (int i = 0; i < 2; ++i) {
    std::vector<MixedStrategy<Rational>> stages;
    for (int t = 0; t < n; ++t) {
      if (t < out.mixed_stages) {
        stages.push_back(MixedStrategy<Rational>::uniform(i, 2));
      } else if (i == 0) {
        stages.push_back(MixedStrategy<Rational>::pure(0, 2, kHeads));
      } else {
        stages.push_back(MixedStrategy<Rational>::pure(1, 2, (t - out.mixed_stages) % 2 == 0 ? kTails : kHeads));
      }
    }
    out.profile.push_back(schedule_strategy(i, std::move(stages)));
  }
  return out;
}

}  // namespace lowrand
