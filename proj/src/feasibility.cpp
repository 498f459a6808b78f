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

#include "lowrand/solver/feasibility.hpp"

#include "lowrand/solver/simplex.hpp"
#include "lowrand/solver/zero_sum.hpp"

namespace lowrand {

FeasibilityResult check_feasible_ir(const StageGame<Rational>& game,
                                    const PayoffProfile<Rational>& target,
                                    const std::optional<PayoffProfile<Rational>>& minmax) {
  const int k = game.num_players();
  if (target.size() != k) throw InvalidInput("payoff profile length must equal the player count");

  FeasibilityResult result;
  result.minmax = minmax ? *minmax : minmax_profile(game);
  if (result.minmax.size() != k) throw InvalidInput("minmax profile length mismatch");

  const auto profiles = static_cast<Eigen::Index>(game.num_profiles());
  LinearProgram<Rational> lp;
  lp.A = Matrix<Rational>::Zero(k + 1, profiles);
  lp.b = Vector<Rational>::Zero(k + 1);
  lp.relations.assign(static_cast<std::size_t>(k + 1), Relation::kEqual);
  lp.A.row(0).setConstant(Rational(1));
  lp.b(0) = Rational(1);
  for (int i = 0; i < k; ++i) {
    lp.A.row(i + 1) = game.payoffs().col(i).transpose();
    lp.b(i + 1) = target[i];
  }
  lp.c = Vector<Rational>::Zero(profiles);
  LpSolution<Rational> sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    result.verdict = FeasibilityVerdict::kInfeasible;
    result.reason = "payoff profile is not a convex combination of stage payoffs";
    return result;
  }

  FeasibleDecomposition dec;
  dec.denominator = lcm_of_denominators(sol.x);
  for (Eigen::Index idx = 0; idx < profiles; ++idx) {
    if (sol.x(idx) == 0) continue;
    Rational scaled = sol.x(idx) * Rational(dec.denominator);
    dec.terms.push_back({game.decode_profile(static_cast<std::size_t>(idx)), sol.x(idx),
                         boost::multiprecision::numerator(scaled)});
  }
  result.decomposition = std::move(dec);

  for (int i = 0; i < k; ++i) {
    if (target[i] < result.minmax[i]) {
      result.verdict = FeasibilityVerdict::kNotIndividuallyRational;
      result.reason = "player " + std::to_string(i) + " target " + format_rational(target[i]) +
                      " is below the minmax level " + format_rational(result.minmax[i]);
      return result;
    }
  }
  result.verdict = FeasibilityVerdict::kFeasibleIr;
  return result;
}

}  // namespace lowrand
