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

#include <vector>

#include "lowrand/core/game.hpp"

namespace lowrand {

inline constexpr int kMaxGuaranteeActions = 4;

// U(gamma) sampled on a uniform grid over [0, log2 |A_player|], together with
// its least concave majorant on the same grid.
struct GuaranteeCurve {
  int player = 0;
  std::vector<double> gammas;
  std::vector<double> values;
  std::vector<double> cav_values;
  std::vector<Vector<double>> strategies;  // maximizer found for each gamma
};

struct GuaranteePoint {
  double value = 0.0;
  Vector<double> strategy;
};

// max over x in the simplex with H(x) <= gamma of min_j (x' M)_j, for M with
// the maximizing player's actions as rows (at most 4). Dense simplex grid
// followed by pairwise mass-transfer refinement down to step 1e-6.
GuaranteePoint entropy_bounded_guarantee(const Matrix<double>& payoff, double gamma);

GuaranteeCurve guarantee_curve(const StageGame<Rational>& game, int player, int grid_size);

// Upper concave envelope of the points (xs[i], ys[i]) (xs increasing),
// evaluated back at every xs[i].
std::vector<double> upper_concave_envelope(const std::vector<double>& xs,
                                           const std::vector<double>& ys);

// c(gamma): the least best-response gain over v the row player can secure
// against column strategies of entropy <= gamma. A grid minimum, so a
// numerical estimate of the infimum.
double stage_exploit_floor(const StageGame<Rational>& game, double gamma);

}  // namespace lowrand
