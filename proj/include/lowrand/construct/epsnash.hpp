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
#include "lowrand/repeated/strategy.hpp"

namespace lowrand {

struct ZeroSumEpsNash {
  StrategyProfile<Rational> profile;
  int mixed_stages = 0;            // floor(n (1 - eps)) minmax stages
  std::vector<int> best_profile;   // a*: maximal row payoff, lexicographically first
  std::vector<int> worst_profile;  // a-dagger: minimal row payoff
  Rational constant{0};            // c = (p* - p-dagger) / 2
  Rational bound{0};               // c (ceil(n eps) + 1) / n
  double beta_row = 0.0;
  double beta_col = 0.0;
};

// Minimal-entropy minmax play for floor(n (1 - eps)) stages, then a*, a-dagger,
// a*, ... for the rest. History-independent.
ZeroSumEpsNash zerosum_epsnash(const StageGame<Rational>& game, int n, const Rational& eps);

struct MatchingPenniesEpsNash {
  StrategyProfile<Rational> profile;
  int mixed_stages = 0;  // floor((1 - eps) n) uniform stages
  Rational bound{0};     // eps + 2/n
};

// Uniform play for floor((1 - eps) n) stages; afterwards the row plays H and
// the column alternates T, H, T, ...
MatchingPenniesEpsNash mp_epsnash(int n, const Rational& eps);

// floor(x) and ceil(x) for rationals.
Integer floor_rational(const Rational& x);
Integer ceil_rational(const Rational& x);

}  // namespace lowrand
