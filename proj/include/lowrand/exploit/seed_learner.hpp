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

#include "lowrand/exploit/exploiter.hpp"
#include "lowrand/repeated/seeded.hpp"

namespace lowrand {

struct SeedLearnerConfig {
  Rational sd_threshold{0};  // e: emit once the prediction is within e of a point mass
  bool single_shot = false;  // exploit only at the emission stage, minmax otherwise
};

// Seeds (with their prior weights) consistent with everything the opponent
// has played in h.
struct SeedPosterior {
  std::vector<std::uint32_t> seeds;
  std::vector<Rational> weights;  // normalized

  MixedStrategy<Rational> predict(const SeededStrategy<Rational>& opponent, const History& h) const;
};

// Throws InternalError when no seed explains the opponent's play.
SeedPosterior seed_posterior(const SeededStrategy<Rational>& opponent, const History& h);

// Exact Bayesian learner against a known seeded program: minmax play until
// the posterior prediction is e-close to a point mass (the hypothesis), then
// the stage best response to the current prediction whenever it still
// passes that test, minmax otherwise. Filtering never stops.
Exploiter make_seed_learner(const StageGame<Rational>& game, const SeededStrategy<Rational>& opponent,
                            const SeedLearnerConfig& config = {});
BehavioralStrategy<Rational> seed_learner_strategy(const StageGame<Rational>& game,
                                                   const SeededStrategy<Rational>& opponent,
                                                   const SeedLearnerConfig& config = {});

}  // namespace lowrand
