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

// Raised when a stage profile that should be a Nash equilibrium is not; the
// best pure deviation is attached.
class NotStageEquilibrium : public DomainError {
 public:
  NotStageEquilibrium(const std::string& what, StageDeviation<Rational> witness)
      : DomainError(what), witness_(std::move(witness)) {}
  const StageDeviation<Rational>& witness() const { return witness_; }

 private:
  StageDeviation<Rational> witness_;
};

// Throws NotStageEquilibrium unless `profile` is a stage Nash equilibrium.
void require_stage_nash(const StageGame<Rational>& game, const std::vector<MixedStrategy<Rational>>& profile);

// Plays the stage equilibrium `stage_profile` at every history.
StrategyProfile<Rational> stagewise_equilibrium(const StageGame<Rational>& game, int n,
                                                const std::vector<MixedStrategy<Rational>>& stage_profile);

}  // namespace lowrand
