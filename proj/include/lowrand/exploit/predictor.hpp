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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lowrand/exploit/exploiter.hpp"

namespace lowrand {

struct PredictorConfig {
  int context_length = 2;      // L: how many of the opponent's last actions form the context
  Rational threshold{3, 4};    // tau: empirical frequency needed to act on a prediction
  int min_support = 3;         // observations of the context needed first
};

void validate(const PredictorConfig& config);
nlohmann::json predictor_config_to_json(const PredictorConfig& config);
PredictorConfig predictor_config_from_json(const nlohmann::json& doc);

struct Prediction {
  bool confident = false;
  int action = -1;            // most frequent next action in the context (first on ties)
  int support = 0;            // observations of the current context
  double confidence = 0.0;    // its empirical frequency
  std::vector<Rational> smoothed;  // Laplace-smoothed next-action distribution
};

// Context counts over the opponent's observed actions.
class PredictorState {
 public:
  PredictorState(PredictorConfig config, int opponent_actions);

  void push(int opponent_action);
  int observed() const { return static_cast<int>(seen_.size()); }
  Prediction predict() const;
  // Counts plus current context; equal keys predict alike from here on.
  std::string key() const;
  const std::map<std::vector<int>, std::vector<int>>& counts() const { return counts_; }
  const PredictorConfig& config() const { return config_; }

 private:
  std::optional<std::vector<int>> context() const;

  PredictorConfig config_;
  int opponent_actions_;
  std::vector<int> seen_;
  std::map<std::vector<int>, std::vector<int>> counts_;
};

// Plays uniformly unless the context predictor is confident, in which case
// it plays the stage best response to the predicted action.
Exploiter make_predictor(const StageGame<Rational>& game, int owner, const PredictorConfig& config = {});
BehavioralStrategy<Rational> predictor_strategy(const StageGame<Rational>& game, int owner,
                                                const PredictorConfig& config = {});

}  // namespace lowrand
