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
#include <string>
#include <vector>

#include "lowrand/exploit/exploiter.hpp"

namespace lowrand {

struct TranscriptRow {
  int stage = 1;  // 1-based
  int own_action = 0;
  int opponent_action = 0;
  std::optional<std::size_t> posterior_size;
  std::optional<double> confidence;
  Rational running_average{0};  // engine's average payoff over stages 1..stage
};

// One playout of the engine against `opponent` (draws from
// stream_rng(rng_seed, 0)), with the engine's state before each stage.
std::vector<TranscriptRow> run_transcript(const StageGame<Rational>& game, int n, const Exploiter& engine,
                                          const BehavioralStrategy<Rational>& opponent, std::uint64_t rng_seed);

// Rows for an already played history.
std::vector<TranscriptRow> transcript_rows(const StageGame<Rational>& game, const Exploiter& engine, const History& h);

// stage,own_action,opponent_action,posterior_size,confidence,running_average
std::string transcript_csv(const StageGame<Rational>& game, int owner, const std::vector<TranscriptRow>& rows);

struct DominancePair {
  int player = 0;
  int dominating = 0;
  int dominated = 0;
  bool strict = false;  // strictly better against every opponent action
};

struct DominanceReport {
  std::vector<DominancePair> pairs;
  std::vector<std::pair<int, int>> weakly_dominant;  // (player, action) weakly dominating all others
  bool guarantee_void = false;  // a weakly dominant pure strategy exists
};

// Pairwise comparison of pure rows and columns.
DominanceReport weak_dominance_report(const StageGame<Rational>& game);

}  // namespace lowrand
