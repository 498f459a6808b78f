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

#include <filesystem>
#include <functional>
#include <optional>

#include <json.hpp>

#include "lowrand/repeated/seeded.hpp"
#include "lowrand/repeated/strategy.hpp"

namespace lowrand {

// Strategy documents. Every document has "form" (table | rule | seeded),
// "owner" and "actions":
//   table:  "entries": [{"history": [flat action indices], "strategy": [p...]}]
//   rule:   "rule": name plus rule parameters ("stationary": "strategy";
//           "schedule": "stages"; constructions add their own rules)
//   seeded: "seed_bits", "horizon", "summary", "table" (per stage, context
//           major, one action per seed), optional "seed_weights"
// Probabilities are integers or "p/q" strings.

// Hook for rules defined outside the engine; returns nullopt when the rule
// name is not its own.
using RuleResolver = std::function<std::optional<BehavioralStrategy<Rational>>(const StageGame<Rational>&,
                                                                               const nlohmann::json&)>;

nlohmann::json strategy_to_json(const BehavioralStrategy<Rational>& strategy);
BehavioralStrategy<Rational> strategy_from_json(const StageGame<Rational>& game, const nlohmann::json& doc,
                                                const RuleResolver& resolver = {});

// {"game": name, "horizon": n, "strategies": [...]}
nlohmann::json profile_to_json(const StageGame<Rational>& game, int n, const StrategyProfile<Rational>& profile);
StrategyProfile<Rational> profile_from_json(const StageGame<Rational>& game, const nlohmann::json& doc,
                                            const RuleResolver& resolver = {});

nlohmann::json load_json_file(const std::filesystem::path& path);
void save_json_file(const nlohmann::json& doc, const std::filesystem::path& path);

// A seeded strategy read from a decision-table document.
SeededStrategy<Rational> seeded_from_json(const nlohmann::json& doc);

}  // namespace lowrand
