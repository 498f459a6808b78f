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
#include <string>

#include <json.hpp>

#include "lowrand/core/game.hpp"

namespace lowrand {

// Game documents:
//   {"name": "...", "players": 2, "actions": [["H","T"],["H","T"]],
//    "payoffs": [[[1,-1],[-1,1]], [[-1,1],[1,-1]]]}
// `payoffs` nests one array level per player (indexed by that player's
// action) and ends in an array of k per-player values, each an integer or a
// rational string "p/q".
nlohmann::json game_to_json(const StageGame<Rational>& game);
StageGame<Rational> game_from_json(const nlohmann::json& doc);

StageGame<Rational> load_game_file(const std::filesystem::path& path);
void save_game_file(const StageGame<Rational>& game, const std::filesystem::path& path);

// Resolves a registry name first, then a file path.
StageGame<Rational> resolve_game(const std::string& name_or_path);

nlohmann::json rational_to_json(const Rational& x);
Rational rational_from_json(const nlohmann::json& value);

inline nlohmann::json scalar_to_json(const Rational& x) { return rational_to_json(x); }
inline nlohmann::json scalar_to_json(double x) { return x; }

template <typename Scalar>
Scalar scalar_from_json(const nlohmann::json& value) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return rational_from_json(value);
  } else {
    if (value.is_number()) return value.get<double>();
    return to_double(rational_from_json(value));
  }
}

template <typename Scalar>
nlohmann::json mixed_to_json(const MixedStrategy<Scalar>& s) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index a = 0; a < s.probs.size(); ++a) out.push_back(scalar_to_json(s.probs(a)));
  return out;
}

template <typename Scalar>
MixedStrategy<Scalar> mixed_from_json(const nlohmann::json& value, int owner, int num_actions) {
  if (!value.is_array()) throw InvalidInput("mixed strategy must be an array of probabilities");
  MixedStrategy<Scalar> s{owner, Vector<Scalar>(static_cast<Eigen::Index>(value.size()))};
  for (std::size_t a = 0; a < value.size(); ++a) s.probs(static_cast<Eigen::Index>(a)) = scalar_from_json<Scalar>(value[a]);
  validate(s, num_actions);
  return s;
}

}  // namespace lowrand
