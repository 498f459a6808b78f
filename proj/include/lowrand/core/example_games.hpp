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
#include <string>

#include "lowrand/core/game.hpp"

namespace lowrand {

// The bundled games: "matching-pennies", "extended-mp" (matching pennies with
// a safe Up/Right option for each player), and "mp-punishment" (matching
// pennies with cooperation and punishment actions).
const std::map<std::string, StageGame<Rational>>& example_games();

// Throws InvalidInput("unknown game ...") if absent.
const StageGame<Rational>& example_game(const std::string& name);

// Builds a two-player game from row-major payoff tables.
StageGame<Rational> make_bimatrix_game(std::string name, std::vector<std::string> row_actions,
                                       std::vector<std::string> col_actions,
                                       const Matrix<Rational>& row_payoffs,
                                       const Matrix<Rational>& col_payoffs);

// Two-player zero-sum game from the row player's payoff matrix, actions
// labelled r0.. and c0...
StageGame<Rational> make_zero_sum_game(std::string name, const Matrix<Rational>& row_payoffs);

// True if `game` is matching pennies up to action labels: 2x2, zero-sum, row
// wins 1 on the diagonal and loses 1 off it.
bool is_matching_pennies(const StageGame<Rational>& game);

}  // namespace lowrand
