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

#include "lowrand/core/example_games.hpp"

namespace lowrand {
namespace {

Matrix<Rational> ints(int rows, int cols, std::initializer_list<int> values) {
  Matrix<Rational> m(rows, cols);
  auto it = values.begin();
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = Rational(*it++);
  return m;
}

std::map<std::string, StageGame<Rational>> build_registry() {
  std::map<std::string, StageGame<Rational>> games;

  games.emplace("matching-pennies",
                make_bimatrix_game("matching-pennies", {"H", "T"}, {"H", "T"},
                                   ints(2, 2, {1, -1, -1, 1}), ints(2, 2, {-1, 1, 1, -1})));

  // Rows U, H, T, D; columns L, H, T, R.
  games.emplace("extended-mp",
                make_bimatrix_game("extended-mp", {"U", "H", "T", "D"}, {"L", "H", "T", "R"},
                                   ints(4, 4,
                                        {0, 0, 0, 0,      //
                                         0, 1, -1, -1,    //
                                         0, -1, 1, -1,    //
                                         0, -1, -1, 1}),  //
                                   ints(4, 4,
                                        {-1, -1, -1, 0,  //
                                         -1, -1, 1, 0,   //
                                         -1, 1, -1, 0,   //
                                         0, 1, 1, 0})));

  // Rows and columns C, H, T, P.
  games.emplace("mp-punishment",
                make_bimatrix_game("mp-punishment", {"C", "H", "T", "P"}, {"C", "H", "T", "P"},
                                   ints(4, 4,
                                        {3, -3, -3, -3,   //
                                         6, 1, -1, -3,    //
                                         6, -1, 1, -3,    //
                                         -3, -3, -3, -4}),
                                   ints(4, 4,
                                        {3, 6, 6, -3,     //
                                         -3, -1, 1, -3,   //
                                         -3, 1, -1, -3,   //
                                         -3, -3, -3, -4})));
  return games;
}

}  // namespace

StageGame<Rational> make_bimatrix_game(std::string name, std::vector<std::string> row_actions,
                                       std::vector<std::string> col_actions,
                                       const Matrix<Rational>& row_payoffs,
                                       const Matrix<Rational>& col_payoffs) {
  const auto rows = static_cast<Eigen::Index>(row_actions.size());
  const auto cols = static_cast<Eigen::Index>(col_actions.size());
  if (row_payoffs.rows() != rows || row_payoffs.cols() != cols || col_payoffs.rows() != rows ||
      col_payoffs.cols() != cols)
    throw InvalidInput("payoff tables do not match the action lists");
  Matrix<Rational> flat(rows * cols, 2);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      flat(r * cols + c, 0) = row_payoffs(r, c);
      flat(r * cols + c, 1) = col_payoffs(r, c);
    }
  return StageGame<Rational>({std::move(row_actions), std::move(col_actions)}, std::move(flat),
                             std::move(name));
}

StageGame<Rational> make_zero_sum_game(std::string name, const Matrix<Rational>& row_payoffs) {
  std::vector<std::string> rows, cols;
  for (Eigen::Index r = 0; r < row_payoffs.rows(); ++r) rows.push_back("r" + std::to_string(r));
  for (Eigen::Index c = 0; c < row_payoffs.cols(); ++c) cols.push_back("c" + std::to_string(c));
  Matrix<Rational> neg = -row_payoffs;
  return make_bimatrix_game(std::move(name), std::move(rows), std::move(cols), row_payoffs, neg);
}

const std::map<std::string, StageGame<Rational>>& example_games() {
  static const auto registry = build_registry();
  return registry;
}

const StageGame<Rational>& example_game(const std::string& name) {
  const auto& games = example_games();
  auto it = games.find(name);
  if (it == games.end()) throw InvalidInput("unknown game '" + name + "'");
  return it->second;
}

bool is_matching_pennies(const StageGame<Rational>& game) {
  if (game.num_players() != 2 || game.num_actions(0) != 2 || game.num_actions(1) != 2) return false;
  if (!game.is_zero_sum()) return false;
  Matrix<Rational> a = game.bimatrix(0);
  return a(0, 0) == 1 && a(1, 1) == 1 && a(0, 1) == -1 && a(1, 0) == -1;
}

}  // namespace lowrand
