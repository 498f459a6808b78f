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

#include "lowrand/core/game_io.hpp"

#include <fstream>
#include <sstream>

#include "lowrand/core/errors.hpp"
#include "lowrand/core/example_games.hpp"

namespace lowrand {
namespace {

void fill_payoffs(const StageGame<Rational>& game, int player, std::vector<int>& prefix,
                  nlohmann::json& out) {
  if (player == game.num_players()) {
    std::size_t idx = game.profile_index(prefix);
    out = nlohmann::json::array();
    for (int i = 0; i < game.num_players(); ++i) out.push_back(rational_to_json(game.payoff(idx, i)));
    return;
  }
  out = nlohmann::json::array();
  for (int a = 0; a < game.num_actions(player); ++a) {
    prefix.push_back(a);
    nlohmann::json child;
    fill_payoffs(game, player + 1, prefix, child);
    out.push_back(std::move(child));
    prefix.pop_back();
  }
}

void read_payoffs(const nlohmann::json& node, const std::vector<std::vector<std::string>>& actions,
                  std::size_t player, std::size_t offset, std::size_t stride,
                  Matrix<Rational>& out) {
  const std::size_t k = actions.size();
  if (player == k) {
    if (!node.is_array() || node.size() != k)
      throw InvalidInput("payoff leaf must list one value per player");
    for (std::size_t i = 0; i < k; ++i)
      out(static_cast<Eigen::Index>(offset), static_cast<Eigen::Index>(i)) = rational_from_json(node[i]);
    return;
  }
  if (!node.is_array() || node.size() != actions[player].size())
    throw InvalidInput("payoff nesting does not match action counts at player " +
                       std::to_string(player));
  std::size_t child_stride = stride / actions[player].size();
  for (std::size_t a = 0; a < actions[player].size(); ++a)
    read_payoffs(node[a], actions, player + 1, offset + a * child_stride, child_stride, out);
}

}  // namespace

nlohmann::json rational_to_json(const Rational& x) {
  if (boost::multiprecision::denominator(x) == 1) {
    Integer num = boost::multiprecision::numerator(x);
    if (num >= Integer(std::numeric_limits<long long>::min()) &&
        num <= Integer(std::numeric_limits<long long>::max()))
      return num.convert_to<long long>();
  }
  return format_rational(x);
}

Rational rational_from_json(const nlohmann::json& value) {
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_float()) return parse_rational(value.dump());
  throw InvalidInput("expected a rational value, got " + value.dump());
}

nlohmann::json game_to_json(const StageGame<Rational>& game) {
  nlohmann::json doc;
  doc["name"] = game.name();
  doc["players"] = game.num_players();
  doc["actions"] = game.actions();
  std::vector<int> prefix;
  fill_payoffs(game, 0, prefix, doc["payoffs"]);
  return doc;
}

StageGame<Rational> game_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidInput("game document must be an object");
  if (!doc.contains("actions") || !doc.contains("payoffs"))
    throw InvalidInput("game document needs 'actions' and 'payoffs'");
  auto actions = doc.at("actions").get<std::vector<std::vector<std::string>>>();
  if (doc.contains("players") && doc.at("players").get<std::size_t>() != actions.size())
    throw InvalidInput("'players' disagrees with the number of action lists");
  if (actions.size() < 2) throw InvalidInput("a game needs at least two players");
  std::size_t profiles = 1;
  for (const auto& a : actions) {
    if (a.empty() || a.size() > static_cast<std::size_t>(kMaxActions))
      throw InvalidInput("action sets must have 1..16 actions");
    profiles *= a.size();
  }
  Matrix<Rational> payoffs(static_cast<Eigen::Index>(profiles),
                           static_cast<Eigen::Index>(actions.size()));
  read_payoffs(doc.at("payoffs"), actions, 0, 0, profiles, payoffs);
  return StageGame<Rational>(std::move(actions), std::move(payoffs), doc.value("name", std::string{}));
}

StageGame<Rational> load_game_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open game file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed game file " + path.string() + ": " + e.what());
  }
  return game_from_json(doc);
}

void save_game_file(const StageGame<Rational>& game, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << game_to_json(game).dump(2) << "\n";
}

StageGame<Rational> resolve_game(const std::string& name_or_path) {
  const auto& games = example_games();
  if (auto it = games.find(name_or_path); it != games.end()) return it->second;
  if (std::filesystem::exists(name_or_path)) return load_game_file(name_or_path);
  throw InvalidInput("unknown game '" + name_or_path + "'");
}

}  // namespace lowrand
