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

#include "lowrand/repeated/strategy_io.hpp"

#include <fstream>

namespace lowrand {

nlohmann::json strategy_to_json(const BehavioralStrategy<Rational>& strategy) {
  if (strategy.description().is_null())
    throw Unsupported("strategy '" + strategy.name() + "' has no file representation");
  return strategy.description();
}

SeededStrategy<Rational> seeded_from_json(const nlohmann::json& doc) {
  SeededStrategy<Rational> s(DecisionTable::from_json(doc));
  if (doc.contains("seed_weights")) {
    const auto& w = doc["seed_weights"];
    if (!w.is_array()) throw InvalidInput("seed_weights must be an array");
    Vector<Rational> weights(static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) weights(static_cast<Eigen::Index>(i)) = rational_from_json(w[i]);
    s.set_seed_weights(std::move(weights));
  }
  return s;
}

BehavioralStrategy<Rational> strategy_from_json(const StageGame<Rational>& game, const nlohmann::json& doc,
                                                const RuleResolver& resolver) {
  if (!doc.is_object()) throw InvalidInput("strategy document must be an object");
  try {
    const std::string form = doc.at("form").get<std::string>();
    const int owner = doc.at("owner").get<int>();
    if (owner < 0 || owner >= game.num_players()) throw InvalidInput("strategy owner out of range");
    const int actions = doc.at("actions").get<int>();
    if (actions != game.num_actions(owner))
      throw InvalidInput("strategy action count does not match the game");

    if (form == "table") {
      StrategyTable<Rational> table;
      for (const auto& e : doc.at("entries")) {
        auto flat = e.at("history").get<std::vector<int>>();
        if (flat.size() % static_cast<std::size_t>(game.num_players()) != 0)
          throw InvalidInput("table history length is not a multiple of the player count");
        table.emplace(std::move(flat), mixed_from_json<Rational>(e.at("strategy"), owner, actions));
      }
      return table_strategy(owner, actions, std::move(table));
    }
    if (form == "seeded") {
      return seeded_from_json(doc).behavioral();
    }
    if (form == "rule") {
      const std::string rule = doc.at("rule").get<std::string>();
      if (rule == "stationary") return stationary_strategy(mixed_from_json<Rational>(doc.at("strategy"), owner, actions));
      if (rule == "schedule") {
        std::vector<MixedStrategy<Rational>> stages;
        for (const auto& s : doc.at("stages")) stages.push_back(mixed_from_json<Rational>(s, owner, actions));
        return schedule_strategy(owner, std::move(stages));
      }
      if (resolver) {
        if (auto s = resolver(game, doc)) return *s;
      }
      throw Unsupported("unknown strategy rule '" + rule + "'");
    }
    throw InvalidInput("unknown strategy form '" + form + "' (table | rule | seeded)");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed strategy document: ") + e.what());
  }
}

nlohmann::json profile_to_json(const StageGame<Rational>& game, int n, const StrategyProfile<Rational>& profile) {
  nlohmann::json doc{{"game", game.name()}, {"horizon", n}};
  doc["strategies"] = nlohmann::json::array();
  for (const auto& s : profile) doc["strategies"].push_back(strategy_to_json(s));
  return doc;
}

StrategyProfile<Rational> profile_from_json(const StageGame<Rational>& game, const nlohmann::json& doc,
                                            const RuleResolver& resolver) {
  if (!doc.is_object() || !doc.contains("strategies") || !doc["strategies"].is_array())
    throw InvalidInput("profile document needs a 'strategies' array");
  StrategyProfile<Rational> profile;
  for (const auto& s : doc["strategies"]) profile.push_back(strategy_from_json(game, s, resolver));
  std::sort(profile.begin(), profile.end(),
            [](const auto& a, const auto& b) { return a.owner() < b.owner(); });
  validate_strategy_profile(game, profile);
  return profile;
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

void save_json_file(const nlohmann::json& doc, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace lowrand
