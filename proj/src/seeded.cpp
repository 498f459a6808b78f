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

#include "lowrand/repeated/seeded.hpp"

namespace lowrand {

const char* summary_name(HistorySummary s) {
  switch (s) {
    case HistorySummary::kNone: return "none";
    case HistorySummary::kLastOwn: return "last-own";
    case HistorySummary::kOwnHistory: return "own-history";
  }
  return "?";
}

HistorySummary parse_summary(const std::string& name) {
  if (name == "none") return HistorySummary::kNone;
  if (name == "last-own") return HistorySummary::kLastOwn;
  if (name == "own-history") return HistorySummary::kOwnHistory;
  throw InvalidInput("unknown history summary '" + name + "' (none | last-own | own-history)");
}

DecisionTable DecisionTable::filled(int owner, int num_actions, int seed_bits, int horizon,
                                    HistorySummary summary, int action) {
  DecisionTable t;
  t.owner = owner;
  t.num_actions = num_actions;
  t.seed_bits = seed_bits;
  t.horizon = horizon;
  t.summary = summary;
  if (seed_bits < 0 || seed_bits > kMaxSeedBits) throw InvalidInput("seed bits must be in [0, 16]");
  if (horizon < 1) throw InvalidInput("horizon must be positive");
  t.stages.resize(horizon);
  for (int s = 0; s < horizon; ++s) t.stages[s].assign(t.contexts(s) * t.num_seeds(), action);
  t.validate();
  return t;
}

std::size_t DecisionTable::contexts(int t) const {
  switch (summary) {
    case HistorySummary::kNone: return 1;
    case HistorySummary::kLastOwn: return t == 0 ? 1 : static_cast<std::size_t>(num_actions);
    case HistorySummary::kOwnHistory: {
      std::size_t c = 1;
      for (int s = 0; s < t; ++s) {
        c *= static_cast<std::size_t>(num_actions);
        if (c > 10'000'000) throw ResourceError("own-history decision table too large");
      }
      return c;
    }
  }
  return 1;
}

std::size_t DecisionTable::context(const History& h, int t) const {
  switch (summary) {
    case HistorySummary::kNone: return 0;
    case HistorySummary::kLastOwn: return t == 0 ? 0 : static_cast<std::size_t>(h.action(t - 1, owner));
    case HistorySummary::kOwnHistory: {
      std::size_t c = 0;
      for (int s = 0; s < t; ++s) c = c * num_actions + static_cast<std::size_t>(h.action(s, owner));
      return c;
    }
  }
  return 0;
}

std::string DecisionTable::context_key(const History& h) const {
  std::string key;
  switch (summary) {
    case HistorySummary::kNone: break;
    case HistorySummary::kLastOwn:
      if (h.length() > 0) key += static_cast<char>('a' + h.action(h.length() - 1, owner));
      break;
    case HistorySummary::kOwnHistory:
      for (int t = 0; t < h.length(); ++t) key += static_cast<char>('a' + h.action(t, owner));
      break;
  }
  return key;
}

void DecisionTable::validate() const {
  if (owner < 0) throw InvalidInput("decision table owner must be >= 0");
  if (num_actions < 1 || num_actions > kMaxActions) throw InvalidInput("decision table needs 1..16 actions");
  if (seed_bits < 0 || seed_bits > kMaxSeedBits) throw InvalidInput("seed bits must be in [0, 16]");
  if (horizon < 1) throw InvalidInput("horizon must be positive");
  if (static_cast<int>(stages.size()) != horizon)
    throw InvalidInput("decision table needs one row per stage");
  std::size_t total = 0;
  for (int t = 0; t < horizon; ++t) {
    const std::size_t want = contexts(t) * num_seeds();
    if (stages[t].size() != want)
      throw InvalidInput("decision table stage " + std::to_string(t) + " needs " + std::to_string(want) +
                         " entries, has " + std::to_string(stages[t].size()));
    for (int a : stages[t])
      if (a < 0 || a >= num_actions) throw InvalidInput("decision table action out of range");
    total += want;
    if (total > 10'000'000) throw ResourceError("decision table exceeds 1e7 entries");
  }
}

nlohmann::json DecisionTable::to_json() const {
  return {{"form", "seeded"},   {"owner", owner},     {"actions", num_actions},
          {"seed_bits", seed_bits}, {"horizon", horizon}, {"summary", summary_name(summary)},
          {"table", stages}};
}

DecisionTable DecisionTable::from_json(const nlohmann::json& doc) {
  try {
    DecisionTable t;
    t.owner = doc.at("owner").get<int>();
    t.num_actions = doc.at("actions").get<int>();
    t.seed_bits = doc.at("seed_bits").get<int>();
    t.horizon = doc.at("horizon").get<int>();
    t.summary = parse_summary(doc.value("summary", std::string("none")));
    t.stages = doc.at("table").get<std::vector<std::vector<int>>>();
    t.validate();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed decision table: ") + e.what());
  }
}

}  // namespace lowrand

namespace lowrand {

DecisionTable random_decision_table(Rng& rng, int owner, int num_actions, int seed_bits, int horizon,
                                    HistorySummary summary) {
  DecisionTable t = DecisionTable::filled(owner, num_actions, seed_bits, horizon, summary);
  for (auto& stage : t.stages)
    for (auto& a : stage) a = static_cast<int>(rng() % static_cast<std::uint64_t>(num_actions));
  return t;
}

}  // namespace lowrand
