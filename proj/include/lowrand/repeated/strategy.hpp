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

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lowrand/core/errors.hpp"
#include "lowrand/core/game.hpp"
#include "lowrand/core/game_io.hpp"
#include "lowrand/repeated/history.hpp"
#include "lowrand/repeated/random.hpp"

namespace lowrand {

enum class StrategyForm { kTable, kRule, kSeeded };

inline const char* form_name(StrategyForm form) {
  switch (form) {
    case StrategyForm::kTable: return "table";
    case StrategyForm::kRule: return "rule";
    case StrategyForm::kSeeded: return "seeded";
  }
  return "?";
}

// Per-playout state of one player during simulation. Sessions see the
// history before the current stage and return an action.
class PlaySession {
 public:
  virtual ~PlaySession() = default;
  virtual int act(const History& h, Rng& rng) = 0;
};

template <typename Scalar>
class SeededStrategy;

// sigma_i: a map from non-terminal histories to mixed stage strategies.
//
// The optional state key is what makes the tree recursions tractable: two
// histories of equal length with equal keys must induce the same behaviour on
// every continuation. Strategies without a key are evaluated history by
// history.
template <typename Scalar>
class BehavioralStrategy {
 public:
  using Policy = std::function<MixedStrategy<Scalar>(const History&)>;
  using StateKey = std::function<std::string(const History&)>;
  using SessionFactory = std::function<std::unique_ptr<PlaySession>(Rng&)>;

  BehavioralStrategy(int owner, int num_actions, StrategyForm form, std::string name, Policy policy)
      : owner_(owner), num_actions_(num_actions), form_(form), name_(std::move(name)),
        policy_(std::move(policy)) {
    if (num_actions < 1) throw InvalidInput("strategy needs at least one action");
    if (!policy_) throw InvalidInput("strategy needs a policy");
  }

  int owner() const { return owner_; }
  int num_actions() const { return num_actions_; }
  StrategyForm form() const { return form_; }
  const std::string& name() const { return name_; }

  MixedStrategy<Scalar> at(const History& h) const {
    if (h.terminal()) throw InvalidInput("no stage strategy at a terminal history");
    MixedStrategy<Scalar> s = policy_(h);
    s.owner = owner_;
    validate(s, num_actions_);
    return s;
  }

  bool has_state_key() const { return static_cast<bool>(key_); }
  std::string state_key(const History& h) const { return key_ ? key_(h) : std::string(); }

  BehavioralStrategy& with_state_key(StateKey key) {
    key_ = std::move(key);
    return *this;
  }
  BehavioralStrategy& with_session(SessionFactory factory) {
    session_ = std::move(factory);
    return *this;
  }
  BehavioralStrategy& with_description(nlohmann::json doc) {
    description_ = std::move(doc);
    return *this;
  }
  BehavioralStrategy& with_seeded(std::shared_ptr<const SeededStrategy<Scalar>> seeded) {
    seeded_ = std::move(seeded);
    return *this;
  }

  // Structured description for the strategy file format; null when the
  // strategy cannot be serialized (e.g. adaptive engines).
  const nlohmann::json& description() const { return description_; }
  const SeededStrategy<Scalar>* seeded() const { return seeded_.get(); }

  std::unique_ptr<PlaySession> start_session(Rng& rng) const {
    if (session_) return session_(rng);
    return std::make_unique<PolicySession>(*this);
  }

 private:
  class PolicySession : public PlaySession {
   public:
    explicit PolicySession(BehavioralStrategy s) : s_(std::move(s)) {}
    int act(const History& h, Rng& rng) override { return sample_action(s_.at(h), rng); }

   private:
    BehavioralStrategy s_;
  };

  int owner_;
  int num_actions_;
  StrategyForm form_;
  std::string name_;
  Policy policy_;
  StateKey key_;
  SessionFactory session_;
  nlohmann::json description_;
  std::shared_ptr<const SeededStrategy<Scalar>> seeded_;
};

template <typename Scalar>
using StrategyProfile = std::vector<BehavioralStrategy<Scalar>>;

namespace detail {

// Samples history-independent stage strategies from precomputed doubles.
class ScheduleSession : public PlaySession {
 public:
  explicit ScheduleSession(std::shared_ptr<const std::vector<std::vector<double>>> stages)
      : stages_(std::move(stages)) {}
  int act(const History& h, Rng& rng) override {
    const auto& p = stages_->size() == 1 ? stages_->front() : stages_->at(h.length());
    return sample_index(p, rng);
  }

 private:
  std::shared_ptr<const std::vector<std::vector<double>>> stages_;
};

template <typename Scalar>
std::shared_ptr<const std::vector<std::vector<double>>> to_doubles(const std::vector<MixedStrategy<Scalar>>& stages) {
  auto out = std::make_shared<std::vector<std::vector<double>>>();
  for (const auto& s : stages) {
    std::vector<double> p(static_cast<std::size_t>(s.size()));
    for (int a = 0; a < s.size(); ++a) p[a] = to_double(s.probs(a));
    out->push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

template <typename Scalar>
void validate_strategy_profile(const StageGame<Scalar>& game, const StrategyProfile<Scalar>& profile) {
  if (static_cast<int>(profile.size()) != game.num_players())
    throw InvalidInput("strategy profile needs one strategy per player");
  for (int i = 0; i < game.num_players(); ++i) {
    if (profile[i].owner() != i)
      throw InvalidInput("strategy " + std::to_string(i) + " is owned by player " +
                         std::to_string(profile[i].owner()));
    if (profile[i].num_actions() != game.num_actions(i))
      throw InvalidInput("strategy of player " + std::to_string(i) + " has the wrong action count");
  }
}

// The same mixed strategy at every history.
template <typename Scalar>
BehavioralStrategy<Scalar> stationary_strategy(const MixedStrategy<Scalar>& s) {
  validate(s, s.size());
  nlohmann::json doc{{"form", "rule"}, {"rule", "stationary"}, {"owner", s.owner},
                     {"actions", s.size()}, {"strategy", mixed_to_json(s)}};
  return BehavioralStrategy<Scalar>(s.owner, s.size(), StrategyForm::kRule, "stationary",
                                    [s](const History&) { return s; })
      .with_state_key([](const History&) { return std::string(); })
      .with_session([d = detail::to_doubles<Scalar>({s})](Rng&) -> std::unique_ptr<PlaySession> {
        return std::make_unique<detail::ScheduleSession>(d);
      })
      .with_description(std::move(doc));
}

template <typename Scalar>
BehavioralStrategy<Scalar> pure_strategy(int owner, int num_actions, int action) {
  return stationary_strategy(MixedStrategy<Scalar>::pure(owner, num_actions, action));
}

template <typename Scalar>
BehavioralStrategy<Scalar> uniform_strategy(int owner, int num_actions) {
  return stationary_strategy(MixedStrategy<Scalar>::uniform(owner, num_actions));
}

// Stage t plays stages[t] regardless of what happened before.
template <typename Scalar>
BehavioralStrategy<Scalar> schedule_strategy(int owner, std::vector<MixedStrategy<Scalar>> stages) {
  if (stages.empty()) throw InvalidInput("schedule needs at least one stage");
  const int num_actions = stages.front().size();
  nlohmann::json doc{{"form", "rule"}, {"rule", "schedule"}, {"owner", owner}, {"actions", num_actions}};
  doc["stages"] = nlohmann::json::array();
  for (auto& s : stages) {
    s.owner = owner;
    validate(s, num_actions);
    doc["stages"].push_back(mixed_to_json(s));
  }
  auto doubles = detail::to_doubles(stages);
  auto shared = std::make_shared<const std::vector<MixedStrategy<Scalar>>>(std::move(stages));
  return BehavioralStrategy<Scalar>(owner, num_actions, StrategyForm::kRule, "schedule",
                                    [shared](const History& h) {
                                      if (h.length() >= static_cast<int>(shared->size()))
                                        throw InvalidInput("schedule shorter than the horizon");
                                      return (*shared)[h.length()];
                                    })
      .with_state_key([](const History&) { return std::string(); })
      .with_session([doubles](Rng&) -> std::unique_ptr<PlaySession> {
        return std::make_unique<detail::ScheduleSession>(doubles);
      })
      .with_description(std::move(doc));
}

// Explicit table keyed by the flat history vector.
template <typename Scalar>
using StrategyTable = std::map<std::vector<int>, MixedStrategy<Scalar>>;

template <typename Scalar>
BehavioralStrategy<Scalar> table_strategy(int owner, int num_actions, StrategyTable<Scalar> table) {
  nlohmann::json doc{{"form", "table"}, {"owner", owner}, {"actions", num_actions}};
  doc["entries"] = nlohmann::json::array();
  for (auto& [flat, s] : table) {
    s.owner = owner;
    validate(s, num_actions);
    doc["entries"].push_back({{"history", flat}, {"strategy", mixed_to_json(s)}});
  }
  auto shared = std::make_shared<const StrategyTable<Scalar>>(std::move(table));
  return BehavioralStrategy<Scalar>(owner, num_actions, StrategyForm::kTable, "table",
                                    [shared](const History& h) {
                                      auto it = shared->find(h.flat());
                                      if (it == shared->end())
                                        throw InvalidInput("strategy table has no entry for a history of length " +
                                                           std::to_string(h.length()));
                                      return it->second;
                                    })
      .with_description(std::move(doc));
}

inline constexpr std::size_t kMaxTableEntries = 1'000'000;

// Materializes sigma_i at every non-terminal history of the n-stage game.
template <typename Scalar>
BehavioralStrategy<Scalar> induced_table(const StageGame<Scalar>& game, int n,
                                         const BehavioralStrategy<Scalar>& strategy) {
  StrategyTable<Scalar> table;
  History h(game.num_players(), n);
  std::function<void()> walk = [&]() {
    if (h.terminal()) return;
    if (table.size() >= kMaxTableEntries)
      throw ResourceError("explicit strategy table would exceed 1e6 histories");
    table.emplace(h.flat(), strategy.at(h));
    for (std::size_t idx = 0; idx < game.num_profiles(); ++idx) {
      auto a = game.decode_profile(idx);
      h.push(a);
      walk();
      h.pop();
    }
  };
  walk();
  return table_strategy(strategy.owner(), strategy.num_actions(), std::move(table));
}

}  // namespace lowrand
