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

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "lowrand/core/errors.hpp"
#include "lowrand/repeated/strategy.hpp"

namespace lowrand {

inline constexpr int kMaxSeedBits = 16;

// What a decision-table program remembers of its owner's past play.
enum class HistorySummary { kNone, kLastOwn, kOwnHistory };

const char* summary_name(HistorySummary s);
HistorySummary parse_summary(const std::string& name);

// A seeded program as a lookup table: the action at stage t is
// table[t][context * 2^s + seed], with the context computed from the owner's
// own past actions according to `summary`.
struct DecisionTable {
  int owner = 0;
  int num_actions = 2;
  int seed_bits = 0;
  int horizon = 1;
  HistorySummary summary = HistorySummary::kNone;
  std::vector<std::vector<int>> stages;

  static DecisionTable filled(int owner, int num_actions, int seed_bits, int horizon,
                              HistorySummary summary, int action = 0);

  std::uint32_t num_seeds() const { return 1u << seed_bits; }
  std::size_t contexts(int t) const;
  // Context of stage t given the first t stages of h.
  std::size_t context(const History& h, int t) const;
  int action(const History& h, int t, std::uint32_t seed) const {
    return stages[t][context(h, t) * num_seeds() + seed];
  }
  int& entry(int t, std::size_t ctx, std::uint32_t seed) {
    return stages.at(t).at(ctx * num_seeds() + seed);
  }
  // The part of the history the table can still react to.
  std::string context_key(const History& h) const;

  void validate() const;
  nlohmann::json to_json() const;
  static DecisionTable from_json(const nlohmann::json& doc);
};

// Table with every entry drawn uniformly from the owner's actions.
DecisionTable random_decision_table(Rng& rng, int owner, int num_actions, int seed_bits, int horizon,
                                    HistorySummary summary);

// A player with s random bits: a deterministic program (history, seed) ->
// action. As a behavioural strategy, the stage distribution at h is the
// program's output under the seed distribution conditioned on the owner's
// own actions along h. If h contains own actions no seed produces (only
// possible off the owner's support) the last non-empty conditioning is kept.
template <typename Scalar>
class SeededStrategy {
 public:
  using Program = std::function<int(const History&, std::uint32_t)>;

  SeededStrategy(int owner, int num_actions, int seed_bits, Program program)
      : owner_(owner), num_actions_(num_actions), seed_bits_(seed_bits), program_(std::move(program)) {
    if (seed_bits < 0 || seed_bits > kMaxSeedBits) throw InvalidInput("seed bits must be in [0, 16]");
    if (num_actions < 1) throw InvalidInput("seeded strategy needs actions");
    if (!program_) throw InvalidInput("seeded strategy needs a program");
    weights_ = Vector<Scalar>::Constant(num_seeds(), Scalar(1) / Scalar(num_seeds()));
  }

  explicit SeededStrategy(DecisionTable table)
      : SeededStrategy(table.owner, table.num_actions, table.seed_bits,
                       [](const History&, std::uint32_t) { return 0; }) {
    table.validate();
    table_ = std::make_shared<const DecisionTable>(std::move(table));
    program_ = [t = table_](const History& h, std::uint32_t seed) { return t->action(h, h.length(), seed); };
  }

  int owner() const { return owner_; }
  int num_actions() const { return num_actions_; }
  int seed_bits() const { return seed_bits_; }
  std::uint32_t num_seeds() const { return 1u << seed_bits_; }
  const Vector<Scalar>& seed_weights() const { return weights_; }
  const DecisionTable* table() const { return table_.get(); }

  void set_seed_weights(Vector<Scalar> weights) {
    if (weights.size() != static_cast<Eigen::Index>(num_seeds()))
      throw InvalidInput("seed weights need one entry per seed");
    MixedStrategy<Scalar> check{owner_, weights};
    validate(check, static_cast<int>(num_seeds()));
    weights_ = std::move(weights);
  }

  int action(const History& h, std::uint32_t seed) const { return action_at(h, h.length(), seed); }
  // What the program plays at stage t < h.length() given the prefix of h.
  int stage_action(const History& h, int t, std::uint32_t seed) const { return action_at(h, t, seed); }

  // Seeds with positive weight consistent with the owner's play in h.
  std::vector<std::uint32_t> consistent_seeds(const History& h) const {
    std::vector<std::uint32_t> live;
    for (std::uint32_t s = 0; s < num_seeds(); ++s)
      if (ScalarTraits<Scalar>::is_positive(weights_(s))) live.push_back(s);
    std::vector<std::uint32_t> next;
    for (int t = 0; t < h.length(); ++t) {
      const int own = h.action(t, owner_);
      next.clear();
      for (auto s : live)
        if (action_at(h, t, s) == own) next.push_back(s);
      if (!next.empty()) live.swap(next);
    }
    return live;
  }

  MixedStrategy<Scalar> distribution(const History& h) const {
    auto live = consistent_seeds(h);
    MixedStrategy<Scalar> out{owner_, Vector<Scalar>::Zero(num_actions_)};
    Scalar total(0);
    for (auto s : live) {
      out.probs(action_at(h, h.length(), s)) += weights_(s);
      total += weights_(s);
    }
    out.probs /= total;
    return out;
  }

  std::uint32_t sample_seed(Rng& rng) const {
    std::vector<double> w(num_seeds());
    for (std::uint32_t s = 0; s < num_seeds(); ++s) w[s] = to_double(weights_(s));
    return static_cast<std::uint32_t>(sample_index(w, rng));
  }

  // The seed-conditioned behavioural strategy.
  BehavioralStrategy<Scalar> behavioral() const {
    auto self = std::make_shared<const SeededStrategy>(*this);
    BehavioralStrategy<Scalar> b(owner_, num_actions_, StrategyForm::kSeeded, "seeded",
                                 [self](const History& h) { return self->distribution(h); });
    if (table_) {
      b.with_state_key([self](const History& h) {
        std::string key = self->table_->context_key(h);
        key += '#';
        for (auto s : self->consistent_seeds(h)) {
          key += static_cast<char>(s & 0xff);
          key += static_cast<char>(s >> 8);
        }
        return key;
      });
      nlohmann::json doc = table_->to_json();
      if (!is_uniform()) {
        doc["seed_weights"] = nlohmann::json::array();
        for (std::uint32_t s = 0; s < num_seeds(); ++s) doc["seed_weights"].push_back(scalar_to_json(weights_(s)));
      }
      b.with_description(std::move(doc));
    }
    b.with_session([self](Rng& rng) -> std::unique_ptr<PlaySession> {
      return std::make_unique<SeedSession>(self, self->sample_seed(rng));
    });
    b.with_seeded(self);
    return b;
  }

  // The deterministic strategy the program runs for one fixed seed.
  BehavioralStrategy<Scalar> fixed_seed(std::uint32_t seed) const {
    if (seed >= num_seeds()) throw InvalidInput("seed out of range");
    auto self = std::make_shared<const SeededStrategy>(*this);
    const int actions = num_actions_;
    const int owner = owner_;
    BehavioralStrategy<Scalar> b(owner_, num_actions_, StrategyForm::kRule, "fixed-seed",
                                 [self, seed, owner, actions](const History& h) {
                                   return MixedStrategy<Scalar>::pure(owner, actions, self->action(h, seed));
                                 });
    if (table_) b.with_state_key([self](const History& h) { return self->table_->context_key(h); });
    return b;
  }

 private:
  class SeedSession : public PlaySession {
   public:
    SeedSession(std::shared_ptr<const SeededStrategy> s, std::uint32_t seed) : s_(std::move(s)), seed_(seed) {}
    int act(const History& h, Rng&) override { return s_->action(h, seed_); }

   private:
    std::shared_ptr<const SeededStrategy> s_;
    std::uint32_t seed_;
  };

  bool is_uniform() const {
    for (std::uint32_t s = 1; s < num_seeds(); ++s)
      if (weights_(s) != weights_(0)) return false;
    return true;
  }

  int action_at(const History& h, int t, std::uint32_t seed) const {
    int a;
    if (table_) {
      a = table_->action(h, t, seed);
    } else if (t == h.length()) {
      a = program_(h, seed);
    } else {
      a = program_(h.prefix(t), seed);
    }
    if (a < 0 || a >= num_actions_) throw InvalidInput("seeded program returned an invalid action");
    return a;
  }

  int owner_;
  int num_actions_;
  int seed_bits_;
  Program program_;
  Vector<Scalar> weights_;
  std::shared_ptr<const DecisionTable> table_;
};

}  // namespace lowrand
