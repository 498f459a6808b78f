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

#include <algorithm>

#include "lowrand/core/game_io.hpp"
#include "lowrand/exploit/distance.hpp"
#include "lowrand/exploit/predictor.hpp"
#include "lowrand/exploit/seed_learner.hpp"
#include "lowrand/solver/zero_sum.hpp"

namespace lowrand {

nlohmann::json diagnostics_to_json(const StageGame<Rational>& game, const EngineDiagnostics& d) {
  nlohmann::json doc;
  doc["engine"] = d.engine;
  doc["exploiting"] = d.exploiting;
  doc["posterior_size"] = d.posterior_size ? nlohmann::json(*d.posterior_size) : nlohmann::json();
  doc["confidence"] = d.confidence ? nlohmann::json(*d.confidence) : nlohmann::json();
  if (d.hypothesis) {
    doc["hypothesis"] = {{"stage", d.hypothesis->stage},
                         {"prediction", mixed_to_json(d.hypothesis->prediction)},
                         {"sd_bound", scalar_to_json(d.hypothesis->sd_bound)}};
    (void)game;
  } else {
    doc["hypothesis"] = nullptr;
  }
  return doc;
}

Exploiter myopic_exploiter(const StageGame<Rational>& game, int n, const BehavioralStrategy<Rational>& opponent) {
  Exploiter e{best_response_exploiter(game, n, opponent), {}};
  e.diagnose = [opponent](const History& h) {
    EngineDiagnostics d;
    d.engine = "myopic-best-response";
    d.exploiting = true;
    d.confidence = to_double(opponent.at(h).probs.maxCoeff());
    return d;
  };
  return e;
}

// ---------------------------------------------------------------------------
// Context predictor

void validate(const PredictorConfig& config) {
  if (config.context_length < 0 || config.context_length > 8) throw InvalidInput("context length must be in [0, 8]");
  if (config.threshold <= Rational(1, 2) || config.threshold > 1)
    throw InvalidInput("predictor threshold must be in (1/2, 1]");
  if (config.min_support < 1) throw InvalidInput("minimum support must be positive");
}

nlohmann::json predictor_config_to_json(const PredictorConfig& config) {
  return {{"context_length", config.context_length},
          {"threshold", scalar_to_json(config.threshold)},
          {"min_support", config.min_support}};
}

PredictorConfig predictor_config_from_json(const nlohmann::json& doc) {
  PredictorConfig c;
  if (doc.contains("context_length")) c.context_length = doc.at("context_length").get<int>();
  if (doc.contains("threshold")) c.threshold = scalar_from_json<Rational>(doc.at("threshold"));
  if (doc.contains("min_support")) c.min_support = doc.at("min_support").get<int>();
  validate(c);
  return c;
}

PredictorState::PredictorState(PredictorConfig config, int opponent_actions)
    : config_(std::move(config)), opponent_actions_(opponent_actions) {
  validate(config_);
  if (opponent_actions < 1) throw InvalidInput("opponent needs actions");
}

std::optional<std::vector<int>> PredictorState::context() const {
  const int L = config_.context_length;
  if (observed() < L) return std::nullopt;
  return std::vector<int>(seen_.end() - L, seen_.end());
}

void PredictorState::push(int opponent_action) {
  if (opponent_action < 0 || opponent_action >= opponent_actions_) throw InvalidInput("opponent action out of range");
  if (auto ctx = context()) {
    auto& c = counts_[*ctx];
    if (c.empty()) c.assign(opponent_actions_, 0);
    ++c[opponent_action];
  }
  seen_.push_back(opponent_action);
}

Prediction PredictorState::predict() const {
  Prediction p;
  p.smoothed.assign(opponent_actions_, Rational(1, opponent_actions_));
  const auto ctx = context();
  if (!ctx) return p;
  auto it = counts_.find(*ctx);
  if (it == counts_.end()) return p;
  const auto& c = it->second;
  int total = 0;
  for (int x : c) total += x;
  p.support = total;
  p.action = static_cast<int>(std::max_element(c.begin(), c.end()) - c.begin());
  const Rational freq(c[p.action], total);
  p.confidence = to_double(freq);
  for (int a = 0; a < opponent_actions_; ++a) p.smoothed[a] = Rational(c[a] + 1, total + opponent_actions_);
  p.confident = total >= config_.min_support && freq >= config_.threshold;
  return p;
}

std::string PredictorState::key() const {
  std::string k;
  for (const auto& [ctx, c] : counts_) {
    for (int a : ctx) k += static_cast<char>('0' + a);
    k += ':';
    for (int x : c) k += std::to_string(x) + ',';
    k += ';';
  }
  k += '@';
  if (auto ctx = context())
    for (int a : *ctx) k += static_cast<char>('0' + a);
  return k;
}

namespace {

PredictorState predictor_state_at(const PredictorConfig& config, int opponent, int opponent_actions, const History& h) {
  PredictorState s(config, opponent_actions);
  for (int t = 0; t < h.length(); ++t) s.push(h.action(t, opponent));
  return s;
}

std::vector<double> predictor_play(const StageGame<Rational>& game, int owner, const Prediction& p) {
  const int actions = game.num_actions(owner);
  std::vector<double> out(actions, 1.0 / actions);
  if (p.confident) {
    std::fill(out.begin(), out.end(), 0.0);
    out[stage_best_response(game, owner, MixedStrategy<Rational>::pure(1 - owner, game.num_actions(1 - owner), p.action))] =
        1.0;
  }
  return out;
}

// Incremental counts for simulation; replays the history if it is not an
// extension of what it has seen.
class PredictorSession : public PlaySession {
 public:
  PredictorSession(StageGame<Rational> game, int owner, PredictorConfig config)
      : game_(std::move(game)), owner_(owner), config_(std::move(config)),
        state_(config_, game_.num_actions(1 - owner)) {}

  int act(const History& h, Rng& rng) override {
    if (h.length() < state_.observed()) state_ = PredictorState(config_, game_.num_actions(1 - owner_));
    for (int t = state_.observed(); t < h.length(); ++t) state_.push(h.action(t, 1 - owner_));
    return sample_index(predictor_play(game_, owner_, state_.predict()), rng);
  }

 private:
  StageGame<Rational> game_;
  int owner_;
  PredictorConfig config_;
  PredictorState state_;
};

}  // namespace

Exploiter make_predictor(const StageGame<Rational>& game, int owner, const PredictorConfig& config) {
  game.require_two_player("predictor_strategy");
  validate(config);
  if (owner < 0 || owner > 1) throw InvalidInput("predictor owner must be 0 or 1");
  const int opponent = 1 - owner;
  const int opp_actions = game.num_actions(opponent);
  const int actions = game.num_actions(owner);
  BehavioralStrategy<Rational> s(
      owner, actions, StrategyForm::kRule, "predictor", [game, owner, config, opponent, opp_actions, actions](const History& h) {
        const Prediction p = predictor_state_at(config, opponent, opp_actions, h).predict();
        if (!p.confident) return MixedStrategy<Rational>::uniform(owner, actions);
        return MixedStrategy<Rational>::pure(
            owner, actions,
            stage_best_response(game, owner, MixedStrategy<Rational>::pure(opponent, opp_actions, p.action)));
      });
  s.with_state_key([config, opponent, opp_actions](const History& h) {
    return predictor_state_at(config, opponent, opp_actions, h).key();
  });
  s.with_session([game, owner, config](Rng&) { return std::make_unique<PredictorSession>(game, owner, config); });
  nlohmann::json doc = {{"form", "rule"}, {"rule", "predictor"}, {"owner", owner}, {"actions", actions}};
  doc.update(predictor_config_to_json(config));
  s.with_description(std::move(doc));

  Exploiter e{s, {}};
  e.diagnose = [config, opponent, opp_actions](const History& h) {
    const Prediction p = predictor_state_at(config, opponent, opp_actions, h).predict();
    EngineDiagnostics d;
    d.engine = "predictor";
    d.exploiting = p.confident;
    d.confidence = p.confidence;
    return d;
  };
  return e;
}

BehavioralStrategy<Rational> predictor_strategy(const StageGame<Rational>& game, int owner,
                                                const PredictorConfig& config) {
  return make_predictor(game, owner, config).strategy;
}

// ---------------------------------------------------------------------------
// Seed learner

MixedStrategy<Rational> SeedPosterior::predict(const SeededStrategy<Rational>& opponent, const History& h) const {
  MixedStrategy<Rational> out{opponent.owner(), Vector<Rational>::Zero(opponent.num_actions())};
  for (std::size_t k = 0; k < seeds.size(); ++k) out.probs(opponent.action(h, seeds[k])) += weights[k];
  return out;
}

namespace {

void normalize(SeedPosterior& post, const SeededStrategy<Rational>& opponent) {
  Rational total(0);
  post.weights.clear();
  for (auto s : post.seeds) total += opponent.seed_weights()(s);
  for (auto s : post.seeds) post.weights.push_back(opponent.seed_weights()(s) / total);
}

struct LearnerView {
  SeedPosterior posterior;
  MixedStrategy<Rational> prediction;
  bool confident = false;
  std::optional<Hypothesis> hypothesis;
};

// Walks the prefixes of h: filter on the opponent's action, predict, note
// the first confident stage.
LearnerView learner_view(const SeededStrategy<Rational>& opponent, const Rational& e, const History& h) {
  const int opp = opponent.owner();
  LearnerView v;
  for (std::uint32_t s = 0; s < opponent.num_seeds(); ++s)
    if (opponent.seed_weights()(s) > 0) v.posterior.seeds.push_back(s);
  for (int t = 0; t <= h.length(); ++t) {
    if (t > 0) {
      std::vector<std::uint32_t> next;
      for (auto s : v.posterior.seeds)
        if (opponent.stage_action(h, t - 1, s) == h.action(t - 1, opp)) next.push_back(s);
      if (next.empty()) throw InternalError("no seed is consistent with the opponent's play");
      v.posterior.seeds.swap(next);
    }
    if (t == h.length() && h.terminal()) break;
    MixedStrategy<Rational> pred{opp, Vector<Rational>::Zero(opponent.num_actions())};
    Rational total(0);
    for (auto s : v.posterior.seeds) {
      pred.probs(opponent.stage_action(h, t, s)) += opponent.seed_weights()(s);
      total += opponent.seed_weights()(s);
    }
    pred.probs /= total;
    const bool confident = distance_to_point_mass(pred.probs) <= e;
    if (confident && !v.hypothesis) v.hypothesis = Hypothesis{t, pred, e};
    if (t == h.length()) {
      v.prediction = pred;
      v.confident = confident;
    }
  }
  normalize(v.posterior, opponent);
  return v;
}

}  // namespace

SeedPosterior seed_posterior(const SeededStrategy<Rational>& opponent, const History& h) {
  SeedPosterior post;
  for (std::uint32_t s = 0; s < opponent.num_seeds(); ++s)
    if (opponent.seed_weights()(s) > 0) post.seeds.push_back(s);
  for (int t = 0; t < h.length(); ++t) {
    std::vector<std::uint32_t> next;
    for (auto s : post.seeds)
      if (opponent.stage_action(h, t, s) == h.action(t, opponent.owner())) next.push_back(s);
    if (next.empty()) throw InternalError("no seed is consistent with the opponent's play");
    post.seeds.swap(next);
  }
  normalize(post, opponent);
  return post;
}

Exploiter make_seed_learner(const StageGame<Rational>& game, const SeededStrategy<Rational>& opponent,
                            const SeedLearnerConfig& config) {
  game.require_two_player("seed_learner_strategy");
  if (!game.is_zero_sum()) throw DomainError("the seed learner needs a zero-sum game");
  if (config.sd_threshold < 0 || config.sd_threshold > 1) throw InvalidInput("sd threshold must be in [0, 1]");
  const int owner = 1 - opponent.owner();
  const int actions = game.num_actions(owner);
  if (opponent.num_actions() != game.num_actions(opponent.owner()))
    throw InvalidInput("opponent program does not match the game");
  auto opp = std::make_shared<const SeededStrategy<Rational>>(opponent);
  const auto mu = min_entropy_minmax(game, owner).strategy;

  BehavioralStrategy<Rational> s(owner, actions, StrategyForm::kRule, "seed-learner",
                                 [game, opp, config, mu, owner, actions](const History& h) {
                                   const LearnerView v = learner_view(*opp, config.sd_threshold, h);
                                   const bool exploit =
                                       v.hypothesis &&
                                       (config.single_shot ? v.hypothesis->stage == h.length() : v.confident);
                                   if (!exploit) return mu;
                                   return MixedStrategy<Rational>::pure(
                                       owner, actions, stage_best_response(game, owner, v.prediction));
                                 });
  if (opponent.table()) {
    s.with_state_key([opp, config](const History& h) {
      const LearnerView v = learner_view(*opp, config.sd_threshold, h);
      std::string key = opp->table()->context_key(h);
      key += '#';
      for (auto seed : v.posterior.seeds) {
        key += static_cast<char>(seed & 0xff);
        key += static_cast<char>(seed >> 8);
      }
      key += v.hypothesis && v.hypothesis->stage < h.length() ? 'E' : 'N';
      return key;
    });
    nlohmann::json opp_doc = opponent.behavioral().description();
    s.with_description({{"form", "rule"},
                        {"rule", "seed-learner"},
                        {"owner", owner},
                        {"actions", actions},
                        {"sd_threshold", scalar_to_json(config.sd_threshold)},
                        {"single_shot", config.single_shot},
                        {"opponent", opp_doc}});
  }

  Exploiter e{s, {}};
  e.diagnose = [opp, config](const History& h) {
    const LearnerView v = learner_view(*opp, config.sd_threshold, h);
    EngineDiagnostics d;
    d.engine = "seed-learner";
    d.posterior_size = v.posterior.seeds.size();
    d.hypothesis = v.hypothesis;
    d.exploiting = v.hypothesis && (config.single_shot ? v.hypothesis->stage == h.length() : v.confident);
    if (!h.terminal()) d.confidence = to_double(v.prediction.probs.maxCoeff());
    return d;
  };
  return e;
}

BehavioralStrategy<Rational> seed_learner_strategy(const StageGame<Rational>& game,
                                                   const SeededStrategy<Rational>& opponent,
                                                   const SeedLearnerConfig& config) {
  return make_seed_learner(game, opponent, config).strategy;
}

// ---------------------------------------------------------------------------

RuleResolver exploit_rules() {
  return [](const StageGame<Rational>& game, const nlohmann::json& doc) -> std::optional<BehavioralStrategy<Rational>> {
    const std::string rule = doc.value("rule", std::string());
    if (rule == "predictor") return predictor_strategy(game, doc.at("owner").get<int>(), predictor_config_from_json(doc));
    if (rule == "seed-learner") {
      SeedLearnerConfig c;
      c.sd_threshold = scalar_from_json<Rational>(doc.at("sd_threshold"));
      c.single_shot = doc.value("single_shot", false);
      return seed_learner_strategy(game, seeded_from_json(doc.at("opponent")), c);
    }
    if (rule == "myopic-best-response")
      return best_response_exploiter(game, 0, strategy_from_json(game, doc.at("opponent"), exploit_rules()));
    return std::nullopt;
  };
}

}  // namespace lowrand
