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

#include "lowrand/service/play_service.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "lowrand/core/entropy.hpp"
#include "lowrand/core/example_games.hpp"
#include "lowrand/core/game_io.hpp"
#include "lowrand/exploit/predictor.hpp"
#include "lowrand/repeated/strategy_io.hpp"

namespace lowrand {

std::string new_session_id() {
  std::random_device rd;
  std::string id;
  char buf[9];
  for (int k = 0; k < 4; ++k) {
    std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(rd()));
    id += buf;
  }
  return id;
}

double windowed_entropy(const std::vector<int>& moves, int num_actions, int window) {
  const std::size_t start = moves.size() > static_cast<std::size_t>(window) ? moves.size() - window : 0;
  std::vector<double> p(static_cast<std::size_t>(num_actions), 0.0);
  if (start == moves.size()) return 0.0;
  for (std::size_t k = start; k < moves.size(); ++k) p.at(moves[k]) += 1.0;
  for (auto& x : p) x /= static_cast<double>(moves.size() - start);
  return entropy_bits(p);
}

struct PlayService::Session {
  std::mutex mu;
  std::string id;
  StageGame<Rational> game;
  int n = 0;
  int engine_player = 0;
  nlohmann::json engine_config;
  std::optional<Exploiter> engine;
  std::unique_ptr<PlaySession> play;
  Rng rng;
  History history{2, 1};
  std::vector<Rational> scores{Rational(0), Rational(0)};
  std::vector<int> human_moves;
  int pending = -1;  // engine action committed for the current stage

  int human() const { return 1 - engine_player; }

  void commit() { pending = history.terminal() ? -1 : play->act(history, rng); }

  nlohmann::json diagnostics() const {
    // after the last stage, the state the engine was in when it made its final move
    const History at = history.terminal() ? history.prefix(history.length() - 1) : history;
    nlohmann::json d = diagnostics_to_json(game, engine->diagnose(at));
    d["human_entropy"] = windowed_entropy(human_moves, game.num_actions(human()));
    d["human_entropy_window"] = kHumanEntropyWindow;
    return d;
  }

  nlohmann::json transcript() const {
    nlohmann::json t = nlohmann::json::array();
    for (int s = 0; s < history.length(); ++s)
      t.push_back({game.action_labels(0)[history.action(s, 0)], game.action_labels(1)[history.action(s, 1)]});
    return t;
  }

  nlohmann::json state() const {
    nlohmann::json doc;
    doc["id"] = id;
    doc["game"] = game.name();
    doc["n"] = n;
    doc["engine"] = engine_config;
    doc["engine_player"] = engine_player;
    doc["human_player"] = human();
    doc["actions"] = game.actions();
    doc["transcript"] = transcript();
    doc["scores"] = {rational_to_json(scores[0]), rational_to_json(scores[1])};
    doc["stage"] = history.length();
    doc["remaining"] = n - history.length();
    doc["finished"] = history.terminal();
    doc["diagnostics"] = diagnostics();
    if (history.terminal()) {
      doc["report"] = {{"stages", n},
                       {"engine_average", rational_to_json(scores[engine_player] / n)},
                       {"human_average", rational_to_json(scores[human()] / n)},
                       {"human_entropy", windowed_entropy(human_moves, game.num_actions(human()))},
                       {"human_entropy_total", windowed_entropy(human_moves, game.num_actions(human()), n)}};
    }
    return doc;
  }
};

PlayService::PlayService(ServiceConfig config) : config_(std::move(config)) {
  if (config_.journal) {
    journal_.open(*config_.journal, std::ios::app);
    if (!journal_) throw InvalidInput("cannot open journal " + config_.journal->string());
  }
}

PlayService::~PlayService() = default;

namespace {

bool playable(const StageGame<Rational>& g) {
  if (g.num_players() != 2) return false;
  for (int i = 0; i < 2; ++i)
    if (g.num_actions(i) < 2 || g.num_actions(i) > 4) return false;
  return true;
}

}  // namespace

nlohmann::json PlayService::games() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [name, g] : example_games()) {
    if (!playable(g)) continue;
    out.push_back({{"name", name}, {"actions", g.actions()}, {"zero_sum", g.is_zero_sum()}, {"game", game_to_json(g)}});
  }
  return {{"games", out}};
}

std::size_t PlayService::session_count() const {
  std::shared_lock lock(store_mu_);
  return sessions_.size();
}

std::shared_ptr<PlayService::Session> PlayService::find(const std::string& id) const {
  std::shared_lock lock(store_mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "unknown session");
  return it->second;
}

void PlayService::journal(const nlohmann::json& line) {
  if (!journal_.is_open()) return;
  std::lock_guard lock(journal_mu_);
  journal_ << line.dump() << '\n';
  journal_.flush();
}

nlohmann::json PlayService::create_session(const nlohmann::json& request) {
  if (!request.is_object()) throw ServiceError(400, "request must be an object");
  auto s = std::make_shared<Session>();
  try {
    const std::string game = request.value("game", std::string("matching-pennies"));
    const auto& reg = example_games();
    auto it = reg.find(game);
    if (it == reg.end()) throw ServiceError(400, "unknown game");
    s->game = it->second;
    if (!playable(s->game)) throw ServiceError(400, "game must be two-player with two to four actions each");
    if (!request.contains("n") || !request.at("n").is_number_integer()) throw ServiceError(400, "n is required");
    s->n = request.at("n").get<int>();
    if (s->n < 1 || s->n > config_.max_horizon)
      throw ServiceError(400, "n must be in [1, " + std::to_string(config_.max_horizon) + "]");
    s->engine_player = request.value("engine_player", 0);
    if (s->engine_player != 0 && s->engine_player != 1) throw ServiceError(400, "engine_player must be 0 or 1");

    nlohmann::json engine = request.value("engine", nlohmann::json{{"kind", "predictor"}});
    const std::string kind = engine.value("kind", std::string("predictor"));
    if (kind == "predictor") {
      PredictorConfig c = predictor_config_from_json(engine);
      s->engine = make_predictor(s->game, s->engine_player, c);
      engine = predictor_config_to_json(c);
      engine["kind"] = "predictor";
    } else if (kind == "myopic") {
      if (!engine.contains("model"))
        throw ServiceError(400, "the myopic engine needs a model strategy for the human; use the predictor engine");
      const auto model = strategy_from_json(s->game, engine.at("model"));
      if (model.owner() != 1 - s->engine_player) throw ServiceError(400, "model must belong to the human player");
      s->engine = myopic_exploiter(s->game, s->n, model);
    } else if (kind == "seed-learner") {
      throw ServiceError(400,
                         "the seed learner needs a seeded opponent program and human players are not seeded; "
                         "use the predictor engine");
    } else {
      throw ServiceError(400, "unknown engine '" + kind + "'");
    }
    s->engine_config = engine;

    std::uint64_t seed;
    if (request.contains("seed")) {
      seed = request.at("seed").get<std::uint64_t>();
    } else {
      std::random_device rd;
      seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    s->rng = stream_rng(seed, 0);
  } catch (const ServiceError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ServiceError(400, std::string("malformed request: ") + e.what());
  } catch (const Error& e) {
    throw ServiceError(400, e.what());
  }

  s->history = History(2, s->n);
  s->play = s->engine->strategy.start_session(s->rng);
  s->commit();  // stage 1 is fixed before any human move
  nlohmann::json state;
  {
    std::unique_lock lock(store_mu_);
    do {
      s->id = new_session_id();
    } while (sessions_.count(s->id));
    sessions_.emplace(s->id, s);
  }
  {
    std::lock_guard lock(s->mu);
    state = s->state();
  }
  journal({{"event", "create"}, {"id", s->id}, {"game", s->game.name()}, {"n", s->n}, {"engine", s->engine_config}});
  return state;
}

nlohmann::json PlayService::submit_move(const std::string& id, const nlohmann::json& request) {
  auto s = find(id);
  nlohmann::json result;
  nlohmann::json line;
  {
    std::lock_guard lock(s->mu);
    if (s->history.terminal()) throw ServiceError(409, "session complete");
    if (!request.is_object() || !request.contains("action")) throw ServiceError(400, "action is required");
    const auto& a = request.at("action");
    const int human = s->human();
    int move = -1;
    if (a.is_number_integer()) {
      move = a.get<int>();
      if (move < 0 || move >= s->game.num_actions(human)) throw ServiceError(400, "invalid action");
    } else if (a.is_string()) {
      try {
        move = s->game.action_index(human, a.get<std::string>());
      } catch (const Error&) {
        throw ServiceError(400, "invalid action");
      }
    } else {
      throw ServiceError(400, "invalid action");
    }

    std::vector<int> profile(2);
    profile[s->engine_player] = s->pending;
    profile[human] = move;
    s->history.push(profile);
    s->human_moves.push_back(move);
    const int stage = s->history.length();
    nlohmann::json payoffs = nlohmann::json::array();
    for (int i = 0; i < 2; ++i) {
      const Rational& u = s->game.payoff(std::span<const int>(profile), i);
      s->scores[i] += u;
      payoffs.push_back(rational_to_json(u));
    }
    s->commit();
    result = s->state();
    result["result"] = {{"stage", stage},
                        {"engine_action", s->game.action_labels(s->engine_player)[profile[s->engine_player]]},
                        {"human_action", s->game.action_labels(human)[move]},
                        {"payoffs", payoffs}};
    line = {{"event", "move"}, {"id", s->id}, {"stage", stage}, {"actions", profile}, {"scores", result["scores"]}};
  }
  journal(line);
  return result;
}

nlohmann::json PlayService::session_state(const std::string& id) const {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  return s->state();
}

}  // namespace lowrand
