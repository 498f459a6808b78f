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

#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>

#include "lowrand/core/game_io.hpp"
#include "lowrand/service/http.hpp"
#include "lowrand/service/play_service.hpp"

using namespace lowrand;
using nlohmann::json;

namespace {

int status_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ServiceError& e) {
    return e.status();
  }
  return 200;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ServiceError& e) {
    return e.what();
  }
  return "";
}

json predictor_request(int n, int L, const std::string& tau, std::uint64_t seed) {
  return {{"game", "matching-pennies"},
          {"n", n},
          {"engine", {{"kind", "predictor"}, {"context_length", L}, {"threshold", tau}}},
          {"seed", seed}};
}

Rational score(const json& state, int player) { return rational_from_json(state["scores"][player]); }

}  // namespace

TEST_CASE("sessions: create, move, state") {
  PlayService svc;
  CHECK(svc.games()["games"].size() >= 3);

  const json s = svc.create_session(predictor_request(100, 2, "3/4", 1));
  const std::string id = s["id"];
  CHECK(id.size() == 32);
  CHECK(s["transcript"].empty());
  CHECK(s["remaining"] == 100);
  CHECK(s["engine"]["kind"] == "predictor");
  CHECK(svc.session_state(id)["transcript"].empty());

  const json r = svc.submit_move(id, {{"action", "H"}});
  const auto u0 = rational_from_json(r["result"]["payoffs"][0]);
  const auto u1 = rational_from_json(r["result"]["payoffs"][1]);
  CHECK(((u0 == 1 && u1 == -1) || (u0 == -1 && u1 == 1)));
  CHECK(score(r, 0) == u0);
  CHECK(r["result"]["human_action"] == "H");
  CHECK(svc.session_state(id)["transcript"].size() == 1);

  CHECK(status_of([&] { svc.submit_move(id, {{"action", "X"}}); }) == 400);
  CHECK(status_of([&] { svc.submit_move(id, {{"action", 2}}); }) == 400);
  CHECK(status_of([&] { svc.submit_move(id, json::object()); }) == 400);
  CHECK(status_of([&] { svc.submit_move("00ff", {{"action", "H"}}); }) == 404);
  CHECK(status_of([&] { svc.session_state("00ff"); }) == 404);
}

TEST_CASE("sessions: invalid configurations") {
  PlayService svc;
  CHECK(message_of([&] { svc.create_session({{"game", "nope"}, {"n", 10}}); }) == "unknown game");
  const std::string learner = message_of([&] {
    svc.create_session({{"game", "matching-pennies"}, {"n", 100}, {"engine", {{"kind", "seed-learner"}}}});
  });
  CHECK(learner.find("predictor") != std::string::npos);
  CHECK(status_of([&] { svc.create_session({{"game", "matching-pennies"}, {"n", 501}}); }) == 400);
  CHECK(status_of([&] { svc.create_session({{"game", "matching-pennies"}, {"n", 0}}); }) == 400);
  CHECK(status_of([&] { svc.create_session({{"game", "matching-pennies"}}); }) == 400);
  CHECK(status_of([&] { svc.create_session(predictor_request(10, 1, "1/2", 1)); }) == 400);
  CHECK(status_of([&] { svc.create_session({{"game", "matching-pennies"}, {"n", 5}, {"engine", {{"kind", "myopic"}}}}); }) ==
        400);
  CHECK(svc.session_count() == 0);
}

TEST_CASE("sessions: finishing") {
  PlayService svc;
  const std::string id = svc.create_session(predictor_request(3, 1, "3/4", 9))["id"];
  for (int t = 0; t < 3; ++t) svc.submit_move(id, {{"action", t % 2}});
  const json done = svc.session_state(id);
  CHECK(done["finished"] == true);
  CHECK(done["remaining"] == 0);
  CHECK(done["report"].contains("human_entropy"));
  CHECK(done["report"]["human_entropy_total"].get<double>() == doctest::Approx(0.918295834054));
  CHECK(message_of([&] { svc.submit_move(id, {{"action", "H"}}); }) == "session complete");
  CHECK(status_of([&] { svc.submit_move(id, {{"action", "H"}}); }) == 409);
}

TEST_CASE("predictor beats a scripted alternating client") {
  PlayService svc;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::string id = svc.create_session(predictor_request(50, 1, "3/4", seed))["id"];
    json last;
    for (int t = 0; t < 50; ++t) {
      last = svc.submit_move(id, {{"action", t % 2 ? "T" : "H"}});
      CHECK(score(last, 0) + score(last, 1) == 0);  // zero-sum: scores always cancel
    }
    CHECK(score(last, 0) > 0);
    CHECK(last["diagnostics"]["human_entropy"].get<double>() == doctest::Approx(1.0));
  }
}

TEST_CASE("engine moves are committed before the human move") {
  // Same seed, same prefix, different futures: the engine's action at every
  // stage of the shared prefix, and the one right after it, must agree.
  PlayService svc;
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 24;
    const std::uint64_t seed = gen();
    const int cut = static_cast<int>(gen() % n);
    std::vector<int> prefix;
    for (int t = 0; t < cut; ++t) prefix.push_back(static_cast<int>(gen() % 2));
    std::vector<std::vector<std::string>> engine_actions;
    for (int variant = 0; variant < 3; ++variant) {
      const std::string id = svc.create_session(predictor_request(n, 2, "3/4", seed))["id"];
      std::vector<std::string> acts;
      for (int t = 0; t < n; ++t) {
        const int move = t < cut ? prefix[t] : static_cast<int>(gen() % 2);
        acts.push_back(svc.submit_move(id, {{"action", move}})["result"]["engine_action"]);
      }
      engine_actions.push_back(acts);
    }
    for (int v = 1; v < 3; ++v)
      for (int t = 0; t <= cut && t < n; ++t) CHECK(engine_actions[v][t] == engine_actions[0][t]);
  }
}

TEST_CASE("sessions are independent under concurrency") {
  PlayService svc;
  std::atomic<int> failures{0};
  std::vector<std::thread> workers;
  for (int w = 0; w < 8; ++w) {
    workers.emplace_back([&, w] {
      try {
        const std::string id = svc.create_session(predictor_request(40, 1, "3/4", 100 + w))["id"];
        for (int t = 0; t < 40; ++t) {
          const json r = svc.submit_move(id, {{"action", (t + w) % 2}});
          if (score(r, 0) + score(r, 1) != 0 || r["stage"] != t + 1) ++failures;
        }
      } catch (...) {
        ++failures;
      }
    });
  }
  for (auto& t : workers) t.join();
  CHECK(failures == 0);
  CHECK(svc.session_count() == 8);
}

TEST_CASE("journal has one line per event") {
  const auto path = std::filesystem::temp_directory_path() / "lowrand_journal_test.jsonl";
  std::filesystem::remove(path);
  {
    ServiceConfig c;
    c.journal = path;
    PlayService svc(c);
    const std::string id = svc.create_session(predictor_request(5, 1, "3/4", 3))["id"];
    for (int t = 0; t < 5; ++t) svc.submit_move(id, {{"action", "T"}});
  }
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    const json doc = json::parse(line);
    CHECK(doc.contains("event"));
    ++lines;
  }
  CHECK(lines == 6);
  std::filesystem::remove(path);
}

TEST_CASE("windowed entropy") {
  CHECK(windowed_entropy({}, 2) == 0.0);
  CHECK(windowed_entropy({0, 0, 0}, 2) == 0.0);
  CHECK(windowed_entropy({0, 1, 0, 1}, 2) == doctest::Approx(1.0));
  std::vector<int> moves(20, 0);
  for (int k = 16; k < 20; ++k) moves[k] = 1;
  CHECK(windowed_entropy(moves, 2) == doctest::Approx(0.811278124459));  // last 16: twelve 0s, four 1s
}

TEST_CASE("HTTP API end to end") {
  PlayService svc;
  httplib::Server server;
  mount_play_api(server, svc);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client cli("127.0.0.1", port);
  auto games = cli.Get("/api/games");
  REQUIRE(games);
  CHECK(games->status == 200);
  CHECK(json::parse(games->body)["games"].size() >= 3);

  auto bad = cli.Post("/api/session", R"({"game": "nope", "n": 10})", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  CHECK(json::parse(bad->body)["error"] == "unknown game");
  auto garbage = cli.Post("/api/session", "{not json", "application/json");
  REQUIRE(garbage);
  CHECK(garbage->status == 400);

  auto created = cli.Post("/api/session", predictor_request(50, 1, "3/4", 5).dump(), "application/json");
  REQUIRE(created);
  CHECK(created->status == 200);
  const std::string id = json::parse(created->body)["id"];
  json last;
  for (int t = 0; t < 50; ++t) {
    auto r = cli.Post("/api/session/" + id + "/move", json{{"action", t % 2 ? "T" : "H"}}.dump(), "application/json");
    REQUIRE(r);
    REQUIRE(r->status == 200);
    last = json::parse(r->body);
    CHECK(score(last, 0) + score(last, 1) == 0);
  }
  CHECK(score(last, 0) > 0);
  auto state = cli.Get("/api/session/" + id);
  REQUIRE(state);
  CHECK(json::parse(state->body)["transcript"].size() == 50);
  CHECK(json::parse(state->body)["finished"] == true);

  auto over = cli.Post("/api/session/" + id + "/move", R"({"action": "H"})", "application/json");
  REQUIRE(over);
  CHECK(over->status == 409);
  CHECK(json::parse(over->body)["error"] == "session complete");
  auto missing = cli.Get("/api/session/abcdef");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  server.stop();
  th.join();
}
