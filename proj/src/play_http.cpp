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

#include <httplib.h>

#include "lowrand/service/http.hpp"
#include "lowrand/service/play_service.hpp"

namespace lowrand {

namespace {

void reply(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_content(body.dump(), "application/json");
}

template <typename F>
void guarded(httplib::Response& res, F&& f) {
  try {
    reply(res, 200, f());
  } catch (const ServiceError& e) {
    reply(res, e.status(), {{"error", e.what()}});
  } catch (const nlohmann::json::exception& e) {
    reply(res, 400, {{"error", std::string("malformed request: ") + e.what()}});
  } catch (const std::exception& e) {
    reply(res, 500, {{"error", e.what()}});
  }
}

nlohmann::json body_of(const httplib::Request& req) {
  if (req.body.empty()) return nlohmann::json::object();
  return nlohmann::json::parse(req.body);
}

}  // namespace

void mount_play_api(httplib::Server& server, PlayService& service) {
  server.Get("/api/games", [&](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { return service.games(); });
  });
  server.Post("/api/session", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return service.create_session(body_of(req)); });
  });
  server.Post(R"(/api/session/([0-9a-f]+)/move)", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return service.submit_move(req.matches[1], body_of(req)); });
  });
  server.Get(R"(/api/session/([0-9a-f]+))", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return service.session_state(req.matches[1]); });
  });
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

}  // namespace lowrand
