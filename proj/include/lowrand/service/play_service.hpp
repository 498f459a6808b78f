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
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <json.hpp>

#include "lowrand/core/errors.hpp"

namespace lowrand {

// Error with the HTTP status it maps to.
class ServiceError : public Error {
 public:
  ServiceError(int status, const std::string& what) : Error(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

struct ServiceConfig {
  int max_horizon = 500;
  std::optional<std::filesystem::path> journal;  // one JSON line per event
};

inline constexpr int kHumanEntropyWindow = 16;

// In-process session store behind the play API. Every request document and
// response document is JSON; errors are ServiceError.
//
// create:  {"game", "n", "engine": {"kind": "predictor", "context_length",
//           "threshold", "min_support"} | {"kind": "myopic", "model": strategy},
//           "engine_player" (default 0), "seed" (optional engine rng seed)}
// move:    {"action": label or index}
class PlayService {
 public:
  explicit PlayService(ServiceConfig config = {});
  ~PlayService();

  nlohmann::json games() const;
  nlohmann::json create_session(const nlohmann::json& request);
  nlohmann::json submit_move(const std::string& id, const nlohmann::json& request);
  nlohmann::json session_state(const std::string& id) const;
  std::size_t session_count() const;

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id) const;
  void journal(const nlohmann::json& line);

  ServiceConfig config_;
  mutable std::shared_mutex store_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex journal_mu_;
  std::ofstream journal_;
};

// 128 random bits as 32 hex digits.
std::string new_session_id();

// Plug-in entropy (bits) of the empirical distribution of the last `window`
// entries.
double windowed_entropy(const std::vector<int>& moves, int num_actions, int window = kHumanEntropyWindow);

}  // namespace lowrand
