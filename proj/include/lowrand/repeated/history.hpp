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

#include <span>
#include <string>
#include <vector>

#include "lowrand/core/errors.hpp"
#include "lowrand/core/game.hpp"

namespace lowrand {

// A sequence of joint action profiles of an n-stage game, stored flat
// (stage-major, one int per player).
class History {
 public:
  History() = default;
  History(int num_players, int horizon) : num_players_(num_players), horizon_(horizon) {
    if (num_players < 1) throw InvalidInput("history needs at least one player");
    if (horizon < 1) throw InvalidInput("horizon must be positive");
    actions_.reserve(static_cast<std::size_t>(num_players) * horizon);
  }

  int num_players() const { return num_players_; }
  int horizon() const { return horizon_; }
  int length() const { return num_players_ == 0 ? 0 : static_cast<int>(actions_.size()) / num_players_; }
  bool empty() const { return actions_.empty(); }
  bool terminal() const { return length() == horizon_; }
  int remaining() const { return horizon_ - length(); }

  int action(int stage, int player) const {
    return actions_[static_cast<std::size_t>(stage) * num_players_ + player];
  }
  std::span<const int> profile(int stage) const {
    return {actions_.data() + static_cast<std::size_t>(stage) * num_players_,
            static_cast<std::size_t>(num_players_)};
  }
  const std::vector<int>& flat() const { return actions_; }

  void push(std::span<const int> profile) {
    if (terminal()) throw InvalidInput("history is already terminal");
    if (static_cast<int>(profile.size()) != num_players_)
      throw InvalidInput("profile length != players");
    actions_.insert(actions_.end(), profile.begin(), profile.end());
  }
  void push(std::initializer_list<int> profile) { push(std::span<const int>(profile.begin(), profile.size())); }
  void pop() {
    if (actions_.empty()) throw InvalidInput("pop on empty history");
    actions_.resize(actions_.size() - num_players_);
  }

  History prefix(int len) const {
    History h(num_players_, horizon_);
    h.actions_.assign(actions_.begin(), actions_.begin() + static_cast<std::ptrdiff_t>(len) * num_players_);
    return h;
  }

  // Own past actions of `player`, oldest first.
  std::vector<int> actions_of(int player) const {
    std::vector<int> out(static_cast<std::size_t>(length()));
    for (int t = 0; t < length(); ++t) out[t] = action(t, player);
    return out;
  }

  bool operator==(const History& other) const = default;

 private:
  int num_players_ = 0;
  int horizon_ = 0;
  std::vector<int> actions_;
};

template <typename Scalar>
void validate_history(const StageGame<Scalar>& game, const History& h) {
  if (h.num_players() != game.num_players()) throw InvalidInput("history player count mismatch");
  for (int t = 0; t < h.length(); ++t)
    for (int i = 0; i < h.num_players(); ++i)
      if (h.action(t, i) < 0 || h.action(t, i) >= game.num_actions(i))
        throw InvalidInput("history action out of range at stage " + std::to_string(t));
}

// "H,T;T,T" style rendering with action labels.
template <typename Scalar>
std::string format_history(const StageGame<Scalar>& game, const History& h) {
  std::string out;
  for (int t = 0; t < h.length(); ++t) {
    if (t) out += ';';
    for (int i = 0; i < h.num_players(); ++i) {
      if (i) out += ',';
      out += game.action_labels(i)[h.action(t, i)];
    }
  }
  return out;
}

}  // namespace lowrand
