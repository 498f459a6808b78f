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

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lowrand/core/entropy.hpp"
#include "lowrand/core/errors.hpp"
#include "lowrand/core/game.hpp"
#include "lowrand/repeated/history.hpp"
#include "lowrand/repeated/strategy.hpp"

namespace lowrand {

// Exact recursions over the history tree. Every recursion counts the nodes it
// expands and gives up past the limit; strategies with state keys are
// memoized per (stage, keys), so the limit is on distinct states rather than
// on prod |A_i|^n.
inline constexpr std::size_t kMaxTreeNodes = 10'000'000;

namespace detail {

class NodeBudget {
 public:
  explicit NodeBudget(std::size_t limit) : limit_(limit) {}
  void visit() {
    if (++count_ > limit_)
      throw ResourceError("history tree exceeds " + std::to_string(limit_) +
                          " nodes; use Monte Carlo estimation for this horizon");
  }
  std::size_t count() const { return count_; }

 private:
  std::size_t limit_;
  std::size_t count_ = 0;
};

inline void append_key(std::string& key, const std::string& part) {
  key += std::to_string(part.size());
  key += ':';
  key += part;
}

template <typename Scalar>
bool keyed(const StrategyProfile<Scalar>& profile, int skip = -1) {
  for (int i = 0; i < static_cast<int>(profile.size()); ++i)
    if (i != skip && !profile[i].has_state_key()) return false;
  return true;
}

template <typename Scalar>
std::string state_key(const StrategyProfile<Scalar>& profile, const History& h, int skip = -1) {
  std::string key = std::to_string(h.length());
  key += '|';
  for (int i = 0; i < static_cast<int>(profile.size()); ++i)
    if (i != skip) append_key(key, profile[i].state_key(h));
  return key;
}

template <typename Scalar>
using Support = std::vector<std::pair<int, Scalar>>;

template <typename Scalar>
Support<Scalar> positive_support(const MixedStrategy<Scalar>& s) {
  Support<Scalar> out;
  for (int a = 0; a < s.size(); ++a)
    if (ScalarTraits<Scalar>::is_positive(s.probs(a))) out.emplace_back(a, s.probs(a));
  return out;
}

template <typename Scalar>
Support<Scalar> full_support(int num_actions) {
  Support<Scalar> out;
  for (int a = 0; a < num_actions; ++a) out.emplace_back(a, Scalar(1));
  return out;
}

// Calls f(actions, probability) for every joint profile in the product of
// the supports; probability is the product of the per-player weights.
template <typename Scalar, typename F>
void for_each_joint(const std::vector<Support<Scalar>>& supports, F&& f) {
  const std::size_t k = supports.size();
  for (const auto& s : supports)
    if (s.empty()) return;
  std::vector<std::size_t> pos(k, 0);
  std::vector<int> actions(k);
  while (true) {
    Scalar p(1);
    for (std::size_t i = 0; i < k; ++i) {
      actions[i] = supports[i][pos[i]].first;
      p *= supports[i][pos[i]].second;
    }
    f(static_cast<const std::vector<int>&>(actions), p);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++pos[i] < supports[i].size()) break;
      pos[i] = 0;
      if (i == 0) return;
    }
  }
}

template <typename Scalar>
std::vector<MixedStrategy<Scalar>> stage_profile(const StrategyProfile<Scalar>& profile, const History& h) {
  std::vector<MixedStrategy<Scalar>> out;
  out.reserve(profile.size());
  for (const auto& s : profile) out.push_back(s.at(h));
  return out;
}

}  // namespace detail

// E[u*(sigma)]: the expected average payoff over n stages, by recursion over
// the positive-probability part of the history tree.
template <typename Scalar>
PayoffProfile<Scalar> exact_payoff(const StageGame<Scalar>& game, int n, const StrategyProfile<Scalar>& profile,
                                   std::size_t node_limit = kMaxTreeNodes) {
  validate_strategy_profile(game, profile);
  if (n < 1) throw InvalidInput("horizon must be positive");
  const int k = game.num_players();
  const bool memo = detail::keyed(profile);
  std::unordered_map<std::string, Vector<Scalar>> cache;
  detail::NodeBudget budget(node_limit);
  History h(k, n);

  std::function<Vector<Scalar>()> total = [&]() -> Vector<Scalar> {
    if (h.terminal()) return Vector<Scalar>::Zero(k);
    std::string key;
    if (memo) {
      key = detail::state_key(profile, h);
      if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    budget.visit();
    std::vector<detail::Support<Scalar>> supports;
    for (const auto& s : detail::stage_profile(profile, h)) supports.push_back(detail::positive_support(s));
    Vector<Scalar> acc = Vector<Scalar>::Zero(k);
    detail::for_each_joint(supports, [&](const std::vector<int>& a, const Scalar& p) {
      const std::size_t idx = game.profile_index(a);
      h.push(a);
      Vector<Scalar> rest = total();
      h.pop();
      acc += p * (game.payoffs().row(static_cast<Eigen::Index>(idx)).transpose() + rest);
    });
    if (memo) cache.emplace(std::move(key), acc);
    return acc;
  };
  return PayoffProfile<Scalar>{total() / Scalar(n)};
}

namespace detail {

// f(h) = H(sigma_i(h)) + max over children f(h.a); children are all joint
// profiles (`effective` = false) or those with positive probability under
// the full profile.
template <typename Scalar>
double entropy_recursion(const StageGame<Scalar>& game, int n, const StrategyProfile<Scalar>& profile, int player,
                         bool effective, std::size_t node_limit) {
  const int k = game.num_players();
  bool memo;
  if (effective) {
    memo = keyed(profile);
  } else {
    memo = profile[player].has_state_key();
  }
  std::unordered_map<std::string, double> cache;
  NodeBudget budget(node_limit);
  History h(k, n);

  std::vector<Support<Scalar>> all;
  for (int i = 0; i < k; ++i) all.push_back(full_support<Scalar>(game.num_actions(i)));

  std::function<double()> f = [&]() -> double {
    if (h.terminal()) return 0.0;
    std::string key;
    if (memo) {
      if (effective) {
        key = state_key(profile, h);
      } else {
        key = std::to_string(h.length()) + '|' + profile[player].state_key(h);
      }
      if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    budget.visit();
    double best = 0.0;
    double own = 0.0;
    if (effective) {
      std::vector<Support<Scalar>> supports;
      for (int i = 0; i < k; ++i) {
        MixedStrategy<Scalar> s = profile[i].at(h);
        if (i == player) own = shannon_entropy(s);
        supports.push_back(positive_support(s));
      }
      for_each_joint(supports, [&](const std::vector<int>& a, const Scalar&) {
        h.push(a);
        best = std::max(best, f());
        h.pop();
      });
    } else {
      own = shannon_entropy(profile[player].at(h));
      for_each_joint(all, [&](const std::vector<int>& a, const Scalar&) {
        h.push(a);
        best = std::max(best, f());
        h.pop();
      });
    }
    const double value = own + best;
    if (memo) cache.emplace(std::move(key), value);
    return value;
  };
  return f();
}

}  // namespace detail

// Worst-case total entropy of one player's strategy: the maximum over all
// terminal histories of the summed stage entropies along it. The other
// players are irrelevant; `game` only fixes the action sets.
template <typename Scalar>
double strategy_entropy(const StageGame<Scalar>& game, int n, const BehavioralStrategy<Scalar>& strategy,
                        std::size_t node_limit = kMaxTreeNodes) {
  if (n < 1) throw InvalidInput("horizon must be positive");
  const int i = strategy.owner();
  if (i < 0 || i >= game.num_players() || strategy.num_actions() != game.num_actions(i))
    throw InvalidInput("strategy does not fit the game");
  // The recursion reads only profile[i]; pad the others with placeholders.
  StrategyProfile<Scalar> profile;
  for (int j = 0; j < game.num_players(); ++j)
    profile.push_back(j == i ? strategy : uniform_strategy<Scalar>(j, game.num_actions(j)));
  return detail::entropy_recursion(game, n, profile, i, false, node_limit);
}

// The same maximum restricted to histories the full profile reaches with
// positive probability.
template <typename Scalar>
double effective_entropy(const StageGame<Scalar>& game, int n, const StrategyProfile<Scalar>& profile, int player,
                         std::size_t node_limit = kMaxTreeNodes) {
  validate_strategy_profile(game, profile);
  if (n < 1) throw InvalidInput("horizon must be positive");
  if (player < 0 || player >= game.num_players()) throw InvalidInput("player out of range");
  return detail::entropy_recursion(game, n, profile, player, true, node_limit);
}

}  // namespace lowrand
