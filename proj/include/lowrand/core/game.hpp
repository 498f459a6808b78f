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
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lowrand/core/errors.hpp"
#include "lowrand/core/scalar.hpp"

namespace lowrand {

inline constexpr int kMaxActions = 16;

// A finite strategic game <N, (A_i), (u_i)>. Payoffs are a dense tensor
// flattened to a (profiles x players) matrix; profiles are enumerated in
// mixed radix with player 0 as the most significant digit.
template <typename Scalar>
class StageGame {
 public:
  StageGame() = default;

  StageGame(std::vector<std::vector<std::string>> actions, Matrix<Scalar> payoffs,
            std::string name = {})
      : name_(std::move(name)), actions_(std::move(actions)), payoffs_(std::move(payoffs)) {
    if (actions_.size() < 2) throw InvalidInput("a game needs at least two players");
    std::size_t profiles = 1;
    for (const auto& labels : actions_) {
      if (labels.empty()) throw InvalidInput("every player needs at least one action");
      if (labels.size() > static_cast<std::size_t>(kMaxActions))
        throw InvalidInput("action sets are capped at 16 actions");
      for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = a + 1; b < labels.size(); ++b)
          if (labels[a] == labels[b])
            throw InvalidInput("duplicate action label '" + labels[a] + "'");
      profiles *= labels.size();
    }
    if (static_cast<std::size_t>(payoffs_.rows()) != profiles ||
        static_cast<std::size_t>(payoffs_.cols()) != actions_.size())
      throw InvalidInput("payoff tensor must have prod|A_i| x k entries");
    strides_.assign(actions_.size(), 1);
    for (int i = static_cast<int>(actions_.size()) - 2; i >= 0; --i)
      strides_[i] = strides_[i + 1] * actions_[i + 1].size();
  }

  const std::string& name() const { return name_; }
  int num_players() const { return static_cast<int>(actions_.size()); }
  int num_actions(int player) const { return static_cast<int>(actions_.at(player).size()); }
  const std::vector<std::string>& action_labels(int player) const { return actions_.at(player); }
  const std::vector<std::vector<std::string>>& actions() const { return actions_; }
  std::size_t num_profiles() const { return static_cast<std::size_t>(payoffs_.rows()); }
  const Matrix<Scalar>& payoffs() const { return payoffs_; }

  std::size_t profile_index(std::span<const int> profile) const {
    if (profile.size() != actions_.size()) throw InvalidInput("profile length != players");
    std::size_t index = 0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (profile[i] < 0 || profile[i] >= num_actions(static_cast<int>(i)))
        throw InvalidInput("action index out of range");
      index += strides_[i] * static_cast<std::size_t>(profile[i]);
    }
    return index;
  }

  std::vector<int> decode_profile(std::size_t index) const {
    std::vector<int> profile(actions_.size());
    for (std::size_t i = 0; i < actions_.size(); ++i) {
      profile[i] = static_cast<int>(index / strides_[i]);
      index %= strides_[i];
    }
    return profile;
  }

  const Scalar& payoff(std::size_t profile, int player) const { return payoffs_(profile, player); }
  const Scalar& payoff(std::span<const int> profile, int player) const {
    return payoffs_(profile_index(profile), player);
  }

  // Two-player view: payoffs of `player` with rows indexed by player 0's
  // actions and columns by player 1's.
  Matrix<Scalar> bimatrix(int player) const {
    require_two_player("bimatrix");
    return payoffs_.col(player).reshaped(num_actions(1), num_actions(0)).transpose();
  }

  bool is_zero_sum() const {
    if (num_players() != 2) return false;
    for (Eigen::Index r = 0; r < payoffs_.rows(); ++r)
      if (!ScalarTraits<Scalar>::is_zero(payoffs_(r, 0) + payoffs_(r, 1))) return false;
    return true;
  }

  int action_index(int player, std::string_view label) const {
    const auto& labels = action_labels(player);
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end())
      throw InvalidInput("unknown action '" + std::string(label) + "' for player " +
                         std::to_string(player));
    return static_cast<int>(it - labels.begin());
  }

  void require_two_player(std::string_view what) const {
    if (num_players() != 2)
      throw Unsupported(std::string(what) + " requires a two-player game");
  }

  template <typename To>
  StageGame<To> cast() const {
    return StageGame<To>(actions_, matrix_cast<To>(payoffs_), name_);
  }

 private:
  std::string name_;
  std::vector<std::vector<std::string>> actions_;
  Matrix<Scalar> payoffs_;
  std::vector<std::size_t> strides_;
};

// A distribution over one player's actions.
template <typename Scalar>
struct MixedStrategy {
  int owner = 0;
  Vector<Scalar> probs;

  static MixedStrategy pure(int owner, int num_actions, int action) {
    MixedStrategy s{owner, Vector<Scalar>::Zero(num_actions)};
    s.probs(action) = Scalar(1);
    return s;
  }

  static MixedStrategy uniform(int owner, int num_actions) {
    return MixedStrategy{owner, Vector<Scalar>::Constant(num_actions, Scalar(1) / Scalar(num_actions))};
  }

  int size() const { return static_cast<int>(probs.size()); }

  bool is_pure() const {
    for (Eigen::Index a = 0; a < probs.size(); ++a)
      if (probs(a) == Scalar(1)) return true;
    return false;
  }

  std::vector<int> support() const {
    std::vector<int> s;
    for (Eigen::Index a = 0; a < probs.size(); ++a)
      if (ScalarTraits<Scalar>::is_positive(probs(a))) s.push_back(static_cast<int>(a));
    return s;
  }

  // Lexicographically first action of maximal probability.
  int most_likely() const {
    int best = 0;
    for (Eigen::Index a = 1; a < probs.size(); ++a)
      if (probs(a) > probs(best)) best = static_cast<int>(a);
    return best;
  }

  template <typename To>
  MixedStrategy<To> cast() const {
    return MixedStrategy<To>{owner, vector_cast<To>(probs)};
  }

  bool operator==(const MixedStrategy& other) const {
    return owner == other.owner && probs.size() == other.probs.size() && probs == other.probs;
  }
};

// Throws InvalidInput unless `s` is a distribution over `num_actions` actions
// (weights within 1e-9 of summing to one; exact for rationals).
template <typename Scalar>
void validate(const MixedStrategy<Scalar>& s, int num_actions) {
  if (s.size() != num_actions)
    throw InvalidInput("mixed strategy has " + std::to_string(s.size()) + " weights, expected " +
                       std::to_string(num_actions));
  Scalar total(0);
  for (Eigen::Index a = 0; a < s.probs.size(); ++a) {
    if (s.probs(a) < Scalar(0)) throw InvalidInput("negative probability in mixed strategy");
    total += s.probs(a);
  }
  if constexpr (ScalarTraits<Scalar>::kExact) {
    if (total != Scalar(1)) throw InvalidInput("mixed strategy weights do not sum to 1");
  } else {
    if (std::abs(total - 1.0) > 1e-9) throw InvalidInput("mixed strategy weights do not sum to 1");
  }
}

template <typename Scalar>
struct PayoffProfile {
  Vector<Scalar> values;

  int size() const { return static_cast<int>(values.size()); }
  const Scalar& operator[](int i) const { return values(i); }
  bool operator==(const PayoffProfile& other) const { return values == other.values; }
};

template <typename Scalar>
PayoffProfile<Scalar> make_payoff_profile(std::initializer_list<Scalar> values) {
  PayoffProfile<Scalar> p{Vector<Scalar>(static_cast<Eigen::Index>(values.size()))};
  Eigen::Index i = 0;
  for (const auto& v : values) p.values(i++) = v;
  return p;
}

template <typename Scalar>
void validate_profile(const StageGame<Scalar>& game, std::span<const MixedStrategy<Scalar>> profile) {
  if (static_cast<int>(profile.size()) != game.num_players())
    throw InvalidInput("profile needs one mixed strategy per player");
  for (int i = 0; i < game.num_players(); ++i) validate(profile[i], game.num_actions(i));
}

// Product distribution over joint profiles induced by independent mixtures.
template <typename Scalar>
Vector<Scalar> joint_distribution(const StageGame<Scalar>& game,
                                  std::span<const MixedStrategy<Scalar>> profile) {
  Vector<Scalar> joint = Vector<Scalar>::Zero(static_cast<Eigen::Index>(game.num_profiles()));
  std::vector<int> actions(game.num_players(), 0);
  for (std::size_t idx = 0; idx < game.num_profiles(); ++idx) {
    Scalar p(1);
    for (int i = 0; i < game.num_players() && p != Scalar(0); ++i) p *= profile[i].probs(actions[i]);
    joint(static_cast<Eigen::Index>(idx)) = p;
    for (int i = game.num_players() - 1; i >= 0; --i) {
      if (++actions[i] < game.num_actions(i)) break;
      actions[i] = 0;
    }
  }
  return joint;
}

// E[u(sigma)] for every player. Exact when Scalar is Rational.
template <typename Scalar>
PayoffProfile<Scalar> expected_payoff(const StageGame<Scalar>& game,
                                      std::span<const MixedStrategy<Scalar>> profile) {
  validate_profile(game, profile);
  Vector<Scalar> joint = joint_distribution(game, profile);
  return PayoffProfile<Scalar>{game.payoffs().transpose() * joint};
}

template <typename Scalar>
PayoffProfile<Scalar> expected_payoff(const StageGame<Scalar>& game,
                                      const std::vector<MixedStrategy<Scalar>>& profile) {
  return expected_payoff(game, std::span<const MixedStrategy<Scalar>>(profile));
}

// Expected payoff of each pure action of `player` when the others follow
// `profile` (the player's own entry is ignored).
template <typename Scalar>
Vector<Scalar> action_values(const StageGame<Scalar>& game, int player,
                             std::span<const MixedStrategy<Scalar>> profile) {
  Vector<Scalar> values = Vector<Scalar>::Zero(game.num_actions(player));
  std::vector<int> actions(game.num_players(), 0);
  for (std::size_t idx = 0; idx < game.num_profiles(); ++idx) {
    Scalar p(1);
    for (int i = 0; i < game.num_players() && p != Scalar(0); ++i)
      if (i != player) p *= profile[i].probs(actions[i]);
    if (p != Scalar(0)) values(actions[player]) += p * game.payoff(idx, player);
    for (int i = game.num_players() - 1; i >= 0; --i) {
      if (++actions[i] < game.num_actions(i)) break;
      actions[i] = 0;
    }
  }
  return values;
}

// Lexicographically first maximizer.
template <typename Scalar>
int argmax_first(const Vector<Scalar>& v) {
  int best = 0;
  for (Eigen::Index a = 1; a < v.size(); ++a)
    if (v(a) > v(best)) best = static_cast<int>(a);
  return best;
}

template <typename Scalar>
struct StageDeviation {
  int player = -1;
  int action = -1;
  Scalar gain{0};
};

// Largest gain any single player gets from a pure deviation in the stage game.
// Ties between players resolve to the lowest index.
template <typename Scalar>
StageDeviation<Scalar> best_stage_deviation(const StageGame<Scalar>& game,
                                            std::span<const MixedStrategy<Scalar>> profile) {
  PayoffProfile<Scalar> current = expected_payoff(game, profile);
  StageDeviation<Scalar> best;
  for (int i = 0; i < game.num_players(); ++i) {
    Vector<Scalar> values = action_values(game, i, profile);
    int a = argmax_first(values);
    Scalar gain = values(a) - current[i];
    if (best.player < 0 || gain > best.gain) best = {i, a, gain};
  }
  return best;
}

template <typename Scalar>
bool is_stage_nash(const StageGame<Scalar>& game, std::span<const MixedStrategy<Scalar>> profile) {
  StageDeviation<Scalar> d = best_stage_deviation(game, profile);
  if constexpr (ScalarTraits<Scalar>::kExact) {
    return d.gain <= Scalar(0);
  } else {
    return d.gain <= 1e-9;
  }
}

template <typename Scalar>
bool is_stage_nash(const StageGame<Scalar>& game, const std::vector<MixedStrategy<Scalar>>& profile) {
  return is_stage_nash(game, std::span<const MixedStrategy<Scalar>>(profile));
}

// True if some pure action of some player is at least as good as every other
// action of that player against every opponent profile.
template <typename Scalar>
bool has_weakly_dominant_pure_strategy(const StageGame<Scalar>& game) {
  for (int i = 0; i < game.num_players(); ++i) {
    for (int a = 0; a < game.num_actions(i); ++a) {
      bool dominant = true;
      for (std::size_t idx = 0; idx < game.num_profiles() && dominant; ++idx) {
        std::vector<int> profile = game.decode_profile(idx);
        if (profile[i] == a) continue;
        int other = profile[i];
        profile[i] = a;
        if (game.payoff(std::span<const int>(profile), i) < game.payoff(idx, i)) dominant = false;
        profile[i] = other;
      }
      if (dominant) return true;
    }
  }
  return false;
}

}  // namespace lowrand
