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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lowrand/core/game_io.hpp"
#include "lowrand/verify/best_response.hpp"

namespace lowrand {

enum class Verdict { kExactNash, kEpsNash, kNotNash };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kExactNash: return "exact-NE";
    case Verdict::kEpsNash: return "eps-NE";
    case Verdict::kNotNash: return "not-NE";
  }
  return "?";
}

template <typename Scalar>
struct DeviationWitness {
  int player = 0;
  Scalar gain{0};  // recomputed: exact_payoff with the deviation minus compliance
  BehavioralStrategy<Scalar> strategy;
};

template <typename Scalar>
struct EquilibriumReport {
  std::string mode;  // "rational" or "float"
  int horizon = 0;
  PayoffProfile<Scalar> payoff;
  std::vector<Scalar> best_response;   // optimal average payoff of a unilateral deviator
  std::vector<Scalar> exploitability;  // best_response - payoff, >= 0
  std::vector<double> entropy;
  std::vector<double> effective_entropy;
  Verdict verdict = Verdict::kNotNash;
  std::optional<Scalar> eps;
  std::optional<DeviationWitness<Scalar>> witness;

  Scalar max_exploitability() const {
    Scalar m(0);
    for (const auto& e : exploitability) m = std::max(m, e);
    return m;
  }
};

namespace detail {

template <typename Scalar>
bool is_zero_gain(const Scalar& x) {
  if constexpr (ScalarTraits<Scalar>::kExact) {
    return x == Scalar(0);
  } else {
    return x <= 1e-9;
  }
}

}  // namespace detail

// Per-player exploitability by exact backward induction plus both entropy
// measures. With `eps`, a profile whose exploitabilities are all <= eps is
// reported as an eps-NE.
template <typename Scalar>
EquilibriumReport<Scalar> certify(const StageGame<Scalar>& game, int n, const StrategyProfile<Scalar>& profile,
                                  std::optional<Scalar> eps = std::nullopt, std::size_t node_limit = kMaxTreeNodes) {
  validate_strategy_profile(game, profile);
  EquilibriumReport<Scalar> r;
  r.mode = ScalarTraits<Scalar>::kMode;
  r.horizon = n;
  r.eps = eps;
  r.payoff = exact_payoff(game, n, profile, node_limit);
  const int k = game.num_players();
  std::vector<BestResponse<Scalar>> responses;
  for (int i = 0; i < k; ++i) {
    responses.push_back(best_response_value(game, n, profile, i, node_limit));
    r.best_response.push_back(responses.back().value);
    Scalar gain = responses.back().value - r.payoff[i];
    if (gain < Scalar(0)) {
      if constexpr (ScalarTraits<Scalar>::kExact) {
        throw InternalError("best response below the profile payoff");
      } else {
        gain = 0;
      }
    }
    r.exploitability.push_back(gain);
    r.entropy.push_back(strategy_entropy(game, n, profile[i], node_limit));
    r.effective_entropy.push_back(effective_entropy(game, n, profile, i, node_limit));
  }

  const Scalar worst = r.max_exploitability();
  if (detail::is_zero_gain(worst)) {
    r.verdict = Verdict::kExactNash;
  } else if (eps && worst <= *eps) {
    r.verdict = Verdict::kEpsNash;
  } else {
    r.verdict = Verdict::kNotNash;
  }
  if (r.verdict != Verdict::kExactNash) {
    int who = 0;
    for (int i = 1; i < k; ++i)
      if (r.exploitability[i] > r.exploitability[who]) who = i;
    StrategyProfile<Scalar> deviated = profile;
    deviated[who] = responses[who].strategy;
    const Scalar gain = exact_payoff(game, n, deviated, node_limit)[who] - r.payoff[who];
    if constexpr (ScalarTraits<Scalar>::kExact) {
      if (gain != r.exploitability[who]) throw InternalError("witness gain disagrees with the best response");
    }
    r.witness = DeviationWitness<Scalar>{who, gain, responses[who].strategy};
  }
  return r;
}

template <typename Scalar>
nlohmann::json report_to_json(const StageGame<Scalar>& game, const EquilibriumReport<Scalar>& r) {
  auto list = [](const auto& xs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : xs) out.push_back(scalar_to_json(x));
    return out;
  };
  nlohmann::json doc;
  doc["game"] = game.name();
  doc["horizon"] = r.horizon;
  doc["mode"] = r.mode;
  std::vector<Scalar> payoff(r.payoff.values.data(), r.payoff.values.data() + r.payoff.values.size());
  doc["payoff"] = list(payoff);
  doc["exploitability"] = list(r.exploitability);
  doc["entropy"] = r.entropy;
  doc["effective_entropy"] = r.effective_entropy;
  doc["verdict"] = verdict_name(r.verdict);
  doc["eps"] = r.eps ? scalar_to_json(*r.eps) : nlohmann::json();
  if (r.witness) {
    History root(game.num_players(), r.horizon);
    const int first = r.witness->strategy.at(root).most_likely();
    doc["witness"] = {{"player", r.witness->player},
                      {"gain", scalar_to_json(r.witness->gain)},
                      {"first_action", game.action_labels(r.witness->player)[first]}};
  } else {
    doc["witness"] = nullptr;
  }
  return doc;
}

}  // namespace lowrand
