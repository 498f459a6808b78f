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

#include "lowrand/construct/folk.hpp"

#include <algorithm>

#include "lowrand/construct/epsnash.hpp"
#include "lowrand/construct/stagewise.hpp"
#include "lowrand/core/entropy.hpp"
#include "lowrand/solver/bimatrix_nash.hpp"
#include "lowrand/solver/zero_sum.hpp"

namespace lowrand {

namespace {

using Span = std::span<const MixedStrategy<Rational>>;

Rational stage_value(const StageGame<Rational>& game, const StageProfile& p, int i) {
  return expected_payoff(game, Span(p))[i];
}

double total_entropy(const StageProfile& p) {
  double h = 0;
  for (const auto& s : p) h += shannon_entropy(s);
  return h;
}

std::vector<StageProfile> default_punishments(const StageGame<Rational>& game) {
  if (game.num_players() != 2)
    throw Unsupported("punishment strategies must be supplied for games with more than two players");
  std::vector<StageProfile> out(2);
  for (int i = 0; i < 2; ++i) {
    out[i].resize(2);
    out[i][1 - i] = min_entropy_punisher(game, i).strategy;
    out[i][i] = min_entropy_guarantee(game, i).strategy;
  }
  return out;
}

// Lowest-entropy equilibrium paying player i strictly more than `floor`.
std::optional<StageProfile> gap_equilibrium(const StageGame<Rational>& game, const NashEnumeration<Rational>& eqs,
                                            int i, const Rational& floor) {
  std::optional<StageProfile> best;
  double best_h = 0;
  for (const auto& e : eqs.equilibria) {
    if (e.payoff[i] <= floor) continue;
    const double h = total_entropy(e.profile);
    if (!best || h < best_h) {
      best = e.profile;
      best_h = h;
    }
  }
  (void)game;
  return best;
}

Rational one_shot_gain(const StageGame<Rational>& game, const std::vector<int>& a, int i) {
  Rational best = game.payoff(a, i);
  std::vector<int> dev = a;
  for (int x = 0; x < game.num_actions(i); ++x) {
    dev[i] = x;
    best = std::max(best, game.payoff(dev, i));
  }
  return best - game.payoff(a, i);
}

// Every phase-1 deviation loses: one-shot gain <= sum over the remaining
// stages of (planned payoff - punished cap).
bool deviations_unprofitable(const StageGame<Rational>& game, const FolkPlan& plan) {
  const int n = plan.horizon;
  const int k = game.num_players();
  const int phase1 = plan.phase_one_length();
  for (int i = 0; i < k; ++i) {
    std::vector<Rational> surplus(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int t = n - 1; t >= 0; --t) {
      Rational planned = t < phase1 ? game.payoff(plan.scheduled(t), i) : stage_value(game, plan.tail_profile(t), i);
      surplus[t] = surplus[t + 1] + planned - plan.punished_caps[i];
    }
    for (int t = 0; t < phase1; ++t)
      if (one_shot_gain(game, plan.scheduled(t), i) > surplus[t + 1]) return false;
  }
  return true;
}

nlohmann::json stage_profile_json(const StageProfile& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : p) out.push_back(mixed_to_json(s));
  return out;
}

StageProfile stage_profile_from_json(const StageGame<Rational>& game, const nlohmann::json& doc) {
  if (!doc.is_array() || static_cast<int>(doc.size()) != game.num_players())
    throw InvalidInput("stage profile needs one strategy per player");
  StageProfile out;
  for (int i = 0; i < game.num_players(); ++i) out.push_back(mixed_from_json<Rational>(doc[i], i, game.num_actions(i)));
  return out;
}

nlohmann::json payoff_json(const PayoffProfile<Rational>& p) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < p.size(); ++i) out.push_back(rational_to_json(p[i]));
  return out;
}

PayoffProfile<Rational> payoff_from_json(const nlohmann::json& doc) {
  PayoffProfile<Rational> p{Vector<Rational>(static_cast<Eigen::Index>(doc.size()))};
  for (std::size_t i = 0; i < doc.size(); ++i) p.values(static_cast<Eigen::Index>(i)) = rational_from_json(doc[i]);
  return p;
}

}  // namespace

FolkPlan plan_folk(const StageGame<Rational>& game, int n, const PayoffProfile<Rational>& target,
                   const std::optional<std::vector<StageProfile>>& per_player_ne,
                   const std::optional<std::vector<StageProfile>>& punishments) {
  const int k = game.num_players();
  if (n < 1) throw InvalidInput("horizon must be positive");
  if (target.size() != k) throw InvalidInput("target needs one payoff per player");

  FolkPlan plan;
  plan.horizon = n;
  plan.target = target;
  plan.punishments = punishments ? *punishments : default_punishments(game);
  if (static_cast<int>(plan.punishments.size()) != k) throw InvalidInput("need one punishment profile per player");
  for (auto& p : plan.punishments) {
    if (static_cast<int>(p.size()) != k) throw InvalidInput("punishment profile needs one strategy per player");
    for (int j = 0; j < k; ++j) {
      p[j].owner = j;
      validate(p[j], game.num_actions(j));
    }
  }
  plan.punished_caps.resize(k);
  for (int i = 0; i < k; ++i) plan.punished_caps[i] = action_values(game, i, Span(plan.punishments[i])).maxCoeff();

  if (k == 2) {
    plan.minmax = minmax_profile(game);
  } else {
    plan.minmax.values = Vector<Rational>(k);
    for (int i = 0; i < k; ++i) plan.minmax.values(i) = plan.punished_caps[i];
  }

  auto feasible = check_feasible_ir(game, target, plan.minmax);
  if (feasible.verdict == FeasibilityVerdict::kInfeasible)
    throw FolkError(FolkFailure::kNotFeasible, "target payoff is not feasible: " + feasible.reason);
  if (feasible.verdict == FeasibilityVerdict::kNotIndividuallyRational)
    throw FolkError(FolkFailure::kNotIndividuallyRational, "target payoff is not individually rational: " + feasible.reason);
  plan.decomposition = *feasible.decomposition;
  for (const auto& term : plan.decomposition.terms)
    for (Integer c = 0; c < term.numerator; ++c) plan.block.push_back(term.profile);
  const int K = plan.block_length();

  plan.deviation_gains.assign(k, Rational(0));
  for (int i = 0; i < k; ++i)
    for (const auto& a : plan.block) plan.deviation_gains[i] = std::max(plan.deviation_gains[i], one_shot_gain(game, a, i));

  // Tail equilibria: supplied, or the lowest-entropy gap equilibrium per player.
  std::optional<NashEnumeration<Rational>> eqs;
  if (per_player_ne) {
    for (auto p : *per_player_ne) {
      for (int j = 0; j < k; ++j) p[j].owner = j;
      require_stage_nash(game, p);
      plan.tail_equilibria.push_back(p);
    }
  } else if (k == 2) {
    eqs = enumerate_bimatrix_nash(game);
    for (int i = 0; i < k; ++i)
      if (auto e = gap_equilibrium(game, *eqs, i, plan.punished_caps[i])) plan.tail_equilibria.push_back(*e);
  }

  // Averaged inequality: (m/|L|) sum_j (E u_i(sigma_j) - v_i) >= D_i.
  plan.min_tail_length = 0;
  for (int i = 0; i < k; ++i) {
    if (plan.deviation_gains[i] <= 0) continue;
    Rational surplus = 0;
    for (const auto& e : plan.tail_equilibria) surplus += stage_value(game, e, i) - plan.punished_caps[i];
    if (surplus <= 0)
      throw FolkError(FolkFailure::kNoGapEquilibrium,
                      "no stage equilibrium pays player " + std::to_string(i) + " above the minmax level");
    const Rational need = plan.deviation_gains[i] * static_cast<long>(plan.tail_equilibria.size()) / surplus;
    plan.min_tail_length = std::max(plan.min_tail_length, ceil_rational(need).convert_to<int>());
  }
  if (plan.tail_equilibria.empty() && eqs && !eqs->equilibria.empty()) {
    // Nobody needs a reward; any equilibrium can fill a tail forced by K.
    auto it = std::min_element(eqs->equilibria.begin(), eqs->equilibria.end(), [](const auto& a, const auto& b) {
      return total_entropy(a.profile) < total_entropy(b.profile);
    });
    plan.tail_equilibria.push_back(it->profile);
  }

  for (int m = plan.min_tail_length; m + K <= n; ++m) {
    if ((n - m) % K != 0) continue;
    if (m > 0 && plan.tail_equilibria.empty()) continue;
    plan.tail_length = m;
    plan.repetitions = (n - m) / K;
    if (deviations_unprofitable(game, plan)) return plan;
  }
  throw FolkError(FolkFailure::kHorizonTooShort,
                  "horizon " + std::to_string(n) + " is too short: the plan needs a tail of at least " +
                      std::to_string(plan.min_tail_length) + " stages plus a schedule block of " + std::to_string(K));
}

BehavioralStrategy<Rational> folk_trigger_strategy(const StageGame<Rational>& game, const FolkPlan& plan, int owner) {
  auto shared = std::make_shared<const FolkPlan>(plan);
  const int actions = game.num_actions(owner);
  const int k = game.num_players();
  // First phase-1 stage where someone left the schedule; the lowest-index
  // deviator of that stage is punished for the rest of the game.
  auto punished = [shared, k](const History& h) {
    const int limit = std::min(h.length(), shared->phase_one_length());
    for (int t = 0; t < limit; ++t) {
      const auto& a = shared->scheduled(t);
      for (int j = 0; j < k; ++j)
        if (h.action(t, j) != a[j]) return j;
    }
    return -1;
  };
  BehavioralStrategy<Rational> s(owner, actions, StrategyForm::kRule, "folk-trigger",
                                 [shared, punished, owner, actions](const History& h) {
                                   const int p = punished(h);
                                   if (p >= 0) return shared->punishments[p][owner];
                                   const int t = h.length();
                                   if (t < shared->phase_one_length())
                                     return MixedStrategy<Rational>::pure(owner, actions, shared->scheduled(t)[owner]);
                                   return shared->tail_profile(t)[owner];
                                 });
  s.with_state_key([punished](const History& h) { return std::to_string(punished(h)); });
  s.with_description({{"form", "rule"}, {"rule", "folk-trigger"}, {"owner", owner}, {"actions", actions},
                      {"plan", plan_to_json(game, plan)}});
  return s;
}

StrategyProfile<Rational> folk_profile(const StageGame<Rational>& game, const FolkPlan& plan) {
  StrategyProfile<Rational> out;
  for (int i = 0; i < game.num_players(); ++i) out.push_back(folk_trigger_strategy(game, plan, i));
  return out;
}

FolkEquilibrium folk_equilibrium(const StageGame<Rational>& game, int n, const PayoffProfile<Rational>& target,
                                 const std::optional<std::vector<StageProfile>>& per_player_ne,
                                 const std::optional<std::vector<StageProfile>>& punishments) {
  FolkEquilibrium out;
  out.plan = plan_folk(game, n, target, per_player_ne, punishments);
  out.profile = folk_profile(game, out.plan);
  return out;
}

PayoffProfile<Rational> predicted_payoff(const StageGame<Rational>& game, const FolkPlan& plan) {
  const int k = game.num_players();
  Vector<Rational> total = Vector<Rational>::Zero(k);
  for (int t = 0; t < plan.horizon; ++t) {
    if (t < plan.phase_one_length()) {
      total += game.payoffs().row(static_cast<Eigen::Index>(game.profile_index(plan.scheduled(t)))).transpose();
    } else {
      total += expected_payoff(game, Span(plan.tail_profile(t))).values;
    }
  }
  return PayoffProfile<Rational>{total / Rational(plan.horizon)};
}

std::vector<double> effective_entropy_bound(const FolkPlan& plan) {
  std::vector<double> out(plan.punishments.size(), 0.0);
  for (int t = plan.phase_one_length(); t < plan.horizon; ++t)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += shannon_entropy(plan.tail_profile(t)[i]);
  return out;
}

nlohmann::json plan_to_json(const StageGame<Rational>& game, const FolkPlan& plan) {
  nlohmann::json doc;
  doc["game"] = game.name();
  doc["horizon"] = plan.horizon;
  doc["target"] = payoff_json(plan.target);
  doc["minmax"] = payoff_json(plan.minmax);
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : plan.decomposition.terms) {
    std::vector<std::string> labels;
    for (int i = 0; i < game.num_players(); ++i) labels.push_back(game.action_labels(i)[t.profile[i]]);
    terms.push_back({{"profile", t.profile},
                     {"labels", labels},
                     {"numerator", rational_to_json(Rational(t.numerator))},
                     {"weight", rational_to_json(t.weight)}});
  }
  doc["decomposition"] = {{"denominator", rational_to_json(Rational(plan.decomposition.denominator))},
                          {"terms", terms}};
  doc["block"] = plan.block;
  doc["block_length"] = plan.block_length();
  doc["repetitions"] = plan.repetitions;
  doc["tail_length"] = plan.tail_length;
  doc["min_tail_length"] = plan.min_tail_length;
  doc["tail_equilibria"] = nlohmann::json::array();
  for (const auto& e : plan.tail_equilibria) doc["tail_equilibria"].push_back(stage_profile_json(e));
  doc["punishments"] = nlohmann::json::array();
  for (const auto& p : plan.punishments) doc["punishments"].push_back(stage_profile_json(p));
  doc["deviation_gains"] = nlohmann::json::array();
  for (const auto& g : plan.deviation_gains) doc["deviation_gains"].push_back(rational_to_json(g));
  doc["punished_caps"] = nlohmann::json::array();
  for (const auto& c : plan.punished_caps) doc["punished_caps"].push_back(rational_to_json(c));
  doc["predicted_payoff"] = payoff_json(predicted_payoff(game, plan));
  doc["effective_entropy_bound"] = effective_entropy_bound(plan);
  return doc;
}

FolkPlan plan_from_json(const StageGame<Rational>& game, const nlohmann::json& doc) {
  try {
    const int k = game.num_players();
    FolkPlan plan;
    plan.horizon = doc.at("horizon").get<int>();
    plan.target = payoff_from_json(doc.at("target"));
    plan.minmax = payoff_from_json(doc.at("minmax"));
    const auto& dec = doc.at("decomposition");
    plan.decomposition.denominator = Integer(boost::multiprecision::numerator(rational_from_json(dec.at("denominator"))));
    for (const auto& t : dec.at("terms")) {
      FeasibleDecomposition::Term term;
      term.profile = t.at("profile").get<std::vector<int>>();
      term.numerator = Integer(boost::multiprecision::numerator(rational_from_json(t.at("numerator"))));
      term.weight = rational_from_json(t.at("weight"));
      plan.decomposition.terms.push_back(std::move(term));
    }
    plan.block = doc.at("block").get<std::vector<std::vector<int>>>();
    plan.repetitions = doc.at("repetitions").get<int>();
    plan.tail_length = doc.at("tail_length").get<int>();
    plan.min_tail_length = doc.at("min_tail_length").get<int>();
    for (const auto& e : doc.at("tail_equilibria")) plan.tail_equilibria.push_back(stage_profile_from_json(game, e));
    for (const auto& p : doc.at("punishments")) plan.punishments.push_back(stage_profile_from_json(game, p));
    for (const auto& g : doc.at("deviation_gains")) plan.deviation_gains.push_back(rational_from_json(g));
    for (const auto& c : doc.at("punished_caps")) plan.punished_caps.push_back(rational_from_json(c));

    if (plan.block.empty()) throw InvalidInput("plan block is empty");
    for (const auto& a : plan.block) game.profile_index(a);
    if (plan.repetitions < 0 || plan.tail_length < 0 ||
        plan.repetitions * plan.block_length() + plan.tail_length != plan.horizon)
      throw InvalidInput("plan lengths do not add up to the horizon");
    if (plan.tail_length > 0 && plan.tail_equilibria.empty()) throw InvalidInput("plan tail has no equilibria");
    if (static_cast<int>(plan.punishments.size()) != k || static_cast<int>(plan.punished_caps.size()) != k ||
        static_cast<int>(plan.deviation_gains.size()) != k || plan.target.size() != k)
      throw InvalidInput("plan needs per-player punishments, caps and gains");
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed folk plan: ") + e.what());
  }
}

RuleResolver construction_rules() {
  return [](const StageGame<Rational>& game,
            const nlohmann::json& doc) -> std::optional<BehavioralStrategy<Rational>> {
    if (doc.value("rule", std::string()) != "folk-trigger") return std::nullopt;
    return folk_trigger_strategy(game, plan_from_json(game, doc.at("plan")), doc.at("owner").get<int>());
  };
}

}  // namespace lowrand
