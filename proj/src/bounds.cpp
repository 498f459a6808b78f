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

#include "lowrand/verify/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lowrand {

std::optional<double> stage_entropy_floor(const StageGame<Rational>& game, int player, std::string* branch) {
  if (game.num_players() != 2) {
    if (branch) *branch = "none";
    return std::nullopt;
  }
  if (game.is_zero_sum()) {
    if (branch) *branch = "zero-sum";
    return min_entropy_minmax(game, player).beta;
  }
  if (all_equilibria_at_minmax(game)) {
    if (branch) *branch = "equilibria-at-minmax";
    double beta = std::numeric_limits<double>::infinity();
    for (const auto& e : enumerate_bimatrix_nash(game).equilibria)
      beta = std::min(beta, shannon_entropy(e.profile[player]));
    return beta;
  }
  if (branch) *branch = "none";
  return std::nullopt;
}

EntropyBoundReport entropy_bound_check(const StageGame<Rational>& game, int n, const StrategyProfile<Rational>& profile,
                                       std::size_t node_limit) {
  validate_strategy_profile(game, profile);
  EntropyBoundReport report;
  report.branch = "none";
  for (int i = 0; i < game.num_players(); ++i) {
    EntropyBound b;
    b.player = i;
    b.entropy = strategy_entropy(game, n, profile[i], node_limit);
    b.beta = stage_entropy_floor(game, i, &report.branch);
    if (b.beta) {
      b.required = n * *b.beta;
      b.holds = b.entropy >= *b.required - 1e-9;
    }
    report.bounds.push_back(b);
  }
  if (is_matching_pennies(game)) {
    for (int j = 0; j < 2; ++j) {
      ExploitationFloor f;
      f.player = j;
      f.floor = 1.0 - report.bounds[j].entropy / n;
      f.best_response = best_response_value(game, n, profile, 1 - j, node_limit).value;
      f.holds = to_double(f.best_response) >= f.floor - 1e-9;
      report.floors.push_back(f);
    }
  }
  return report;
}

namespace {

struct TraceNode {
  std::vector<double> probs;  // column's stage strategy
  int row_action = 0;
};

class PotentialWalker {
 public:
  PotentialWalker(const StageGame<Rational>& game, int n, const BehavioralStrategy<Rational>& column,
                  std::size_t node_limit)
      : game_(game), n_(n), column_(column), budget_(node_limit) {}

  TraceNode node(const History& h) {
    budget_.visit();
    const auto s = column_.at(h);
    TraceNode out;
    for (int a = 0; a < s.size(); ++a) out.probs.push_back(to_double(s.probs(a)));
    out.row_action = s.most_likely();
    return out;
  }

  // Entropy of the column's action sequence from h to the end, by listing
  // every continuation with its conditional probability.
  double block_entropy(History& h) {
    double total = 0.0;
    std::function<void(double)> rec = [&](double p) {
      if (h.terminal()) {
        total -= p * std::log2(p);
        return;
      }
      const auto nd = node(h);
      for (int b = 0; b < static_cast<int>(nd.probs.size()); ++b) {
        if (nd.probs[b] <= 0.0) continue;
        h.push({nd.row_action, b});
        rec(p * nd.probs[b]);
        h.pop();
      }
    };
    rec(1.0);
    return total;
  }

  PotentialTrace run() {
    PotentialTrace trace;
    trace.increments.assign(n_, 0.0);
    trace.formula.assign(n_, 0.0);
    trace.block_entropy.assign(n_ + 1, 0.0);
    trace.expected_payoff.assign(n_, 0.0);
    History h(2, n_);
    std::function<void(double)> rec = [&](double p) {
      const int t = h.length();
      trace.block_entropy[t] += p * block_entropy(h);
      if (h.terminal()) return;
      const auto nd = node(h);
      const double top = *std::max_element(nd.probs.begin(), nd.probs.end());
      trace.formula[t] += p * (2.0 * top - 1.0 + entropy_bits(nd.probs));
      for (int b = 0; b < static_cast<int>(nd.probs.size()); ++b) {
        if (nd.probs[b] <= 0.0) continue;
        const int a[2] = {nd.row_action, b};
        trace.expected_payoff[t] += p * nd.probs[b] * to_double(game_.payoff(std::span<const int>(a, 2), 0));
        h.push({nd.row_action, b});
        rec(p * nd.probs[b]);
        h.pop();
      }
    };
    rec(1.0);
    for (int t = 0; t < n_; ++t)
      trace.increments[t] = trace.expected_payoff[t] + trace.block_entropy[t] - trace.block_entropy[t + 1];
    return trace;
  }

 private:
  const StageGame<Rational>& game_;
  int n_;
  const BehavioralStrategy<Rational>& column_;
  detail::NodeBudget budget_;
};

}  // namespace

PotentialTrace mp_potential_trace(const StageGame<Rational>& game, int n, const BehavioralStrategy<Rational>& column,
                                  std::size_t node_limit) {
  if (!is_matching_pennies(game)) throw DomainError("the potential trace is defined for matching pennies only");
  if (column.owner() != 1) throw InvalidInput("the traced strategy must belong to the column player");
  if (n < 1) throw InvalidInput("horizon must be positive");
  return PotentialWalker(game, n, column, node_limit).run();
}

int min_low_entropy_stages(const StageGame<Rational>& game, int n, const BehavioralStrategy<Rational>& strategy,
                           double threshold, std::size_t node_limit) {
  if (n < 1) throw InvalidInput("horizon must be positive");
  detail::NodeBudget budget(node_limit);
  std::unordered_map<std::string, int> memo;
  const int k = game.num_players();
  std::function<int(History&)> rec = [&](History& h) -> int {
    if (h.terminal()) return 0;
    std::string key;
    if (strategy.has_state_key()) {
      key = std::to_string(h.length()) + "|" + strategy.state_key(h);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    budget.visit();
    const int here = shannon_entropy(strategy.at(h)) <= threshold + 1e-12 ? 1 : 0;
    int best = std::numeric_limits<int>::max();
    std::vector<detail::Support<Rational>> supports;
    for (int i = 0; i < k; ++i) supports.push_back(detail::full_support<Rational>(game.num_actions(i)));
    detail::for_each_joint(supports, [&](const std::vector<int>& a, const Rational&) {
      h.push(a);
      best = std::min(best, rec(h));
      h.pop();
    });
    const int value = here + best;
    if (strategy.has_state_key()) memo.emplace(key, value);
    return value;
  };
  History root(k, n);
  return rec(root);
}

}  // namespace lowrand
