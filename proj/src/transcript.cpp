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

#include "lowrand/exploit/transcript.hpp"

#include <sstream>

#include "lowrand/repeated/monte_carlo.hpp"

namespace lowrand {

std::vector<TranscriptRow> transcript_rows(const StageGame<Rational>& game, const Exploiter& engine, const History& h) {
  const int owner = engine.strategy.owner();
  std::vector<TranscriptRow> rows;
  Rational total(0);
  History prefix(h.num_players(), h.horizon());
  for (int t = 0; t < h.length(); ++t) {
    const EngineDiagnostics d = engine.diagnose(prefix);
    TranscriptRow r;
    r.stage = t + 1;
    r.own_action = h.action(t, owner);
    r.opponent_action = h.action(t, 1 - owner);
    r.posterior_size = d.posterior_size;
    r.confidence = d.confidence;
    total += game.payoff(h.profile(t), owner);
    r.running_average = total / (t + 1);
    rows.push_back(r);
    prefix.push(h.profile(t));
  }
  return rows;
}

std::vector<TranscriptRow> run_transcript(const StageGame<Rational>& game, int n, const Exploiter& engine,
                                          const BehavioralStrategy<Rational>& opponent, std::uint64_t rng_seed) {
  game.require_two_player("run_transcript");
  if (opponent.owner() == engine.strategy.owner()) throw InvalidInput("engine and opponent need distinct seats");
  StrategyProfile<Rational> profile;
  if (engine.strategy.owner() == 0) {
    profile = {engine.strategy, opponent};
  } else {
    profile = {opponent, engine.strategy};
  }
  Rng rng = stream_rng(rng_seed, 0);
  return transcript_rows(game, engine, play_out(game, n, profile, rng));
}

std::string transcript_csv(const StageGame<Rational>& game, int owner, const std::vector<TranscriptRow>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "stage,own_action,opponent_action,posterior_size,confidence,running_average\n";
  for (const auto& r : rows) {
    out << r.stage << ',' << game.action_labels(owner)[r.own_action] << ','
        << game.action_labels(1 - owner)[r.opponent_action] << ',';
    if (r.posterior_size) out << *r.posterior_size;
    out << ',';
    if (r.confidence) out << *r.confidence;
    out << ',' << format_rational(r.running_average) << '\n';
  }
  return out.str();
}

DominanceReport weak_dominance_report(const StageGame<Rational>& game) {
  game.require_two_player("weak_dominance_report");
  DominanceReport report;
  for (int i = 0; i < 2; ++i) {
    const int m = game.num_actions(i);
    const int other = game.num_actions(1 - i);
    auto pay = [&](int own, int opp) {
      std::vector<int> a(2);
      a[i] = own;
      a[1 - i] = opp;
      return game.payoff(std::span<const int>(a), i);
    };
    for (int a = 0; a < m; ++a) {
      bool dominates_all = m > 1;
      for (int b = 0; b < m; ++b) {
        if (a == b) continue;
        bool weak = true, strict = true, somewhere = false;
        for (int c = 0; c < other; ++c) {
          if (pay(a, c) < pay(b, c)) weak = false;
          if (pay(a, c) <= pay(b, c)) strict = false;
          if (pay(a, c) > pay(b, c)) somewhere = true;
        }
        // identical rows dominate nothing
        if (weak && somewhere) {
          report.pairs.push_back({i, a, b, strict});
        } else if (!weak) {
          dominates_all = false;
        }
        if (weak && !somewhere) continue;
      }
      if (dominates_all) report.weakly_dominant.emplace_back(i, a);
    }
  }
  report.guarantee_void = !report.weakly_dominant.empty();
  return report;
}

}  // namespace lowrand
