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

#include <random>

#include "lowrand/core/example_games.hpp"
#include "lowrand/exploit/distance.hpp"
#include "lowrand/exploit/predictor.hpp"
#include "lowrand/exploit/seed_learner.hpp"
#include "lowrand/exploit/transcript.hpp"
#include "lowrand/repeated/engine.hpp"
#include "lowrand/repeated/monte_carlo.hpp"
#include "lowrand/verify/best_response.hpp"

using namespace lowrand;

namespace {

using Mixed = MixedStrategy<Rational>;
using Profile = StrategyProfile<Rational>;
const auto& mp() { return example_game("matching-pennies"); }

Rational frac(int p, int q) { return Rational(p) / Rational(q); }

Vector<Rational> dist(std::initializer_list<Rational> xs) {
  Vector<Rational> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

Mixed coin(int owner, const Rational& heads) { return Mixed{owner, dist({heads, 1 - heads})}; }

SeededStrategy<Rational> constant_by_seed(int n) {
  auto t = DecisionTable::filled(1, 2, 1, n, HistorySummary::kNone);
  for (int s = 0; s < n; ++s)
    for (std::uint32_t r = 0; r < 2; ++r) t.entry(s, 0, r) = static_cast<int>(r);
  return SeededStrategy<Rational>(t);
}

// Seed r plays bit (t mod 4) of r.
SeededStrategy<Rational> seed_bits(int n) {
  auto t = DecisionTable::filled(1, 2, 4, n, HistorySummary::kNone);
  for (int s = 0; s < n; ++s)
    for (std::uint32_t r = 0; r < 16; ++r) t.entry(s, 0, r) = static_cast<int>((r >> (s % 4)) & 1);
  return SeededStrategy<Rational>(t);
}

SeededStrategy<Rational> random_table(std::mt19937_64& rng, int bits, int n, HistorySummary summary) {
  auto t = DecisionTable::filled(1, 2, bits, n, summary);
  for (int s = 0; s < n; ++s)
    for (std::size_t c = 0; c < t.contexts(s); ++c)
      for (std::uint32_t r = 0; r < t.num_seeds(); ++r) t.entry(s, c, r) = static_cast<int>(rng() & 1);
  return SeededStrategy<Rational>(t);
}

BehavioralStrategy<Rational> alternating_tht(int n) {
  std::vector<Mixed> stages;
  for (int t = 0; t < n; ++t) stages.push_back(Mixed::pure(1, 2, t % 2 == 0 ? 1 : 0));
  return schedule_strategy<Rational>(1, stages);
}

// First stage (1-based) at which the predictor plays a pure action on the
// deterministic path against a deterministic opponent; 0 if never.
int first_confident(const Exploiter& e, const BehavioralStrategy<Rational>& opp, int n) {
  History h(2, n);
  for (int t = 0; t < n; ++t) {
    if (e.diagnose(h).exploiting) return t + 1;
    const int b = opp.at(h).most_likely();
    h.push({0, b});  // engine's own draw does not matter to its state
  }
  return 0;
}

}  // namespace

TEST_CASE("statistical distance") {
  const auto p = dist({frac(1, 2), frac(1, 2)});
  CHECK(statistical_distance(p, p) == 0);
  CHECK(statistical_distance(dist({1, 0}), dist({0, 1})) == 1);
  CHECK(statistical_distance(p, dist({frac(1, 4), frac(3, 4)})) == frac(1, 4));
  CHECK_THROWS_AS(statistical_distance(p, dist({1, 0, 0})), InvalidInput);
  CHECK(distance_to_point_mass(dist({frac(1, 4), frac(3, 4)})) == frac(1, 4));
}

TEST_CASE("myopic best response exploiter") {
  const auto skew = stationary_strategy(coin(1, frac(1, 4)));
  const auto e = best_response_exploiter(mp(), 4, skew);
  History h(2, 4);
  CHECK(e.at(h).is_pure());
  CHECK(e.at(h).most_likely() == 1);
  CHECK(exact_payoff(mp(), 4, Profile{e, skew})[0] == frac(1, 2));

  const auto u = uniform_strategy<Rational>(1, 2);
  CHECK(best_response_exploiter(mp(), 4, u).at(h).most_likely() == 0);
  CHECK(exact_payoff(mp(), 4, Profile{best_response_exploiter(mp(), 4, u), u})[0] == 0);

  const auto c = constant_by_seed(3).behavioral();
  const auto m = best_response_exploiter(mp(), 3, c);
  CHECK(exact_payoff(mp(), 3, Profile{m, c})[0] == frac(2, 3));
  CHECK(best_response_value(mp(), 3, c, 0).value == frac(2, 3));
}

TEST_CASE("myopic exploiter meets the entropy floor on seeded opponents") {
  // exhaustive: all oblivious tables with 2 seed bits at n = 3 and 1 bit at n = 4
  const auto check = [](const SeededStrategy<Rational>& s, int n) {
    const auto sigma = s.behavioral();
    const double h = strategy_entropy(mp(), n, sigma);
    const Rational got = exact_payoff(mp(), n, Profile{best_response_exploiter(mp(), n, sigma), sigma})[0];
    CHECK(to_double(got) >= 1.0 - h / n - 1e-12);
  };
  for (const auto& [bits, n] : std::vector<std::pair<int, int>>{{2, 3}, {1, 4}}) {
    auto t = DecisionTable::filled(1, 2, bits, n, HistorySummary::kNone);
    const int cells = n << bits;
    for (std::uint32_t code = 0; code < (1u << cells); ++code) {
      for (int s = 0; s < n; ++s)
        for (std::uint32_t r = 0; r < t.num_seeds(); ++r) t.entry(s, 0, r) = (code >> (s * t.num_seeds() + r)) & 1;
      check(SeededStrategy<Rational>(t), n);
    }
  }
  // sampled: history-dependent programs up to 4 seed bits
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int bits = trial % 5;
    const int n = 1 + trial % 4;
    const auto summary = trial % 3 == 0 ? HistorySummary::kNone
                         : trial % 3 == 1 ? HistorySummary::kLastOwn
                                          : HistorySummary::kOwnHistory;
    check(random_table(rng, bits, n, summary), n);
  }
}

TEST_CASE("predictor against an alternating opponent") {
  const int n = 12;
  const auto opp = alternating_tht(n);
  PredictorConfig c;
  c.context_length = 1;
  c.threshold = frac(9, 10);
  const auto e = make_predictor(mp(), 0, c);
  // three observations of a context are needed; the T context reaches three
  // after stage 6, so the first confident stage is 8
  CHECK(first_confident(e, opp, n) == 8);
  CHECK(exact_payoff(mp(), n, Profile{e.strategy, opp})[0] == frac(5, 12));

  c.min_support = 2;
  const auto quick = make_predictor(mp(), 0, c);
  CHECK(first_confident(quick, opp, n) == 6);
  CHECK(exact_payoff(mp(), n, Profile{quick.strategy, opp})[0] == frac(7, 12));
}

TEST_CASE("predictor against i.i.d. opponents") {
  const auto uniform = monte_carlo_payoff(mp(), 30, Profile{predictor_strategy(mp(), 0), uniform_strategy<Rational>(1, 2)},
                                          4000, 5);
  CHECK(std::abs(uniform.mean[0]) <= 4 * uniform.std_err[0]);

  PredictorConfig c;
  c.context_length = 1;
  c.threshold = frac(3, 5);
  const auto skew = monte_carlo_payoff(mp(), 50, Profile{predictor_strategy(mp(), 0, c), stationary_strategy(coin(1, frac(1, 4)))},
                                       10000, 6);
  MESSAGE("i.i.d. (1/4, 3/4): " << skew.mean[0] << " +- " << skew.std_err[0]);
  CHECK(skew.mean[0] - 4 * skew.std_err[0] >= 0.3);
}

TEST_CASE("predictor play is reproducible and matches its policy") {
  const auto pred = predictor_strategy(mp(), 0);
  const auto opp = stationary_strategy(coin(1, frac(1, 3)));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng a = stream_rng(seed, 0), b = stream_rng(seed, 0), c = stream_rng(seed, 0);
    const History x = play_out(mp(), 40, Profile{pred, opp}, a);
    CHECK(x == play_out(mp(), 40, Profile{pred, opp}, b));
    // the incremental session draws exactly as the policy does
    History y(2, 40);
    auto os = opp.start_session(c);
    auto ps = pred.start_session(c);
    (void)ps;
    while (!y.terminal()) {
      const int r = sample_action(pred.at(y), c);
      const int col = os->act(y, c);
      y.push({r, col});
    }
    CHECK(x == y);
  }
}

TEST_CASE("predictor state") {
  PredictorConfig c;
  c.context_length = 2;
  PredictorState s(c, 2);
  for (int a : {0, 1, 0, 1, 0, 1, 0, 1, 0}) s.push(a);
  const auto p = s.predict();  // context (1, 0) always followed by 1
  CHECK(p.confident);
  CHECK(p.action == 1);
  CHECK(p.support == 3);
  CHECK(p.smoothed[1] == frac(4, 5));
  for (const auto& [ctx, counts] : s.counts()) CHECK(counts[0] + counts[1] >= 0);
  CHECK_THROWS_AS(s.push(2), InvalidInput);
  PredictorConfig bad;
  bad.threshold = frac(1, 2);
  CHECK_THROWS_AS(validate(bad), InvalidInput);
}

TEST_CASE("seed learner examples") {
  const auto c = constant_by_seed(3);
  const auto learner = make_seed_learner(mp(), c);
  CHECK(exact_payoff(mp(), 3, Profile{learner.strategy, c.behavioral()})[0] == frac(2, 3));
  CHECK(best_response_value(mp(), 3, c.behavioral(), 0).value == frac(2, 3));
  History h(2, 3);
  CHECK(learner.diagnose(h).posterior_size == 2u);
  CHECK(!learner.diagnose(h).hypothesis);
  h.push({0, 1});
  const auto d = learner.diagnose(h);
  CHECK(d.posterior_size == 1u);
  REQUIRE(d.hypothesis);
  CHECK(d.hypothesis->stage == 1);
  CHECK(d.hypothesis->prediction.probs(1) == 1);

  // nothing to learn
  auto t = DecisionTable::filled(1, 2, 0, 5, HistorySummary::kNone);
  for (int s = 0; s < 5; ++s) t.entry(s, 0, 0) = s % 2;
  const SeededStrategy<Rational> det(t);
  const auto l0 = make_seed_learner(mp(), det);
  History root(2, 5);
  REQUIRE(l0.diagnose(root).hypothesis);
  CHECK(l0.diagnose(root).hypothesis->stage == 0);
  CHECK(exact_payoff(mp(), 5, Profile{l0.strategy, det.behavioral()})[0] == 1);
  CHECK(best_response_value(mp(), 5, det.behavioral(), 0).value == 1);

  CHECK_THROWS_AS(make_seed_learner(example_game("mp-punishment"), SeededStrategy<Rational>(DecisionTable::filled(1, 4, 1, 3, HistorySummary::kNone))), DomainError);
}

TEST_CASE("seed learner benchmark: seed-indexed bits") {
  const int n = 10;
  const auto opp = seed_bits(n);
  const auto learner = make_seed_learner(mp(), opp);
  Rational total(0);
  for (std::uint32_t r = 0; r < 16; ++r) {
    CAPTURE(r);
    const Rational pay = exact_payoff(mp(), n, Profile{learner.strategy, opp.fixed_seed(r)})[0];
    CHECK(pay == frac(3, 5));
    total += pay;
    // emission stage on this seed's path
    History h(2, n);
    int emitted = -1;
    for (int t = 0; t < n && emitted < 0; ++t) {
      if (auto hyp = learner.diagnose(h).hypothesis) emitted = hyp->stage;
      h.push({0, opp.action(h, r)});
    }
    CHECK(emitted == 4);  // stage 5 counting from 1
  }
  CHECK(total / 16 == frac(3, 5));

  SeedLearnerConfig once;
  once.single_shot = true;
  const auto single = seed_learner_strategy(mp(), opp, once);
  for (std::uint32_t r = 0; r < 16; ++r)
    CHECK(exact_payoff(mp(), n, Profile{single, opp.fixed_seed(r)})[0] == frac(1, 10));
  CHECK(exact_payoff(mp(), n, Profile{learner.strategy, opp.behavioral()})[0] == frac(3, 5));
}

TEST_CASE("seed posterior never loses the true seed") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 6; ++trial) {
    const int bits = 1 + trial;  // up to 6
    const int n = 6;
    const auto opp = random_table(gen, bits, n, trial % 2 ? HistorySummary::kLastOwn : HistorySummary::kOwnHistory);
    const auto learner = seed_learner_strategy(mp(), opp);
    for (std::uint32_t r = 0; r < opp.num_seeds(); ++r) {
      for (std::uint64_t stream = 0; stream < 3; ++stream) {
        Rng rng = stream_rng(stream, r);
        const History h = play_out(mp(), n, Profile{learner, opp.fixed_seed(r)}, rng);
        for (int t = 0; t <= n; ++t) {
          const auto post = seed_posterior(opp, h.prefix(t));
          CHECK(std::find(post.seeds.begin(), post.seeds.end(), r) != post.seeds.end());
          Rational sum(0);
          for (const auto& w : post.weights) sum += w;
          CHECK(sum == 1);
        }
      }
    }
  }
}

TEST_CASE("seed learner never drops below the value") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int bits = trial % 5;
    const int n = 2 + trial % 4;
    const auto opp = random_table(gen, bits, n, static_cast<HistorySummary>(trial % 3));
    const auto learner = seed_learner_strategy(mp(), opp);
    for (std::uint32_t r = 0; r < opp.num_seeds(); ++r)
      CHECK(exact_payoff(mp(), n, Profile{learner, opp.fixed_seed(r)})[0] >= 0);
  }
}

TEST_CASE("inconsistent observations are an internal error") {
  auto t = DecisionTable::filled(1, 2, 2, 3, HistorySummary::kNone);  // every seed plays H
  const SeededStrategy<Rational> opp(t);
  History h(2, 3);
  h.push({0, 1});
  CHECK_THROWS_AS(seed_posterior(opp, h), InternalError);
  CHECK_THROWS_AS(seed_learner_strategy(mp(), opp).at(h), InternalError);
}

TEST_CASE("transcripts") {
  const auto opp = seed_bits(10);
  const auto learner = make_seed_learner(mp(), opp);
  const auto rows = run_transcript(mp(), 10, learner, opp.behavioral(), 42);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0].posterior_size == 16u);
  CHECK(rows[4].posterior_size == 1u);
  CHECK(rows[9].running_average >= frac(3, 5) - frac(4, 10));
  const std::string csv = transcript_csv(mp(), 0, rows);
  CHECK(csv.rfind("stage,own_action,opponent_action,posterior_size,confidence,running_average\n", 0) == 0);
  CHECK(csv == transcript_csv(mp(), 0, run_transcript(mp(), 10, learner, opp.behavioral(), 42)));

  const auto pred = make_predictor(mp(), 0);
  const auto prow = run_transcript(mp(), 20, pred, alternating_tht(20), 1);
  CHECK(!prow[0].posterior_size);
  CHECK(prow[19].confidence == doctest::Approx(1.0));
}

TEST_CASE("weak dominance") {
  CHECK(!weak_dominance_report(mp()).guarantee_void);
  CHECK(weak_dominance_report(mp()).pairs.empty());
  Matrix<Rational> a(2, 2), b(2, 2);
  a << 3, 0, 5, 1;
  b << 3, 5, 0, 1;
  const auto pd = make_bimatrix_game("pd", {"C", "D"}, {"C", "D"}, a, b);
  const auto r = weak_dominance_report(pd);
  CHECK(r.guarantee_void);
  REQUIRE(r.pairs.size() == 2);
  CHECK(r.pairs[0].dominating == 1);
  CHECK(r.pairs[0].strict);
  CHECK(r.guarantee_void == has_weakly_dominant_pure_strategy(pd));
  Matrix<Rational> w(2, 2);
  w << 1, 0, 1, 1;  // row 1 weakly dominates row 0
  const auto weak = make_zero_sum_game("weak", w);
  const auto wr = weak_dominance_report(weak);
  CHECK(wr.guarantee_void);
  CHECK(!wr.pairs[0].strict);
}

TEST_CASE("engines round-trip through documents") {
  const auto rules = exploit_rules();
  PredictorConfig c;
  c.context_length = 3;
  c.threshold = frac(4, 5);
  const auto pred = predictor_strategy(mp(), 1, c);
  const auto back = strategy_from_json(mp(), nlohmann::json::parse(strategy_to_json(pred).dump()), rules);
  History h(2, 8);
  for (int t = 0; t < 8; ++t) {
    CHECK(back.at(h) == pred.at(h));
    CHECK(back.state_key(h) == pred.state_key(h));
    h.push({t % 2, 0});
  }
  const auto opp = seed_bits(6);
  const auto learner = seed_learner_strategy(mp(), opp);
  const auto lb = strategy_from_json(mp(), strategy_to_json(learner), rules);
  const auto myo = best_response_exploiter(mp(), 6, opp.behavioral());
  const auto mb = strategy_from_json(mp(), strategy_to_json(myo), rules);
  for (std::uint32_t r = 0; r < 16; ++r) {
    CHECK(exact_payoff(mp(), 6, Profile{lb, opp.fixed_seed(r)}) == exact_payoff(mp(), 6, Profile{learner, opp.fixed_seed(r)}));
    CHECK(exact_payoff(mp(), 6, Profile{mb, opp.fixed_seed(r)}) == exact_payoff(mp(), 6, Profile{myo, opp.fixed_seed(r)}));
  }
}
