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

#include "lowrand/construct/epsnash.hpp"
#include "lowrand/construct/folk.hpp"
#include "lowrand/construct/stagewise.hpp"
#include "lowrand/core/example_games.hpp"
#include "lowrand/repeated/seeded.hpp"
#include "lowrand/verify/bounds.hpp"
#include "lowrand/verify/certify.hpp"

using namespace lowrand;

namespace {

using Mixed = MixedStrategy<Rational>;
using Profile = StrategyProfile<Rational>;
const auto& mp() { return example_game("matching-pennies"); }
const auto& ext() { return example_game("extended-mp"); }
const auto& pun() { return example_game("mp-punishment"); }

Rational frac(int p, int q) { return Rational(p) / Rational(q); }

Mixed coin(int owner, const Rational& heads) {
  Vector<Rational> p(2);
  p << heads, 1 - heads;
  return Mixed{owner, p};
}

// Seed r picks H (0) or T (1) once and repeats it.
BehavioralStrategy<Rational> constant_by_seed(int owner, int n) {
  auto t = DecisionTable::filled(owner, 2, 1, n, HistorySummary::kNone);
  for (int s = 0; s < n; ++s)
    for (std::uint32_t r = 0; r < 2; ++r) t.entry(s, 0, r) = static_cast<int>(r);
  return SeededStrategy<Rational>(t).behavioral();
}

Profile uniform_mp() { return {uniform_strategy<Rational>(0, 2), uniform_strategy<Rational>(1, 2)}; }

// History-dependent column strategy with random rational probabilities.
BehavioralStrategy<Rational> random_column(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  StrategyTable<Rational> table;
  std::function<void(History&)> fill = [&](History& h) {
    if (h.terminal()) return;
    const int den = 1 + static_cast<int>(rng() % 8);
    const int num = static_cast<int>(rng() % (den + 1));
    table.emplace(h.flat(), coin(1, frac(num, den)));
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        h.push({a, b});
        fill(h);
        h.pop();
      }
  };
  History root(2, n);
  fill(root);
  return table_strategy<Rational>(1, 2, std::move(table));
}

}  // namespace

TEST_CASE("best response values") {
  CHECK(best_response_value(mp(), 3, uniform_strategy<Rational>(1, 2), 0).value == 0);
  CHECK(best_response_value(mp(), 3, pure_strategy<Rational>(1, 2, 0), 0).value == 1);
  const auto br = best_response_value(mp(), 3, constant_by_seed(1, 3), 0);
  CHECK(br.value == frac(2, 3));
  // the witness strategy is deterministic and achieves the value
  Profile deviated{br.strategy, constant_by_seed(1, 3)};
  CHECK(exact_payoff(mp(), 3, deviated)[0] == frac(2, 3));
  History h(2, 3);
  CHECK(br.strategy.at(h).is_pure());
  CHECK(br.strategy.at(h).most_likely() == 0);  // tie -> first action
}

TEST_CASE("best response dominates compliance") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto col = random_column(seed, 3);
    const Profile p{uniform_strategy<Rational>(0, 2), col};
    const auto pay = exact_payoff(mp(), 3, p);
    CHECK(best_response_value(mp(), 3, p, 0).value >= pay[0]);
    CHECK(best_response_value(mp(), 3, p, 1).value >= pay[1]);
  }
}

TEST_CASE("certify") {
  const auto u = certify(mp(), 3, uniform_mp());
  CHECK(u.verdict == Verdict::kExactNash);
  CHECK(u.entropy == std::vector<double>{3.0, 3.0});
  CHECK(!u.witness);
  CHECK(u.mode == "rational");

  const auto e = mp_epsnash(4, frac(1, 2));
  const auto r = certify(mp(), 4, e.profile, std::optional<Rational>(e.bound));
  CHECK(r.verdict == Verdict::kEpsNash);
  CHECK(*r.eps == 1);
  CHECK(r.max_exploitability() == frac(1, 2));

  const Profile bad{pure_strategy<Rational>(0, 2, 0), pure_strategy<Rational>(1, 2, 0)};
  const auto b = certify(mp(), 2, bad);
  CHECK(b.verdict == Verdict::kNotNash);
  REQUIRE(b.witness);
  CHECK(b.witness->player == 1);
  CHECK(b.witness->gain == 2);

  const auto doc = report_to_json(mp(), b);
  for (const char* f : {"exploitability", "entropy", "effective_entropy", "payoff", "verdict", "witness"})
    CHECK(doc.contains(f));
  CHECK(doc["verdict"] == "not-NE");
  CHECK(doc["witness"]["first_action"] == "T");
  CHECK(doc["witness"]["gain"] == 2);

  const auto f = certify(mp().cast<double>(), 3,
                         StrategyProfile<double>{uniform_strategy<double>(0, 2), uniform_strategy<double>(1, 2)});
  CHECK(f.verdict == Verdict::kExactNash);
  CHECK(f.mode == "float");
}

TEST_CASE("zero-sum consistency") {
  const auto row = min_entropy_minmax(mp(), 0).strategy;
  const auto col = min_entropy_minmax(mp(), 1).strategy;
  const auto nash = stagewise_equilibrium(mp(), 4, {row, col});
  CHECK(best_response_value(mp(), 4, nash[1], 0).value == solve_zero_sum(mp()).value);
}

TEST_CASE("on-path stage check") {
  const auto u = onpath_stage_check(mp(), 3, uniform_mp());
  CHECK(u.hypothesis_met);
  CHECK(u.violations().empty());
  CHECK(!u.checks.empty());

  const Profile pure{pure_strategy<Rational>(0, 2, 0), pure_strategy<Rational>(1, 2, 0)};
  const auto p = onpath_stage_check(mp(), 2, pure);
  const auto v = p.violations();
  REQUIRE(!v.empty());
  CHECK(v.front().history.length() == 0);
  CHECK(v.front().deviation.player == 1);
  CHECK(v.front().deviation.action == 1);

  // stage 0 uses one stage equilibrium, stage 1 another
  const auto eqs = enumerate_bimatrix_nash(ext()).equilibria;
  REQUIRE(eqs.size() == 3);
  Profile cycle;
  for (int i = 0; i < 2; ++i) cycle.push_back(schedule_strategy<Rational>(i, {eqs[0].profile[i], eqs[1].profile[i]}));
  const auto c = onpath_stage_check(ext(), 2, cycle);
  CHECK(c.hypothesis_met);
  CHECK(c.violations().empty());

  const auto folk = folk_equilibrium(pun(), 5, make_payoff_profile<Rational>({3, 3}));
  const auto f = onpath_stage_check(pun(), 5, folk.profile);
  CHECK(!f.hypothesis_met);
  CHECK(f.note == "hypothesis not met");
  CHECK(!f.violations().empty());  // cooperating is not a stage equilibrium
}

TEST_CASE("entropy bound check") {
  const Profile u{uniform_strategy<Rational>(0, 2), uniform_strategy<Rational>(1, 2)};
  const auto a = entropy_bound_check(mp(), 4, u);
  CHECK(a.branch == "zero-sum");
  CHECK(a.bounds[0].entropy == 4.0);
  CHECK(*a.bounds[0].required == doctest::Approx(4.0));
  CHECK(a.bounds[0].holds);
  REQUIRE(a.floors.size() == 2);
  CHECK(a.floors[0].floor == 0.0);
  CHECK(a.floors[0].holds);

  const Profile s{uniform_strategy<Rational>(0, 2), constant_by_seed(1, 3)};
  const auto b = entropy_bound_check(mp(), 3, s);
  CHECK(b.floors[1].floor == doctest::Approx(2.0 / 3.0));
  CHECK(b.floors[1].best_response == frac(2, 3));
  CHECK(b.floors[1].holds);
  CHECK(!b.bounds[1].holds);  // entropy 1 < 3: not an equilibrium strategy

  for (const auto& e : enumerate_bimatrix_nash(ext()).equilibria) {
    const auto nash = stagewise_equilibrium(ext(), 2, e.profile);
    REQUIRE(certify(ext(), 2, nash).verdict == Verdict::kExactNash);
    const auto r = entropy_bound_check(ext(), 2, nash);
    CHECK(r.branch == "equilibria-at-minmax");
    for (const auto& bound : r.bounds) {
      CHECK(bound.entropy >= 2.0 - 1e-12);
      CHECK(bound.holds);
    }
  }

  const auto folk = folk_equilibrium(pun(), 3, make_payoff_profile<Rational>({3, 3}));
  CHECK(entropy_bound_check(pun(), 3, folk.profile).branch == "none");
}

TEST_CASE("matching pennies potential trace") {
  const auto uniform = mp_potential_trace(mp(), 4, uniform_strategy<Rational>(1, 2));
  for (double x : uniform.increments) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));

  const auto pure = mp_potential_trace(mp(), 4, pure_strategy<Rational>(1, 2, 1));
  for (double x : pure.increments) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));

  const auto skew = mp_potential_trace(mp(), 5, stationary_strategy(coin(1, frac(1, 4))));
  for (std::size_t t = 0; t < skew.increments.size(); ++t) {
    CHECK(skew.increments[t] == doctest::Approx(1.311278124459).epsilon(1e-10));
    CHECK(skew.formula[t] == doctest::Approx(skew.increments[t]).epsilon(1e-12));
  }

  CHECK_THROWS_AS(mp_potential_trace(pun(), 3, uniform_strategy<Rational>(1, 4)), DomainError);
}

TEST_CASE("potential increments on random opponents") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const int n = 1 + static_cast<int>(seed % 6);
    CAPTURE(seed);
    const auto trace = mp_potential_trace(mp(), n, random_column(seed, n));
    for (std::size_t t = 0; t < trace.increments.size(); ++t) {
      CHECK(trace.increments[t] >= 1.0 - 1e-12);
      CHECK(trace.increments[t] == doctest::Approx(trace.formula[t]).epsilon(1e-10));
    }
    // phi telescopes: sum of increments = row payoff total + H(whole sequence)
    double sum = 0.0, pay = 0.0;
    for (std::size_t t = 0; t < trace.increments.size(); ++t) {
      sum += trace.increments[t];
      pay += trace.expected_payoff[t];
    }
    CHECK(sum == doctest::Approx(pay + trace.block_entropy[0]).epsilon(1e-10));
    CHECK(trace.block_entropy[n] == 0.0);
  }
}

TEST_CASE("low-entropy stages along every history") {
  // beta = 1 for matching pennies. A strategy of total entropy <= (1 - eps) n
  // keeps at least n (1 - (1 - eps) / (1 - eps / 2)) stages at entropy <= 1 - eps / 2.
  std::mt19937_64 rng(7);
  const std::vector<Rational> heads{0, frac(1, 2), frac(1, 3), frac(1, 8), frac(1, 100)};
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + trial % 9;
    std::vector<Mixed> stages;
    for (int t = 0; t < n; ++t) stages.push_back(coin(1, heads[rng() % heads.size()]));
    const auto s = schedule_strategy<Rational>(1, stages);
    const double h = strategy_entropy(mp(), n, s);
    if (h >= n) continue;
    for (double eps : {1.0 - h / n, (1.0 - h / n) / 2}) {
      if (eps <= 0) continue;
      const int count = min_low_entropy_stages(mp(), n, s, 1.0 - eps / 2);
      CHECK(count >= n * (1.0 - (1.0 - eps) / (1.0 - eps / 2)) - 1e-9);
    }
  }
  for (int n : {6, 10}) {
    const auto z = zerosum_epsnash(mp(), n, frac(1, 2));
    const double h = strategy_entropy(mp(), n, z.profile[0]);
    const double eps = 1.0 - h / n;
    CHECK(min_low_entropy_stages(mp(), n, z.profile[0], 1.0 - eps / 2) >= n * (1.0 - (1.0 - eps) / (1.0 - eps / 2)) - 1e-9);
  }
}
