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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "lowrand/cli/experiments.hpp"
#include "lowrand/construct/epsnash.hpp"
#include "lowrand/construct/folk.hpp"
#include "lowrand/construct/stagewise.hpp"
#include "lowrand/core/entropy.hpp"
#include "lowrand/core/example_games.hpp"
#include "lowrand/exploit/seed_learner.hpp"
#include "lowrand/repeated/engine.hpp"
#include "lowrand/repeated/random.hpp"
#include "lowrand/repeated/seeded.hpp"
#include "lowrand/solver/bimatrix_nash.hpp"
#include "lowrand/solver/guarantee.hpp"
#include "lowrand/solver/zero_sum.hpp"
#include "lowrand/verify/best_response.hpp"
#include "lowrand/verify/bounds.hpp"
#include "lowrand/verify/certify.hpp"

using namespace lowrand;

namespace {

using Profile = StrategyProfile<Rational>;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are reported.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ << (failures_ > 1 ? "; " : "") << what;
  }
  Outcome done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failure(s): " + notes_.str()};
  }

 private:
  int failures_ = 0;
  std::ostringstream notes_;
};

Rational frac(int p, int q) { return Rational(p) / Rational(q); }
const StageGame<Rational>& mp() { return example_game("matching-pennies"); }

MixedStrategy<Rational> half_on(int player, int size, int a, int b) {
  Vector<Rational> p = Vector<Rational>::Zero(size);
  p(a) = p(b) = frac(1, 2);
  return {player, p};
}

Outcome stage_solutions() {
  Tally t;
  const auto z = solve_zero_sum(mp());
  Vector<Rational> half = Vector<Rational>::Constant(2, frac(1, 2));
  t.expect(z.value == 0, "mp value " + format_rational(z.value));
  t.expect(z.row.strategy.probs == half && z.col.strategy.probs == half, "mp strategies not uniform");
  t.expect(minmax_profile(example_game("extended-mp")).values == Vector<Rational>::Zero(2), "extended-mp minmax");
  t.expect(minmax_profile(example_game("mp-punishment")).values == Vector<Rational>::Constant(2, -3),
           "mp-punishment minmax");
  return t.done("v=0, (1/2,1/2); minmax (0,0) and (-3,-3)");
}

Outcome extended_mp_equilibria() {
  Tally t;
  const auto& g = example_game("extended-mp");
  const auto eqs = enumerate_bimatrix_nash(g);
  t.expect(eqs.equilibria.size() == 3, "found " + std::to_string(eqs.equilibria.size()) + " equilibria");
  const std::vector<std::pair<MixedStrategy<Rational>, MixedStrategy<Rational>>> expected{
      {half_on(0, 4, 1, 2), half_on(1, 4, 1, 2)},
      {half_on(0, 4, 0, 3), half_on(1, 4, 1, 3)},
      {half_on(0, 4, 0, 3), half_on(1, 4, 2, 3)}};
  for (const auto& [r, c] : expected) {
    bool found = false;
    for (const auto& e : eqs.equilibria) found = found || (e.profile[0] == r && e.profile[1] == c);
    t.expect(found, "missing an expected equilibrium");
  }
  for (const auto& e : eqs.equilibria) {
    t.expect(e.payoff.values == Vector<Rational>::Zero(2), "nonzero equilibrium payoff");
    const auto report = certify(g, 2, stagewise_equilibrium(g, 2, e.profile));
    t.expect(report.max_exploitability() == 0, "stagewise exploitability " +
                                                   format_rational(report.max_exploitability()));
    for (double h : report.entropy) t.expect(std::abs(h - 2.0) < 1e-12, "stagewise entropy " + format_double(h));
  }
  return t.done("3 equilibria, payoff (0,0); n=2 repetitions: exploitability 0, entropy 2");
}

Outcome folk() {
  Tally t;
  const auto& g = example_game("mp-punishment");
  PayoffProfile<Rational> target{Vector<Rational>::Constant(2, Rational(3))};
  for (int n : {5, 9, 13}) {
    const auto eq = folk_equilibrium(g, n, target);
    const auto report = certify(g, n, eq.profile);
    const Rational expect = Rational(3 * (n - 1)) / n;
    const std::string at = "n=" + std::to_string(n) + ": ";
    t.expect(report.verdict == Verdict::kExactNash, at + verdict_name(report.verdict));
    t.expect(report.max_exploitability() == 0, at + "exploitability");
    t.expect(report.payoff[0] == expect && report.payoff[1] == expect, at + "payoff");
    for (double h : report.effective_entropy) t.expect(std::abs(h - 1.0) < 1e-12, at + "effective entropy");
  }
  return t.done("exact NE at n=5,9,13; payoff 3(n-1)/n; effective entropy 1");
}

Outcome mp_tradeoff() {
  Tally t;
  for (int n : {4, 6, 8}) {
    for (const Rational& eps : {frac(1, 4), frac(1, 2)}) {
      const auto e = mp_epsnash(n, eps);
      const auto report = certify(mp(), n, e.profile);
      const std::string at = "n=" + std::to_string(n) + " eps=" + format_rational(eps) + ": ";
      const double cap = to_double((1 - eps) * n);
      for (double h : report.entropy) t.expect(h <= cap + 1e-9, at + "entropy " + format_double(h));
      t.expect(report.max_exploitability() <= eps + frac(2, n), at + "exploitability");
    }
  }
  // all oblivious 1-bit programs at n = 3
  const int n = 3;
  int exploited = 0;
  auto table = DecisionTable::filled(1, 2, 1, n, HistorySummary::kNone);
  for (std::uint32_t code = 0; code < 64; ++code) {
    for (int s = 0; s < n; ++s)
      for (std::uint32_t r = 0; r < 2; ++r) table.entry(s, 0, r) = static_cast<int>((code >> (2 * s + r)) & 1);
    const auto sigma = SeededStrategy<Rational>(table).behavioral();
    const double h = strategy_entropy(mp(), n, sigma);
    const Rational br = best_response_value(mp(), n, sigma, 0).value;
    t.expect(std::abs(to_double(br) - (1.0 - h / n)) < 1e-12, "table " + std::to_string(code) + " off the floor");
    if (std::abs(h - 1.0) < 1e-12) {
      t.expect(br == frac(2, 3), "table " + std::to_string(code) + " exploited to " + format_rational(br));
      ++exploited;
    }
  }
  t.expect(exploited > 0, "no entropy-1 program");
  return t.done("6 profiles within bounds; " + std::to_string(exploited) + " one-bit programs exploited to 2/3");
}

Outcome zerosum_eps() {
  Tally t;
  Matrix<Rational> skew(2, 2);
  skew << 3, -1, -2, 2;
  const auto other = make_zero_sum_game("skew", skew);
  for (const StageGame<Rational>* g : {&mp(), &other}) {
    const Matrix<Rational> a = own_payoff_matrix(*g, 0);
    const Rational c = (a.maxCoeff() - a.minCoeff()) / 2;
    for (int n : {4, 6}) {
      for (const Rational& eps : {frac(1, 4), frac(1, 2)}) {
        const auto z = zerosum_epsnash(*g, n, eps);
        const Rational bound = c * Rational(ceil_rational(eps * n) + 1) / n;
        const auto report = certify(*g, n, z.profile);
        t.expect(report.max_exploitability() <= bound, g->name() + " n=" + std::to_string(n) + " eps=" +
                                                           format_rational(eps) + ": " +
                                                           format_rational(report.max_exploitability()));
      }
    }
  }
  return t.done("8 profiles within c(ceil(n eps)+1)/n");
}

// Program family: 4 seed bits, n = 4, last-own summary. Stage 0 plays seed
// bit 0; stage t plays code[(t-1)*4 + 2*(seed bit t) + own previous action].
SeededStrategy<Rational> family_program(std::uint32_t code) {
  auto table = DecisionTable::filled(1, 2, 4, 4, HistorySummary::kLastOwn);
  for (std::uint32_t r = 0; r < 16; ++r)
    for (std::size_t ctx = 0; ctx < table.contexts(0); ++ctx) table.entry(0, ctx, r) = static_cast<int>(r & 1);
  for (int s = 1; s < 4; ++s)
    for (std::size_t ctx = 0; ctx < table.contexts(s); ++ctx)
      for (std::uint32_t r = 0; r < 16; ++r) {
        const std::uint32_t bit = (s - 1) * 4 + 2 * ((r >> s) & 1) + static_cast<std::uint32_t>(ctx & 1);
        table.entry(s, ctx, r) = static_cast<int>((code >> bit) & 1);
      }
  return SeededStrategy<Rational>(table);
}

// Constant or alternating play from a start action that is fixed or read off
// the seed; 2 x 8 = 16 programs.
SeededStrategy<Rational> simple_program(int k) {
  const bool alternate = k & 1;
  const int start = k >> 1;
  return SeededStrategy<Rational>(1, 2, 4, [alternate, start](const History& h, std::uint32_t seed) {
    int a = 0;
    switch (start) {
      case 0: a = 0; break;
      case 1: a = 1; break;
      case 6: a = static_cast<int>(~seed & 1); break;
      case 7: a = static_cast<int>(std::popcount(seed) & 1); break;
      default: a = static_cast<int>((seed >> (start - 2)) & 1);
    }
    return alternate ? a ^ (h.length() & 1) : a;
  });
}

Outcome exploitation_floor() {
  Tally t;
  const int n = 4;
  int checked = 0;
  const auto check = [&](const SeededStrategy<Rational>& s, const std::string& name) {
    const auto sigma = s.behavioral();
    const double h = strategy_entropy(mp(), n, sigma);
    const Rational br = best_response_value(mp(), n, sigma, 0).value;
    t.expect(to_double(br) >= 1.0 - h / n - 1e-9, name + ": " + format_rational(br) + " < 1-" + format_double(h) + "/4");
    ++checked;
  };
  Rng rng = stream_rng(2026, 6);
  for (int k = 0; k < 500; ++k) {
    const auto code = static_cast<std::uint32_t>(rng() % 4096);
    check(family_program(code), "program " + std::to_string(code));
  }
  for (int k = 0; k < 16; ++k) check(simple_program(k), "simple " + std::to_string(k));
  return t.done(std::to_string(checked) + " programs, zero violations");
}

Outcome seed_learner() {
  Tally t;
  const int n = 10;
  auto table = DecisionTable::filled(1, 2, 4, n, HistorySummary::kNone);
  for (int s = 0; s < n; ++s)
    for (std::uint32_t seed = 0; seed < 16; ++seed) table.entry(s, 0, seed) = static_cast<int>((seed >> (s % 4)) & 1);
  const SeededStrategy<Rational> opp(table);
  const auto learner = seed_learner_strategy(mp(), opp);
  Rational total(0);
  for (std::uint32_t seed = 0; seed < 16; ++seed) {
    const Rational pay = exact_payoff(mp(), n, Profile{learner, opp.fixed_seed(seed)})[0];
    t.expect(pay >= 0, "seed " + std::to_string(seed) + " payoff " + format_rational(pay));
    total += pay;
  }
  const Rational mean = total / 16;
  t.expect(to_double(mean) >= 0.2, "mean " + format_rational(mean));
  return t.done("per-seed >= 0, mean " + format_rational(mean));
}

Outcome cav_u() {
  Tally t;
  const auto curve = guarantee_curve(mp(), 0, 64);
  double u_err = 0, cav_err = 0;
  for (std::size_t k = 0; k < curve.gammas.size(); ++k) {
    const double g = curve.gammas[k];
    u_err = std::max(u_err, std::abs(curve.values[k] - (2 * binary_entropy_inverse(std::min(g, 1.0)) - 1)));
    cav_err = std::max(cav_err, std::abs(curve.cav_values[k] - (g - 1)));
  }
  t.expect(curve.gammas.size() == 64, "grid size " + std::to_string(curve.gammas.size()));
  t.expect(u_err <= 1e-3, "U error " + format_double(u_err));
  t.expect(cav_err <= 1e-3, "cav U error " + format_double(cav_err));
  return t.done("max errors " + format_double(u_err) + ", " + format_double(cav_err));
}

Outcome potential() {
  Tally t;
  const int n = 5;
  Rng rng = stream_rng(2026, 9);
  double lowest = 1e9;
  for (int k = 0; k < 100; ++k) {
    const int bits = static_cast<int>(rng() % 5);
    const auto summary = static_cast<HistorySummary>(rng() % 3);
    const SeededStrategy<Rational> opp(random_decision_table(rng, 1, 2, bits, n, summary));
    const auto trace = mp_potential_trace(mp(), n, opp.behavioral());
    for (double inc : trace.increments) {
      lowest = std::min(lowest, inc);
      t.expect(inc >= 1.0 - 1e-9, "opponent " + std::to_string(k) + " increment " + format_double(inc));
    }
  }
  return t.done("100 opponents, smallest increment " + format_double(lowest));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Tally t;
  const auto root = std::filesystem::temp_directory_path() / "lowrand_acceptance";
  std::filesystem::remove_all(root);
  std::vector<std::filesystem::path> files[2];
  for (int run = 0; run < 2; ++run) {
    std::vector<ExperimentResult> results;
    for (const auto& name : experiment_names()) {
      ExperimentSpec spec;
      spec.name = name;
      spec.seeds = {1, 2};
      results.push_back(run_experiment(spec));
    }
    files[run] = write_experiments(results, root / std::to_string(run), false);
  }
  t.expect(files[0].size() == files[1].size(), "different file sets");
  for (std::size_t k = 0; k < files[0].size() && k < files[1].size(); ++k)
    t.expect(slurp(files[0][k]) == slurp(files[1][k]), files[0][k].filename().string() + " differs");
  std::filesystem::remove_all(root);
  return t.done(std::to_string(files[0].size()) + " files byte-identical");
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "stage solutions", 1, stage_solutions},
      {2, "extended-mp equilibria", 5, extended_mp_equilibria},
      {3, "folk equilibrium", 30, folk},
      {4, "matching-pennies tradeoff", 60, mp_tradeoff},
      {5, "zero-sum eps-Nash", 60, zerosum_eps},
      {6, "exploitation floor", 300, exploitation_floor},
      {7, "seed learner", 60, seed_learner},
      {8, "cav U", 10, cav_u},
      {9, "potential increments", 60, potential},
      {10, "determinism", 600, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.detail += " (over the " + format_double(c.limit_seconds) + " s budget)";
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << std::setw(2) << c.id << "] " << c.name << " - " << o.detail
              << " (" << std::fixed << std::setprecision(2) << secs << " s)" << std::defaultfloat << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
