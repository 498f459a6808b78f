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

#include "lowrand/cli/experiments.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "lowrand/construct/epsnash.hpp"
#include "lowrand/construct/folk.hpp"
#include "lowrand/core/entropy.hpp"
#include "lowrand/core/example_games.hpp"
#include "lowrand/core/game_io.hpp"
#include "lowrand/exploit/predictor.hpp"
#include "lowrand/exploit/seed_learner.hpp"
#include "lowrand/repeated/monte_carlo.hpp"
#include "lowrand/solver/guarantee.hpp"
#include "lowrand/verify/bounds.hpp"
#include "lowrand/verify/certify.hpp"

namespace lowrand {

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw InternalError("csv row width does not match the header");
  rows.push_back(std::move(row));
}

std::string CsvTable::to_csv() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }
  return out.str();
}

std::string CsvTable::to_lines() const {
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << columns[c] << '=' << row[c];
    out << '\n';
  }
  return out.str();
}

namespace {

using Profile = StrategyProfile<Rational>;

std::string fmt(const Rational& x) { return format_rational(x); }
std::string fmt(double x) { return format_double(x); }
std::string fmt(int x) { return std::to_string(x); }
std::string fmt(bool x) { return x ? "true" : "false"; }

const StageGame<Rational>& load_game(const std::optional<std::string>& name, const std::string& fallback,
                                     StageGame<Rational>& storage) {
  const std::string g = name.value_or(fallback);
  const auto& reg = example_games();
  if (auto it = reg.find(g); it != reg.end()) return it->second;
  if (std::filesystem::exists(g)) {
    storage = load_game_file(g);
    return storage;
  }
  throw InvalidInput("unknown game '" + g + "'");
}

template <typename T>
std::vector<T> or_default(const std::vector<T>& given, std::vector<T> fallback) {
  return given.empty() ? fallback : given;
}

std::vector<std::uint64_t> seeds_of(const ExperimentSpec& spec) { return or_default(spec.seeds, {1}); }

Rational frac(int p, int q) { return Rational(p) / Rational(q); }

ExperimentResult mp_tradeoff(const ExperimentSpec& spec) {
  ExperimentResult r{"mp-tradeoff", {}, 0};
  r.table.columns = {"n", "eps", "mixed_stages", "entropy_row", "entropy_col", "entropy_cap", "exploitability", "bound",
                     "within_bound"};
  const auto& mp = example_game("matching-pennies");
  for (int n : or_default(spec.horizons, {4, 6, 8})) {
    for (const Rational& eps : or_default(spec.eps, {Rational(0), frac(1, 4), frac(1, 2)})) {
      const auto e = mp_epsnash(n, eps);
      const auto report = certify(mp, n, e.profile);
      const Rational cap = (1 - eps) * n;
      const double tol = 1e-9;
      const bool ok = report.max_exploitability() <= e.bound && report.entropy[0] <= to_double(cap) + tol &&
                      report.entropy[1] <= to_double(cap) + tol;
      if (!ok) ++r.violations;
      r.table.add({fmt(n), fmt(eps), fmt(e.mixed_stages), fmt(report.entropy[0]), fmt(report.entropy[1]), fmt(cap),
                   fmt(report.max_exploitability()), fmt(e.bound), fmt(ok)});
    }
  }
  return r;
}

ExperimentResult zerosum_eps(const ExperimentSpec& spec) {
  ExperimentResult r{"zerosum-eps", {}, 0};
  r.table.columns = {"game", "n", "eps", "constant", "entropy_row", "entropy_col", "exploitability", "bound",
                     "within_bound"};
  StageGame<Rational> storage;
  const auto& game = load_game(spec.game, "matching-pennies", storage);
  for (int n : or_default(spec.horizons, {4, 6})) {
    for (const Rational& eps : or_default(spec.eps, {frac(1, 4), frac(1, 2)})) {
      const auto z = zerosum_epsnash(game, n, eps);
      const auto report = certify(game, n, z.profile);
      const bool ok = report.max_exploitability() <= z.bound;
      if (!ok) ++r.violations;
      r.table.add({game.name(), fmt(n), fmt(eps), fmt(z.constant), fmt(report.entropy[0]), fmt(report.entropy[1]),
                   fmt(report.max_exploitability()), fmt(z.bound), fmt(ok)});
    }
  }
  return r;
}

ExperimentResult folk_entropy(const ExperimentSpec& spec) {
  ExperimentResult r{"folk-entropy", {}, 0};
  r.table.columns = {"game", "n", "block_length", "tail_length", "payoff_row", "payoff_col", "exploitability",
                     "effective_entropy_row", "effective_entropy_col", "effective_entropy_bound", "verdict"};
  StageGame<Rational> storage;
  const auto& game = load_game(spec.game, "mp-punishment", storage);
  PayoffProfile<Rational> target;
  const auto t = spec.target.value_or(std::vector<Rational>{3, 3});
  target.values = Vector<Rational>(static_cast<Eigen::Index>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) target.values(static_cast<Eigen::Index>(i)) = t[i];
  for (int n : or_default(spec.horizons, {5, 9, 13})) {
    const auto eq = folk_equilibrium(game, n, target);
    const auto report = certify(game, n, eq.profile);
    const auto bound = effective_entropy_bound(eq.plan);
    double worst_bound = 0;
    for (double b : bound) worst_bound = std::max(worst_bound, b);
    bool ok = report.verdict == Verdict::kExactNash;
    for (int i = 0; i < game.num_players(); ++i) ok = ok && report.effective_entropy[i] <= bound[i] + 1e-9;
    if (!ok) ++r.violations;
    r.table.add({game.name(), fmt(n), fmt(eq.plan.block_length()), fmt(eq.plan.tail_length), fmt(report.payoff[0]),
                 fmt(report.payoff[1]), fmt(report.max_exploitability()), fmt(report.effective_entropy[0]),
                 fmt(report.effective_entropy[1]), fmt(worst_bound), verdict_name(report.verdict)});
  }
  return r;
}

ExperimentResult cav_u(const ExperimentSpec& spec) {
  ExperimentResult r{"cavU", {}, 0};
  StageGame<Rational> storage;
  const auto& game = load_game(spec.game, "matching-pennies", storage);
  const bool mp = is_matching_pennies(game);
  r.table.columns = {"gamma", "u", "cav_u", "u_reference", "cav_u_reference", "abs_error", "within_tolerance"};
  const auto curve = guarantee_curve(game, 0, spec.grid);
  for (std::size_t k = 0; k < curve.gammas.size(); ++k) {
    const double g = curve.gammas[k];
    std::string u_ref, cav_ref, err, ok = "";
    if (mp) {
      const double ur = 2.0 * binary_entropy_inverse(std::min(g, 1.0)) - 1.0;
      const double cr = g - 1.0;
      const double e = std::max(std::abs(curve.values[k] - ur), std::abs(curve.cav_values[k] - cr));
      u_ref = fmt(ur);
      cav_ref = fmt(cr);
      err = fmt(e);
      ok = fmt(e <= 1e-3);
      if (e > 1e-3) ++r.violations;
    }
    r.table.add({fmt(g), fmt(curve.values[k]), fmt(curve.cav_values[k]), u_ref, cav_ref, err, ok});
  }
  return r;
}

HistorySummary summary_for(std::size_t k) {
  return k % 3 == 0 ? HistorySummary::kNone : k % 3 == 1 ? HistorySummary::kLastOwn : HistorySummary::kOwnHistory;
}

ExperimentResult exploit_floor(const ExperimentSpec& spec) {
  ExperimentResult r{"exploit-floor", {}, 0};
  r.table.columns = {"seed", "opponent", "n", "seed_bits", "summary", "entropy", "best_response", "floor",
                     "within_bound"};
  const auto& mp = example_game("matching-pennies");
  for (int n : or_default(spec.horizons, {4})) {
    for (auto seed : seeds_of(spec)) {
      Rng rng = stream_rng(seed, static_cast<std::uint64_t>(n));
      for (int k = 0; k < spec.count; ++k) {
        const int bits = static_cast<int>(rng() % 5);
        const auto summary = summary_for(rng());
        const SeededStrategy<Rational> opp(random_decision_table(rng, 1, 2, bits, n, summary));
        const auto sigma = opp.behavioral();
        const double h = strategy_entropy(mp, n, sigma);
        const Rational br = best_response_value(mp, n, sigma, 0).value;
        const double floor = 1.0 - h / n;
        const bool ok = to_double(br) >= floor - 1e-9;
        if (!ok) ++r.violations;
        r.table.add({std::to_string(seed), fmt(k), fmt(n), fmt(bits), summary_name(summary), fmt(h), fmt(br),
                     fmt(floor), fmt(ok)});
      }
    }
  }
  return r;
}

ExperimentResult seed_learner(const ExperimentSpec& spec) {
  ExperimentResult r{"seed-learner", {}, 0};
  r.table.columns = {"n", "seed", "payoff", "hypothesis_stage", "value", "at_least_value"};
  const auto& mp = example_game("matching-pennies");
  for (int n : or_default(spec.horizons, {10})) {
    auto t = DecisionTable::filled(1, 2, 4, n, HistorySummary::kNone);
    for (int s = 0; s < n; ++s)
      for (std::uint32_t seed = 0; seed < 16; ++seed) t.entry(s, 0, seed) = static_cast<int>((seed >> (s % 4)) & 1);
    const SeededStrategy<Rational> opp(t);
    const auto learner = make_seed_learner(mp, opp);
    for (std::uint32_t seed = 0; seed < 16; ++seed) {
      const Rational pay = exact_payoff(mp, n, Profile{learner.strategy, opp.fixed_seed(seed)})[0];
      History h(2, n);
      std::string stage;
      for (int s = 0; s < n && stage.empty(); ++s) {
        if (auto hyp = learner.diagnose(h).hypothesis) stage = fmt(hyp->stage + 1);
        h.push({0, opp.action(h, seed)});
      }
      const bool ok = pay >= 0;
      if (!ok) ++r.violations;
      r.table.add({fmt(n), fmt(static_cast<int>(seed)), fmt(pay), stage, "0", fmt(ok)});
    }
  }
  return r;
}

ExperimentResult potential(const ExperimentSpec& spec) {
  ExperimentResult r{"potential", {}, 0};
  r.table.columns = {"seed", "opponent", "stage", "increment", "formula", "at_least_one"};
  const auto& mp = example_game("matching-pennies");
  for (int n : or_default(spec.horizons, {5})) {
    for (auto seed : seeds_of(spec)) {
      Rng rng = stream_rng(seed, 1000 + static_cast<std::uint64_t>(n));
      for (int k = 0; k < spec.count; ++k) {
        const int bits = static_cast<int>(rng() % 5);
        const auto summary = summary_for(rng());
        SeededStrategy<Rational> opp(random_decision_table(rng, 1, 2, bits, n, summary));
        // skewed seed priors so that stage distributions are not all dyadic halves
        Vector<Rational> w(opp.num_seeds());
        Rational total(0);
        for (std::uint32_t s = 0; s < opp.num_seeds(); ++s) total += (w(s) = Rational(1 + static_cast<int>(rng() % 4)));
        opp.set_seed_weights(w / total);
        const auto trace = mp_potential_trace(mp, n, opp.behavioral());
        for (int t = 0; t < n; ++t) {
          const bool ok = trace.increments[t] >= 1.0 - 1e-9;
          if (!ok) ++r.violations;
          r.table.add({std::to_string(seed), fmt(k), fmt(t + 1), fmt(trace.increments[t]), fmt(trace.formula[t]),
                       fmt(ok)});
        }
      }
    }
  }
  return r;
}

ExperimentResult predictor_iid(const ExperimentSpec& spec) {
  ExperimentResult r{"predictor", {}, 0};
  r.table.columns = {"seed", "n", "opponent_heads", "plays", "mean", "std_err"};
  const auto& mp = example_game("matching-pennies");
  PredictorConfig config;
  config.context_length = 1;
  config.threshold = frac(3, 5);
  for (int n : or_default(spec.horizons, {50})) {
    for (auto seed : seeds_of(spec)) {
      for (const Rational& heads : {frac(1, 2), frac(1, 4), Rational(0)}) {
        Vector<Rational> p(2);
        p << heads, 1 - heads;
        const Profile profile{predictor_strategy(mp, 0, config), stationary_strategy(MixedStrategy<Rational>{1, p})};
        const auto mc = monte_carlo_payoff(mp, n, profile, static_cast<std::size_t>(spec.plays), seed);
        r.table.add({std::to_string(seed), fmt(n), fmt(heads), fmt(spec.plays), fmt(mc.mean[0]), fmt(mc.std_err[0])});
      }
    }
  }
  return r;
}

using Runner = ExperimentResult (*)(const ExperimentSpec&);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> r = {
      {"mp-tradeoff", mp_tradeoff}, {"zerosum-eps", zerosum_eps},   {"folk-entropy", folk_entropy},
      {"cavU", cav_u},              {"exploit-floor", exploit_floor}, {"seed-learner", seed_learner},
      {"potential", potential},     {"predictor", predictor_iid}};
  return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : runners()) out.push_back(name);
    return out;
  }();
  return names;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  auto it = runners().find(spec.name);
  if (it == runners().end()) throw InvalidInput("unknown experiment '" + spec.name + "'");
  if (spec.grid < 2) throw InvalidInput("grid needs at least two points");
  if (spec.count < 1 || spec.plays < 1) throw InvalidInput("count and plays must be positive");
  return it->second(spec);
}

nlohmann::json experiments_summary(const std::vector<ExperimentResult>& results, bool lines_format) {
  nlohmann::json doc;
  doc["experiments"] = nlohmann::json::array();
  int total = 0;
  for (const auto& r : results) {
    doc["experiments"].push_back({{"name", r.name},
                                  {"file", r.name + (lines_format ? ".txt" : ".csv")},
                                  {"rows", r.table.rows.size()},
                                  {"violations", r.violations}});
    total += r.violations;
  }
  doc["violations"] = total;
  return doc;
}

std::vector<std::filesystem::path> write_experiments(const std::vector<ExperimentResult>& results,
                                                     const std::filesystem::path& dir, bool lines_format) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& r : results) {
    const auto path = dir / (r.name + (lines_format ? ".txt" : ".csv"));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << (lines_format ? r.table.to_lines() : r.table.to_csv());
    written.push_back(path);
  }
  const auto summary = dir / "summary.json";
  std::ofstream out(summary, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + summary.string());
  out << experiments_summary(results, lines_format).dump(2) << '\n';
  written.push_back(summary);
  return written;
}

}  // namespace lowrand
