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

#include "lowrand/cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lowrand/cli/experiments.hpp"
#include "lowrand/construct/epsnash.hpp"
#include "lowrand/construct/folk.hpp"
#include "lowrand/construct/stagewise.hpp"
#include "lowrand/core/example_games.hpp"
#include "lowrand/core/game_io.hpp"
#include "lowrand/exploit/predictor.hpp"
#include "lowrand/exploit/seed_learner.hpp"
#include "lowrand/exploit/transcript.hpp"
#include "lowrand/repeated/strategy_io.hpp"
#include "lowrand/solver/bimatrix_nash.hpp"
#include "lowrand/solver/zero_sum.hpp"
#include "lowrand/verify/certify.hpp"

namespace lowrand {

namespace {

struct Options {
  std::string game = "matching-pennies";
  std::vector<int> horizons;
  std::vector<std::string> eps;
  std::vector<std::uint64_t> seeds;
  std::string out;
  std::string format = "csv";
  std::string profile;
  std::string kind = "folk";
  std::string target;
  std::string engine = "predictor";
  std::string opponent;
  std::string experiment;
  int grid = 64;
  int count = 100;
  int plays = 2000;
  int context_length = 2;
  std::string threshold = "3/4";
  int min_support = 3;
  std::string sd_threshold = "0";
  bool single_shot = false;
  int owner = 0;
};

RuleResolver all_rules() {
  return [c = construction_rules(), e = exploit_rules()](const StageGame<Rational>& g, const nlohmann::json& doc) {
    if (auto s = c(g, doc)) return s;
    return e(g, doc);
  };
}

int horizon(const Options& o) {
  if (o.horizons.size() != 1) throw InvalidInput("this command needs exactly one --n");
  return o.horizons.front();
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

std::filesystem::path out_dir(const Options& o) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return "lowrand-out";
}

// Writes to --out when given, else to the stream.
void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + o.out);
  f << text;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const auto game = resolve_game(o.game);
  nlohmann::json doc;
  doc["game"] = game.name();
  doc["zero_sum"] = game.is_zero_sum();
  if (game.num_players() == 2) {
    const auto mm = minmax_profile(game);
    doc["minmax"] = {rational_to_json(mm[0]), rational_to_json(mm[1])};
    if (game.is_zero_sum()) {
      const auto z = solve_zero_sum(game);
      doc["value"] = rational_to_json(z.value);
      doc["row_strategy"] = mixed_to_json(z.row.strategy);
      doc["col_strategy"] = mixed_to_json(z.col.strategy);
      for (int i = 0; i < 2; ++i) {
        const auto m = min_entropy_minmax(game, i);
        doc["min_entropy_minmax"].push_back({{"player", i}, {"beta", m.beta}, {"strategy", mixed_to_json(m.strategy)}});
      }
    }
    const auto eqs = enumerate_bimatrix_nash(game);
    doc["degenerate"] = eqs.degenerate;
    doc["equilibria"] = nlohmann::json::array();
    for (const auto& e : eqs.equilibria)
      doc["equilibria"].push_back({{"row", mixed_to_json(e.profile[0])},
                                   {"col", mixed_to_json(e.profile[1])},
                                   {"payoff", {rational_to_json(e.payoff[0]), rational_to_json(e.payoff[1])}}});
  }
  emit(o, doc.dump(2) + "\n", out);
  return kExitOk;
}

StrategyProfile<Rational> load_profile(const StageGame<Rational>& game, const Options& o) {
  if (o.profile.empty()) throw InvalidInput("--profile is required");
  return profile_from_json(game, load_json_file(o.profile), all_rules());
}

int cmd_entropy(const Options& o, std::ostream& out) {
  const auto game = resolve_game(o.game);
  const int n = horizon(o);
  const auto profile = load_profile(game, o);
  nlohmann::json doc;
  doc["game"] = game.name();
  doc["horizon"] = n;
  for (int i = 0; i < game.num_players(); ++i) {
    doc["entropy"].push_back(strategy_entropy(game, n, profile[i]));
    doc["effective_entropy"].push_back(effective_entropy(game, n, profile, i));
  }
  emit(o, doc.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_construct(const Options& o, std::ostream& out) {
  const auto game = resolve_game(o.game);
  const int n = horizon(o);
  const auto eps = [&] {
    if (o.eps.size() != 1) throw InvalidInput("this construction needs exactly one --eps");
    return parse_rational(o.eps.front());
  };
  nlohmann::json doc;
  if (o.kind == "folk") {
    const auto t = parse_list(o.target.empty() ? "3,3" : o.target);
    PayoffProfile<Rational> target;
    target.values = Vector<Rational>(static_cast<Eigen::Index>(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i) target.values(static_cast<Eigen::Index>(i)) = t[i];
    const auto eq = folk_equilibrium(game, n, target);
    doc = profile_to_json(game, n, eq.profile);
    doc["plan"] = plan_to_json(game, eq.plan);
  } else if (o.kind == "stagewise") {
    const auto eqs = enumerate_bimatrix_nash(game);
    if (eqs.equilibria.empty()) throw DomainError("no stage equilibrium found");
    doc = profile_to_json(game, n, stagewise_equilibrium(game, n, eqs.equilibria.front().profile));
  } else if (o.kind == "zerosum-eps") {
    const auto z = zerosum_epsnash(game, n, eps());
    doc = profile_to_json(game, n, z.profile);
    doc["bound"] = rational_to_json(z.bound);
  } else if (o.kind == "mp-eps") {
    if (!is_matching_pennies(game)) throw DomainError("mp-eps needs matching pennies");
    const auto m = mp_epsnash(n, eps());
    doc = profile_to_json(game, n, m.profile);
    doc["bound"] = rational_to_json(m.bound);
  } else {
    throw InvalidInput("unknown construction '" + o.kind + "'");
  }
  emit(o, doc.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_certify(const Options& o, std::ostream& out) {
  const auto game = resolve_game(o.game);
  const auto doc = load_json_file(o.profile.empty() ? throw InvalidInput("--profile is required") : o.profile);
  const int n = o.horizons.empty() ? doc.at("horizon").get<int>() : horizon(o);
  const auto profile = profile_from_json(game, doc, all_rules());
  std::optional<Rational> eps;
  if (!o.eps.empty()) eps = parse_rational(o.eps.front());
  const auto report = certify(game, n, profile, eps);
  emit(o, report_to_json(game, report).dump(2) + "\n", out);
  return report.verdict == Verdict::kNotNash ? kExitBoundViolation : kExitOk;
}

Exploiter build_engine(const Options& o, const StageGame<Rational>& game, int n,
                       const BehavioralStrategy<Rational>& opponent, const nlohmann::json& opp_doc) {
  if (o.engine == "predictor") {
    PredictorConfig c;
    c.context_length = o.context_length;
    c.threshold = parse_rational(o.threshold);
    c.min_support = o.min_support;
    return make_predictor(game, 1 - opponent.owner(), c);
  } else if (o.engine == "seed-learner") {
    if (opp_doc.value("form", std::string()) != "seeded")
      throw InvalidInput("the seed learner needs a seeded opponent program");
    SeedLearnerConfig c;
    c.sd_threshold = parse_rational(o.sd_threshold);
    c.single_shot = o.single_shot;
    return make_seed_learner(game, seeded_from_json(opp_doc), c);
  } else if (o.engine == "myopic") {
    return myopic_exploiter(game, n, opponent);
  }
  throw InvalidInput("unknown engine '" + o.engine + "'");
}

int cmd_exploit(const Options& o, std::ostream& out) {
  const auto game = resolve_game(o.game);
  const int n = horizon(o);
  if (o.opponent.empty()) throw InvalidInput("--opponent is required");
  const auto opp_doc = load_json_file(o.opponent);
  const auto opponent = strategy_from_json(game, opp_doc, all_rules());
  const Exploiter engine = build_engine(o, game, n, opponent, opp_doc);
  const auto seeds = o.seeds.empty() ? std::vector<std::uint64_t>{1} : o.seeds;
  const auto rows = run_transcript(game, n, engine, opponent, seeds.front());
  const int owner = engine.strategy.owner();
  if (o.format == "lines") {
    CsvTable t;
    t.columns = {"stage", "own_action", "opponent_action", "posterior_size", "confidence", "running_average"};
    for (const auto& r : rows)
      t.add({std::to_string(r.stage), game.action_labels(owner)[r.own_action],
             game.action_labels(1 - owner)[r.opponent_action],
             r.posterior_size ? std::to_string(*r.posterior_size) : "",
             r.confidence ? format_double(*r.confidence) : "", format_rational(r.running_average)});
    emit(o, t.to_lines(), out);
  } else {
    emit(o, transcript_csv(game, owner, rows), out);
  }
  return kExitOk;
}

int cmd_experiment(const Options& o, std::ostream& out) {
  std::vector<std::string> names;
  if (o.experiment == "all") {
    names = experiment_names();
  } else {
    names.push_back(o.experiment);
  }
  std::vector<ExperimentResult> results;
  for (const auto& name : names) {
    ExperimentSpec spec;
    spec.name = name;
    if (o.game != "matching-pennies" || name == "zerosum-eps" || name == "cavU") spec.game = o.game;
    if (name == "folk-entropy" && o.game == "matching-pennies") spec.game.reset();
    spec.horizons = o.horizons;
    for (const auto& e : o.eps) spec.eps.push_back(parse_rational(e));
    spec.seeds = o.seeds;
    if (!o.target.empty()) spec.target = parse_list(o.target);
    spec.grid = o.grid;
    spec.count = o.count;
    spec.plays = o.plays;
    results.push_back(run_experiment(spec));
  }
  const bool lines = o.format == "lines";
  const auto dir = out_dir(o);
  write_experiments(results, dir, lines);
  auto summary = experiments_summary(results, lines);
  summary["directory"] = dir.string();
  out << summary.dump(2) << '\n';
  return summary["violations"].get<int>() > 0 ? kExitBoundViolation : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Low-randomness equilibria and exploitation in repeated games", "lowrand"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--game", o.game, "registry name or game file");
    sub->add_option("--n", o.horizons, "horizon (experiments accept several)")->delimiter(',');
    sub->add_option("--eps", o.eps, "epsilon as p/q or decimal")->delimiter(',');
    sub->add_option("--seed", o.seeds, "rng seeds")->delimiter(',');
    sub->add_option("--out", o.out, "output file (directory for experiments)");
    sub->add_option("--format", o.format, "csv or lines")->check(CLI::IsMember({"csv", "lines"}));
  };

  auto* solve = app.add_subcommand("solve", "stage game solutions");
  add_common(solve);
  auto* entropy = app.add_subcommand("entropy", "strategy and effective entropy of a profile");
  add_common(entropy);
  entropy->add_option("--profile", o.profile, "profile document")->required();
  auto* construct = app.add_subcommand("construct", "build an equilibrium profile");
  add_common(construct);
  construct->add_option("--kind", o.kind, "folk, stagewise, zerosum-eps or mp-eps")
      ->check(CLI::IsMember({"folk", "stagewise", "zerosum-eps", "mp-eps"}));
  construct->add_option("--target", o.target, "target payoff for folk, e.g. 3,3");
  auto* cert = app.add_subcommand("certify", "exploitability report of a profile");
  add_common(cert);
  cert->add_option("--profile", o.profile, "profile document")->required();
  auto* exploit = app.add_subcommand("exploit", "play an exploitation engine against an opponent");
  add_common(exploit);
  exploit->add_option("--engine", o.engine, "predictor, seed-learner or myopic")
      ->check(CLI::IsMember({"predictor", "seed-learner", "myopic"}));
  exploit->add_option("--opponent", o.opponent, "opponent strategy document")->required();
  exploit->add_option("--context-length", o.context_length);
  exploit->add_option("--threshold", o.threshold);
  exploit->add_option("--min-support", o.min_support);
  exploit->add_option("--sd-threshold", o.sd_threshold);
  exploit->add_flag("--single-shot", o.single_shot);
  auto* experiment = app.add_subcommand("experiment", "run a batch experiment");
  add_common(experiment);
  std::vector<std::string> choices = experiment_names();
  choices.push_back("all");
  experiment->add_option("name", o.experiment, "experiment name or all")->required()->check(CLI::IsMember(choices));
  experiment->add_option("--target", o.target, "folk target payoff");
  experiment->add_option("--grid", o.grid, "cavU grid size");
  experiment->add_option("--count", o.count, "random opponents per seed");
  experiment->add_option("--plays", o.plays, "Monte Carlo playouts");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "lowrand: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (solve->parsed()) return cmd_solve(o, out);
    if (entropy->parsed()) return cmd_entropy(o, out);
    if (construct->parsed()) return cmd_construct(o, out);
    if (cert->parsed()) return cmd_certify(o, out);
    if (exploit->parsed()) return cmd_exploit(o, out);
    if (experiment->parsed()) return cmd_experiment(o, out);
  } catch (const std::exception& e) {
    err << "lowrand: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace lowrand
