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

#include <cmath>
#include <random>

#include "lowrand/core/entropy.hpp"
#include "lowrand/core/example_games.hpp"
#include "lowrand/core/game.hpp"
#include "lowrand/core/game_io.hpp"

using namespace lowrand;

namespace {

using Mixed = MixedStrategy<Rational>;

Mixed mixed(int owner, std::initializer_list<const char*> probs) {
  Mixed s{owner, Vector<Rational>(static_cast<Eigen::Index>(probs.size()))};
  Eigen::Index i = 0;
  for (const char* p : probs) s.probs(i++) = parse_rational(p);
  return s;
}

// Random rational distribution with denominators up to 12.
Mixed random_mixed(std::mt19937_64& rng, int owner, int size) {
  std::uniform_int_distribution<int> w(0, 12);
  Vector<Rational> p(size);
  Rational total = 0;
  for (int i = 0; i < size; ++i) {
    p(i) = Rational(w(rng));
    total += p(i);
  }
  if (total == 0) {
    p(0) = 1;
    total = 1;
  }
  return Mixed{owner, p / total};
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("6/8") == Rational(3) / Rational(4));
  CHECK(format_rational(parse_rational("6/8")) == "3/4");
  CHECK(format_rational(parse_rational("-4")) == "-4");
  CHECK(parse_rational("-0.25") == Rational(-1) / Rational(4));
  CHECK(parse_rational("010") == Rational(10));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
}

TEST_CASE("example games are the three bundled payoff tables") {
  const auto& games = example_games();
  REQUIRE(games.size() == 3);

  const auto& mp = example_game("matching-pennies");
  CHECK(mp.bimatrix(0) == (Matrix<Rational>(2, 2) << 1, -1, -1, 1).finished());
  CHECK(mp.bimatrix(1) == (Matrix<Rational>(2, 2) << -1, 1, 1, -1).finished());
  CHECK(mp.is_zero_sum());
  CHECK(is_matching_pennies(mp));

  const auto& ext = example_game("extended-mp");
  CHECK(ext.action_labels(0) == std::vector<std::string>{"U", "H", "T", "D"});
  CHECK(ext.action_labels(1) == std::vector<std::string>{"L", "H", "T", "R"});
  for (int c = 0; c < 3; ++c) {
    CHECK(ext.bimatrix(0)(0, c) == 0);
    CHECK(ext.bimatrix(1)(0, c) == -1);
  }
  CHECK(ext.bimatrix(0)(0, 3) == 0);
  CHECK(ext.bimatrix(1)(0, 3) == 0);
  CHECK_FALSE(ext.is_zero_sum());

  const auto& pun = example_game("mp-punishment");
  const int row_c[4][2] = {{3, 3}, {-3, 6}, {-3, 6}, {-3, -3}};
  for (int c = 0; c < 4; ++c) {
    CHECK(pun.bimatrix(0)(0, c) == row_c[c][0]);
    CHECK(pun.bimatrix(1)(0, c) == row_c[c][1]);
  }
  CHECK(pun.bimatrix(0)(3, 3) == -4);

  CHECK_THROWS_WITH_AS(example_game("nope"), doctest::Contains("unknown game"), InvalidInput);
}

TEST_CASE("stage game invariants") {
  Matrix<Rational> payoffs = Matrix<Rational>::Zero(3, 2);
  CHECK_THROWS_AS(StageGame<Rational>({{"a", "b"}, {"x", "y"}}, payoffs), InvalidInput);
  CHECK_THROWS_AS(StageGame<Rational>({{"a", "a"}, {"x"}}, Matrix<Rational>::Zero(2, 2)), InvalidInput);
  CHECK_THROWS_AS(StageGame<Rational>({{"a"}}, Matrix<Rational>::Zero(1, 1)), InvalidInput);

  // Three players, profile indexing is mixed radix with player 0 leading.
  StageGame<Rational> g3({{"a", "b"}, {"x", "y", "z"}, {"p", "q"}}, Matrix<Rational>::Zero(12, 3));
  std::vector<int> prof{1, 2, 0};
  CHECK(g3.profile_index(prof) == 1 * 6 + 2 * 2 + 0);
  CHECK(g3.decode_profile(10) == prof);
  CHECK_FALSE(g3.is_zero_sum());
}

TEST_CASE("expected payoff examples") {
  const auto& mp = example_game("matching-pennies");
  std::vector<Mixed> uniform{Mixed::uniform(0, 2), Mixed::uniform(1, 2)};
  CHECK(expected_payoff(mp, uniform).values == Vector<Rational>::Zero(2));

  // Pure profiles read the tensor.
  for (std::size_t idx = 0; idx < mp.num_profiles(); ++idx) {
    auto a = mp.decode_profile(idx);
    std::vector<Mixed> pure{Mixed::pure(0, 2, a[0]), Mixed::pure(1, 2, a[1])};
    auto p = expected_payoff(mp, pure);
    CHECK(p[0] == mp.payoff(idx, 0));
    CHECK(p[1] == mp.payoff(idx, 1));
  }

  const auto& pun = example_game("mp-punishment");
  std::vector<Mixed> inner{mixed(0, {"0", "1/2", "1/2", "0"}), mixed(1, {"0", "1/2", "1/2", "0"})};
  CHECK(expected_payoff(pun, inner).values == Vector<Rational>::Zero(2));

  std::vector<Mixed> wrong{Mixed::uniform(0, 3), Mixed::uniform(1, 2)};
  CHECK_THROWS_AS(expected_payoff(mp, wrong), InvalidInput);
  std::vector<Mixed> one{Mixed::uniform(0, 2)};
  CHECK_THROWS_AS(expected_payoff(mp, one), InvalidInput);
  std::vector<Mixed> bad{mixed(0, {"1/2", "1/3"}), Mixed::uniform(1, 2)};
  CHECK_THROWS_AS(expected_payoff(mp, bad), InvalidInput);
}

TEST_CASE("expected payoff is multilinear and zero-sum exact") {
  std::mt19937_64 rng(7);
  const auto& games = example_games();
  for (const auto& [name, game] : games) {
    for (int trial = 0; trial < 25; ++trial) {
      int player = trial % 2;
      std::vector<Mixed> base{random_mixed(rng, 0, game.num_actions(0)),
                              random_mixed(rng, 1, game.num_actions(1))};
      Mixed s1 = random_mixed(rng, player, game.num_actions(player));
      Mixed s2 = random_mixed(rng, player, game.num_actions(player));
      Rational lambda = Rational(trial % 7) / Rational(6);
      Mixed mix{player, lambda * s1.probs + (Rational(1) - lambda) * s2.probs};
      auto with = [&](const Mixed& s) {
        auto prof = base;
        prof[player] = s;
        return expected_payoff(game, prof).values;
      };
      Vector<Rational> lhs = with(mix);
      Vector<Rational> rhs = lambda * with(s1) + (Rational(1) - lambda) * with(s2);
      CHECK(lhs == rhs);
      if (game.is_zero_sum()) CHECK(lhs(0) + lhs(1) == 0);
    }
  }
}

TEST_CASE("double instantiation agrees with rational") {
  const auto mp = example_game("mp-punishment").cast<double>();
  std::vector<MixedStrategy<double>> prof{MixedStrategy<double>::uniform(0, 4),
                                          MixedStrategy<double>::pure(1, 4, 0)};
  auto p = expected_payoff(mp, prof);
  CHECK(p[0] == doctest::Approx((3.0 + 6 + 6 - 3) / 4));
  CHECK(p[1] == doctest::Approx((3.0 - 3 - 3 - 3) / 4));
}

TEST_CASE("shannon entropy") {
  CHECK(shannon_entropy(mixed(0, {"1/2", "1/2"})) == 1.0);
  CHECK(shannon_entropy(mixed(0, {"1", "0"})) == 0.0);
  // Oracle: 40-digit evaluation of the formula.
  CHECK(shannon_entropy(mixed(0, {"1/4", "3/4"})) ==
        doctest::Approx(0.8112781244591328639).epsilon(1e-15));
  for (int n = 1; n <= 16; ++n) {
    CHECK(shannon_entropy(Mixed::uniform(0, n)) == doctest::Approx(std::log2(n)).epsilon(1e-14));
    for (int a = 0; a < n; ++a) CHECK(shannon_entropy(Mixed::pure(0, n, a)) == 0.0);
  }
  // Uniform maximizes.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + trial % 6;
    CHECK(shannon_entropy(random_mixed(rng, 0, n)) <= std::log2(n) + 1e-12);
  }
}

TEST_CASE("binary entropy inverse") {
  CHECK(binary_entropy_inverse(1.0) == 0.5);
  CHECK(binary_entropy_inverse(0.0) == 0.0);
  // Oracle: Brent root of the forward formula (scipy), 0.249999921475.
  CHECK(binary_entropy_inverse(0.811278) == doctest::Approx(0.249999921475).epsilon(1e-9));
  CHECK(std::abs(binary_entropy_inverse(0.811278) - 0.25) <= 1e-6);
  CHECK_THROWS_AS(binary_entropy_inverse(-0.1), InvalidInput);
  CHECK_THROWS_AS(binary_entropy_inverse(1.5), InvalidInput);
  for (int i = 0; i <= 1000; ++i) {
    double h = i / 1000.0;
    CHECK(std::abs(binary_entropy(binary_entropy_inverse(h)) - h) <= 1e-9);
  }
}

TEST_CASE("game documents round-trip and reject malformed input") {
  for (const auto& [name, game] : example_games()) {
    auto doc = game_to_json(game);
    auto back = game_from_json(doc);
    CHECK(back.payoffs() == game.payoffs());
    CHECK(back.actions() == game.actions());
    CHECK(game_to_json(back).dump() == doc.dump());
  }
  auto doc = nlohmann::json::parse(R"({"players":2,"actions":[["a","b"],["x"]],
      "payoffs":[[["1/2", -1]], [[2, "-3/4"]]]})");
  auto g = game_from_json(doc);
  CHECK(g.payoff(std::vector<int>{0, 0}, 0) == Rational(1) / 2);
  CHECK(g.payoff(std::vector<int>{1, 0}, 1) == Rational(-3) / 4);

  auto bad = nlohmann::json::parse(R"({"players":2,"actions":[["a","b"],["x"]],
      "payoffs":[[["1/2", -1]]]})");
  CHECK_THROWS_AS(game_from_json(bad), InvalidInput);
  auto bad_players = nlohmann::json::parse(R"({"players":3,"actions":[["a"],["x"]],
      "payoffs":[[[0,0]]]})");
  CHECK_THROWS_AS(game_from_json(bad_players), InvalidInput);
}

TEST_CASE("bundled game files match the registry") {
  for (const auto& [name, game] : example_games()) {
    auto loaded = load_game_file(std::string(LOWRAND_GAMES_DIR) + "/" + name + ".json");
    CHECK(loaded.payoffs() == game.payoffs());
    CHECK(loaded.actions() == game.actions());
  }
}
