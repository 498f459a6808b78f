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

#include "lowrand/core/game.hpp"

namespace lowrand {

// p = sum_a alpha_a u(a) with alpha_a = numerators[a] / K and K the least
// common denominator.
struct FeasibleDecomposition {
  struct Term {
    std::vector<int> profile;
    Rational weight;
    Integer numerator;
  };
  std::vector<Term> terms;  // nonzero weights, lexicographic profile order
  Integer denominator{1};
};

enum class FeasibilityVerdict { kFeasibleIr, kInfeasible, kNotIndividuallyRational };

struct FeasibilityResult {
  FeasibilityVerdict verdict = FeasibilityVerdict::kInfeasible;
  std::optional<FeasibleDecomposition> decomposition;
  PayoffProfile<Rational> minmax;
  std::string reason;

  explicit operator bool() const { return verdict == FeasibilityVerdict::kFeasibleIr; }
};

// Exact rational feasibility: finds a basic solution of
// {alpha >= 0, sum alpha = 1, sum alpha_a u(a) = p}, then checks p >= v.
// The minmax profile is computed for two players; for k > 2 pass it in.
FeasibilityResult check_feasible_ir(const StageGame<Rational>& game,
                                    const PayoffProfile<Rational>& target,
                                    const std::optional<PayoffProfile<Rational>>& minmax = std::nullopt);

}  // namespace lowrand
