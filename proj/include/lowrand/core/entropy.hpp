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

#include <span>

#include "lowrand/core/game.hpp"
#include "lowrand/core/scalar.hpp"

namespace lowrand {

// Shannon entropy in bits, -sum p log2 p over positive weights.
double entropy_bits(std::span<const double> probs);

template <typename Scalar>
double shannon_entropy(const Vector<Scalar>& probs) {
  std::vector<double> p(static_cast<std::size_t>(probs.size()));
  for (Eigen::Index a = 0; a < probs.size(); ++a) p[a] = to_double(probs(a));
  return entropy_bits(p);
}

template <typename Scalar>
double shannon_entropy(const MixedStrategy<Scalar>& strategy) {
  return shannon_entropy(strategy.probs);
}

// h(q) = -q log2 q - (1-q) log2 (1-q).
double binary_entropy(double q);

// The unique q in [0, 1/2] with h(q) = h, found by bisection to 1e-12.
double binary_entropy_inverse(double h);

}  // namespace lowrand
