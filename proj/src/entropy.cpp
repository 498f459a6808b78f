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

#include "lowrand/core/entropy.hpp"

#include <cmath>

#include "lowrand/core/errors.hpp"

namespace lowrand {

double entropy_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw InvalidInput("negative probability");
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h == 0.0 ? 0.0 : h;
}

double binary_entropy(double q) {
  if (q < 0.0 || q > 1.0) throw InvalidInput("binary entropy needs q in [0,1]");
  double h = 0.0;
  if (q > 0.0) h -= q * std::log2(q);
  if (q < 1.0) h -= (1.0 - q) * std::log2(1.0 - q);
  return h;
}

double binary_entropy_inverse(double h) {
  if (!(h >= 0.0 && h <= 1.0)) throw InvalidInput("binary_entropy_inverse needs h in [0,1]");
  if (h == 0.0) return 0.0;
  if (h == 1.0) return 0.5;
  double lo = 0.0;
  double hi = 0.5;
  // h is increasing on [0, 1/2].
  while (hi - lo > 1e-13) {
    double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < h) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace lowrand
