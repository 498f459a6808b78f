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

#include "lowrand/core/game.hpp"

namespace lowrand {

// Half the L1 distance between two distributions over the same atoms.
template <typename Scalar>
Scalar statistical_distance(const Vector<Scalar>& p, const Vector<Scalar>& q) {
  if (p.size() != q.size()) throw InvalidInput("statistical distance needs distributions of equal size");
  Scalar sum(0);
  for (Eigen::Index a = 0; a < p.size(); ++a) {
    const Scalar d = p(a) - q(a);
    sum += d < Scalar(0) ? Scalar(-d) : d;
  }
  return sum / Scalar(2);
}

template <typename Scalar>
Scalar statistical_distance(const MixedStrategy<Scalar>& p, const MixedStrategy<Scalar>& q) {
  return statistical_distance(p.probs, q.probs);
}

// Distance from the nearest point mass: 1 - max_a p(a).
template <typename Scalar>
Scalar distance_to_point_mass(const Vector<Scalar>& p) {
  return Scalar(1) - p.maxCoeff();
}

}  // namespace lowrand
