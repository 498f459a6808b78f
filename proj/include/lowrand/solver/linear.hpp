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
#include <utility>

#include "lowrand/core/scalar.hpp"

namespace lowrand {

// Solves the square system m x = rhs by Gaussian elimination. Rationals pivot
// on any nonzero entry (exact); doubles use partial pivoting. Returns nullopt
// when the matrix is singular.
template <typename Scalar>
std::optional<Vector<Scalar>> solve_square(Matrix<Scalar> m, Vector<Scalar> rhs) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    if constexpr (ScalarTraits<Scalar>::kExact) {
      for (Eigen::Index r = col; r < n; ++r)
        if (m(r, col) != 0) {
          pivot = r;
          break;
        }
    } else {
      double best = 1e-12;
      for (Eigen::Index r = col; r < n; ++r)
        if (std::abs(m(r, col)) > best) {
          best = std::abs(m(r, col));
          pivot = r;
        }
    }
    if (pivot < 0) return std::nullopt;
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      std::swap(rhs(pivot), rhs(col));
    }
    const Scalar inv = Scalar(1) / m(col, col);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || m(r, col) == Scalar(0)) continue;
      const Scalar f = m(r, col) * inv;
      for (Eigen::Index c = col; c < n; ++c) m(r, c) -= f * m(col, c);
      rhs(r) -= f * rhs(col);
    }
  }
  Vector<Scalar> x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = rhs(i) / m(i, i);
  return x;
}

}  // namespace lowrand
