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

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cmath>
#include <string>
#include <string_view>

namespace lowrand {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Comparison policy per scalar. Rationals compare exactly; doubles use an
// absolute tolerance so that LP pivots and probability cutoffs stay stable.
template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;
  static constexpr const char* kMode = "rational";
  static bool is_zero(const Rational& x) { return x == 0; }
  static bool is_positive(const Rational& x) { return x > 0; }
  static Rational zero_tolerance() { return Rational(0); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static constexpr const char* kMode = "float";
  static constexpr double kEps = 1e-12;
  static bool is_zero(double x) { return std::abs(x) <= kEps; }
  static bool is_positive(double x) { return x > kEps; }
  static double zero_tolerance() { return kEps; }
};

inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

template <typename To>
To scalar_cast(const Rational& x) {
  if constexpr (std::is_same_v<To, Rational>) {
    return x;
  } else {
    return x.convert_to<To>();
  }
}

template <typename To>
To scalar_cast(double x) {
  return To(x);
}

template <typename To, typename From>
Vector<To> vector_cast(const Vector<From>& v) {
  Vector<To> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = scalar_cast<To>(v(i));
  return out;
}

template <typename To, typename From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = scalar_cast<To>(m(r, c));
  return out;
}

// Accepts "p/q", "p", or a decimal like "-0.25" (converted exactly).
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is one.
std::string format_rational(const Rational& x);

// Printing helper shared by the CSV writers: rationals as "p/q", doubles with
// 12 significant digits.
std::string format_scalar(const Rational& x);
std::string format_scalar(double x);
std::string format_double(double x);

Integer lcm_of_denominators(const Vector<Rational>& values);

}  // namespace lowrand
