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

#include "lowrand/core/scalar.hpp"

#include <cstdio>

#include "lowrand/core/errors.hpp"

namespace lowrand {
namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw InvalidInput("malformed rational: '" + std::string(whole) + "'");
  std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
  if (start == digits.size()) throw InvalidInput("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t i = start; i < digits.size(); ++i) {
    if (digits[i] < '0' || digits[i] > '9')
      throw InvalidInput("malformed rational: '" + std::string(whole) + "'");
  }
  // Leading zeros would be read as an octal prefix.
  std::string_view body = digits.substr(start);
  while (body.size() > 1 && body.front() == '0') body.remove_prefix(1);
  Integer value(std::string{body});
  return digits[0] == '-' ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    return Rational(num) / Rational(den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    std::string joined = std::string(int_part) + std::string(frac);
    if (joined.empty() || joined == "-" || joined == "+")
      throw InvalidInput("malformed rational: '" + std::string(text) + "'");
    Integer num = parse_integer(joined, text);
    Integer den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(num) / Rational(den);
  }
  return Rational(parse_integer(text, text));
}

std::string format_rational(const Rational& x) {
  Integer num = boost::multiprecision::numerator(x);
  Integer den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

std::string format_scalar(const Rational& x) { return format_rational(x); }
std::string format_scalar(double x) { return format_double(x); }

Integer lcm_of_denominators(const Vector<Rational>& values) {
  Integer k = 1;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    Integer d = boost::multiprecision::denominator(values(i));
    k = boost::multiprecision::lcm(k, d);
  }
  return k;
}

}  // namespace lowrand
