// Copyright 2026 The qdknap Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdknap/rational.h"

#include <charconv>
#include <limits>
#include <numeric>

#include "qdknap/errors.h"
#include "wide_int.h"

namespace qdknap {
namespace {

Rational from_wide(int128 num, int128 den) {
  if (den == 0) throw ContractViolation("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  int128 a = num < 0 ? -num : num;
  int128 b = den;
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr int128 kMax = std::numeric_limits<std::int64_t>::max();
  if (num > kMax || num < -kMax || den > kMax) {
    throw ContractViolation("rational overflows 64-bit numerator/denominator");
  }
  return Rational(static_cast<std::int64_t>(num),
                  static_cast<std::int64_t>(den));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ContractViolation("malformed rational '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ContractViolation("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s, text));
  return Rational(parse_int(trim(s.substr(0, slash)), text),
                  parse_int(trim(s.substr(slash + 1)), text));
}

std::string Rational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return from_wide(static_cast<int128>(a.num_) * b.num_,
                   static_cast<int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return from_wide(static_cast<int128>(a.num_) * b.den_,
                   static_cast<int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int128 lhs = static_cast<int128>(a.num_) * b.den_;
  int128 rhs = static_cast<int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::int64_t floor_div(std::int64_t value, const Rational& r) {
  if (value < 0 || !r.is_positive()) {
    throw ContractViolation("floor_div requires value >= 0 and r > 0");
  }
  int128 q = static_cast<int128>(value) * r.den() / r.num();
  if (q > std::numeric_limits<std::int64_t>::max()) {
    throw ContractViolation("floor_div result overflows int64");
  }
  return static_cast<std::int64_t>(q);
}

}  // namespace qdknap
