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

#ifndef QDKNAP_RATIONAL_H_
#define QDKNAP_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qdknap {

// Exact rational number num/den, always stored reduced with den > 0.
//
// Niche widths and approximation parameters are kept exact so that bucket
// boundaries never depend on floating-point rounding.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  // Accepts "a/b", "a", optionally surrounded by whitespace.
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_positive() const { return num_ > 0; }
  double to_double() const { return static_cast<double>(num_) / den_; }

  // Always "num/den", including integers ("5/1").
  std::string to_string() const;

  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// floor(value / r) for value >= 0 and r > 0, computed as
// floor(value * den / num) in 128-bit integer arithmetic.
std::int64_t floor_div(std::int64_t value, const Rational& r);

}  // namespace qdknap

#endif  // QDKNAP_RATIONAL_H_
