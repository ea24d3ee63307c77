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

#ifndef QDKNAP_TESTS_TEST_UTIL_H_
#define QDKNAP_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qdknap/knapsack.h"

namespace qdknap::testing {

// w = (2,3,4,5), p = (3,4,5,6), C = 6; OPT = 8 via items {1, 3}.
inline Instance oracle_instance(std::int64_t capacity = 6) {
  return Instance({2, 3, 4, 5}, {3, 4, 5, 6}, capacity);
}

// Random instance from std::mt19937_64, independent of the generator module.
inline Instance random_instance(std::mt19937_64& gen, std::size_t n,
                                std::int64_t max_value,
                                std::int64_t max_capacity) {
  std::uniform_int_distribution<std::int64_t> value(1, max_value);
  std::vector<std::int64_t> w(n);
  std::vector<std::int64_t> p(n);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = value(gen);
    p[i] = value(gen);
    total += w[i];
  }
  std::int64_t wmax = *std::max_element(w.begin(), w.end());
  std::uniform_int_distribution<std::int64_t> cap(wmax,
                                                  std::max(wmax, std::min(total, max_capacity)));
  std::int64_t c = cap(gen);
  for (auto& x : w) x = std::min(x, c);
  return Instance(w, p, c);
}

// Naive subset sums straight from the bitstring text.
struct Naive {
  std::int64_t profit = 0;
  std::int64_t weight = 0;
  std::size_t last_index = 0;
};

inline Naive naive_evaluate(const std::string& bits, const Instance& inst) {
  Naive out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.profit += inst.profit(i);
      out.weight += inst.weight(i);
    }
  }
  for (std::size_t i = bits.size(); i > 0; --i) {
    if (bits[i - 1] == '1') {
      out.last_index = i;
      break;
    }
  }
  return out;
}

inline std::string mask_to_bits(std::uint64_t mask, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    if ((mask >> i) & 1U) s[i] = '1';
  }
  return s;
}

}  // namespace qdknap::testing

#endif  // QDKNAP_TESTS_TEST_UTIL_H_
