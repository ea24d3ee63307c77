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

#ifndef QDKNAP_ORACLES_H_
#define QDKNAP_ORACLES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>

#include "qdknap/knapsack.h"
#include "qdknap/rational.h"

namespace qdknap {

struct OracleResult {
  std::int64_t opt_profit = 0;
  Solution witness;  // feasible, p(witness) == opt_profit
  std::optional<std::pair<std::size_t, std::size_t>> table_stats;  // rows, cols
};

inline constexpr std::size_t kBruteForceMaxItems = 25;
// Decision bitsets are n * (axis + 1) bits; 2^33 bits is 1 GiB.
inline constexpr std::uint64_t kDefaultDpTableBits = std::uint64_t{1} << 33;

// Exhaustive over all 2^n subsets, n <= 25. The witness is the
// lexicographically smallest maximizer, comparing bitstrings item 1 first.
OracleResult brute_force_opt(const Instance& instance);

// Max profit per capacity; O(nC). Throws ResourceLimitExceeded if the
// decision table exceeds max_table_bits.
OracleResult dp_by_weight(const Instance& instance,
                          std::uint64_t max_table_bits = kDefaultDpTableBits);

// Min weight per profit value; O(nQ); OPT = max{q : minweight(q) <= C}.
OracleResult dp_by_profit(const Instance& instance,
                          std::uint64_t max_table_bits = kDefaultDpTableBits);

// Classic FPTAS: profits scaled to floor(p_i / K) with K = max(1, eps *
// max p / n) as an exact rational, solved by the profit DP. The returned
// opt_profit is the unscaled profit of the selected set, at least
// (1 - eps) OPT.
OracleResult fptas(const Instance& instance, const Rational& epsilon,
                   std::uint64_t max_table_bits = kDefaultDpTableBits);

}  // namespace qdknap

#endif  // QDKNAP_ORACLES_H_
