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

#include "qdknap/oracles.h"

#include <algorithm>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qdknap/errors.h"
#include "wide_int.h"

namespace qdknap {
namespace {

// One row of decision bits per item.
class DecisionTable {
 public:
  DecisionTable(std::size_t items, std::size_t width, std::uint64_t limit)
      : width_(width), words_per_row_((width + 63) / 64) {
    const auto bits = static_cast<uint128>(items) * width;
    if (bits > limit) {
      throw ResourceLimitExceeded(
          "DP decision table of " + std::to_string(items) + " x " +
          std::to_string(width) + " exceeds the configured bit limit");
    }
    bits_.assign(items * words_per_row_, 0);
  }

  void set(std::size_t item, std::size_t col) {
    bits_[item * words_per_row_ + (col >> 6)] |= std::uint64_t{1} << (col & 63);
  }
  bool test(std::size_t item, std::size_t col) const {
    return (bits_[item * words_per_row_ + (col >> 6)] >> (col & 63)) & 1U;
  }
  std::size_t width() const { return width_; }

 private:
  std::size_t width_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> bits_;
};

struct ProfitDpResult {
  std::int64_t best_scaled = 0;
  Solution witness;
  std::size_t cols = 0;
};

// Minimizes weight for every reachable (scaled) profit; profits may be zero.
ProfitDpResult min_weight_dp(std::span<const std::int64_t> weights,
                             std::span<const std::int64_t> profits,
                             std::int64_t capacity, std::uint64_t limit) {
  const std::size_t n = weights.size();
  std::int64_t total = 0;
  for (auto p : profits) total += p;
  const auto width = static_cast<std::size_t>(total) + 1;
  DecisionTable take(n, width, limit);
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> min_weight(width, kInf);
  min_weight[0] = 0;
  std::int64_t reach = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t p = profits[i];
    const std::int64_t w = weights[i];
    reach += p;
    for (std::int64_t q = reach; q >= p; --q) {
      const std::int64_t prev = min_weight[q - p];
      if (prev != kInf && prev + w < min_weight[q]) {
        min_weight[q] = prev + w;
        take.set(i, static_cast<std::size_t>(q));
      }
    }
  }
  ProfitDpResult out;
  out.cols = width;
  for (std::int64_t q = total; q >= 0; --q) {
    if (min_weight[q] <= capacity) {
      out.best_scaled = q;
      break;
    }
  }
  out.witness = Solution(n);
  std::int64_t q = out.best_scaled;
  for (std::size_t i = n; i-- > 0;) {
    if (take.test(i, static_cast<std::size_t>(q))) {
      out.witness.flip(i);
      q -= profits[i];
    }
  }
  return out;
}

}  // namespace

OracleResult brute_force_opt(const Instance& instance) {
  const std::size_t n = instance.size();
  if (n > kBruteForceMaxItems) {
    throw ContractViolation("brute_force_opt refuses n = " + std::to_string(n) +
                            " > " + std::to_string(kBruteForceMaxItems));
  }
  // Bit i of `mask` is item i + 1. Lexicographic order of bitstrings
  // (item 1 first) equals numeric order of the bit-reversed mask.
  auto lex_key = [n](std::uint64_t mask) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) key |= std::uint64_t{1} << (n - 1 - i);
    }
    return key;
  };
  std::int64_t best = -1;
  std::uint64_t best_mask = 0;
  std::uint64_t best_key = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::int64_t w = 0;
    std::int64_t p = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) {
        w += instance.weight(i);
        p += instance.profit(i);
      }
    }
    if (w > instance.capacity()) continue;
    if (p > best) {
      best = p;
      best_mask = mask;
      best_key = lex_key(mask);
    } else if (p == best) {
      auto key = lex_key(mask);
      if (key < best_key) {
        best_mask = mask;
        best_key = key;
      }
    }
  }
  OracleResult out;
  out.opt_profit = best;
  out.witness = Solution(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((best_mask >> i) & 1U) out.witness.flip(i);
  }
  return out;
}

OracleResult dp_by_weight(const Instance& instance,
                          std::uint64_t max_table_bits) {
  const std::size_t n = instance.size();
  const auto width = static_cast<std::size_t>(instance.capacity()) + 1;
  DecisionTable take(n, width, max_table_bits);
  std::vector<std::int64_t> best(width, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = static_cast<std::size_t>(instance.weight(i));
    const std::int64_t p = instance.profit(i);
    for (std::size_t c = width - 1; c >= w; --c) {
      if (best[c - w] + p > best[c]) {
        best[c] = best[c - w] + p;
        take.set(i, c);
      }
    }
  }
  OracleResult out;
  out.opt_profit = best[width - 1];
  out.table_stats = std::make_pair(n, width);
  out.witness = Solution(n);
  std::size_t c = width - 1;
  for (std::size_t i = n; i-- > 0;) {
    if (take.test(i, c)) {
      out.witness.flip(i);
      c -= static_cast<std::size_t>(instance.weight(i));
    }
  }
  return out;
}

OracleResult dp_by_profit(const Instance& instance,
                          std::uint64_t max_table_bits) {
  auto dp = min_weight_dp(instance.weights(), instance.profits(),
                          instance.capacity(), max_table_bits);
  OracleResult out;
  out.opt_profit = dp.best_scaled;
  out.witness = std::move(dp.witness);
  out.table_stats = std::make_pair(instance.size(), dp.cols);
  return out;
}

OracleResult fptas(const Instance& instance, const Rational& epsilon,
                   std::uint64_t max_table_bits) {
  if (epsilon <= Rational(0) || epsilon >= Rational(1)) {
    throw ContractViolation("fptas epsilon must lie in (0, 1), got " +
                            epsilon.to_string());
  }
  Rational k = epsilon * Rational(instance.max_profit(),
                                  static_cast<std::int64_t>(instance.size()));
  if (k < Rational(1)) k = Rational(1);
  std::vector<std::int64_t> scaled(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    scaled[i] = floor_div(instance.profit(i), k);
  }
  auto dp = min_weight_dp(instance.weights(), scaled, instance.capacity(),
                          max_table_bits);
  OracleResult out;
  out.opt_profit = evaluate(dp.witness, instance).profit;
  out.witness = std::move(dp.witness);
  out.table_stats = std::make_pair(instance.size(), dp.cols);
  return out;
}

}  // namespace qdknap
