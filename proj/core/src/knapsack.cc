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

#include "qdknap/knapsack.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qdknap/errors.h"

namespace qdknap {

Instance::Instance(std::vector<std::int64_t> weights,
                   std::vector<std::int64_t> profits, std::int64_t capacity)
    : weights_(std::move(weights)),
      profits_(std::move(profits)),
      capacity_(capacity) {
  if (weights_.empty()) throw ContractViolation("instance has no items");
  if (weights_.size() != profits_.size()) {
    throw ContractViolation("weights and profits differ in length");
  }
  if (capacity_ <= 0) throw ContractViolation("capacity must be positive");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] <= 0 || weights_[i] > capacity_) {
      throw ContractViolation("item " + std::to_string(i + 1) +
                              " has weight outside (0, C]");
    }
    if (profits_[i] <= 0) {
      throw ContractViolation("item " + std::to_string(i + 1) +
                              " has non-positive profit");
    }
    total_weight_ += weights_[i];
    total_profit_ += profits_[i];
    max_profit_ = std::max(max_profit_, profits_[i]);
  }
}

Solution::Solution(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

Solution Solution::from_string(std::string_view bits) {
  Solution s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      s.flip(i);
    } else if (bits[i] != '0') {
      throw ContractViolation("bitstring contains a character other than 0/1");
    }
  }
  return s;
}

void Solution::set(std::size_t i, bool value) {
  if (test(i) != value) flip(i);
}

std::size_t Solution::last_index() const {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w] != 0) {
      return w * 64 + (64 - std::countl_zero(words_[w]));
    }
  }
  return 0;
}

std::size_t Solution::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

std::string Solution::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

void Solution::assign(const Solution& other) {
  n_ = other.n_;
  words_.assign(other.words_.begin(), other.words_.end());
}

Evaluation evaluate(const Solution& solution, const Instance& instance) {
  if (solution.size() != instance.size()) {
    throw ContractViolation("solution length " +
                            std::to_string(solution.size()) +
                            " does not match instance size " +
                            std::to_string(instance.size()));
  }
  Evaluation e;
  auto words = solution.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (std::uint64_t bits = words[w]; bits != 0; bits &= bits - 1) {
      std::size_t i = w * 64 + std::countr_zero(bits);
      e.profit += instance.profit(i);
      e.weight += instance.weight(i);
    }
  }
  e.last_index = solution.last_index();
  return e;
}

void sample_flip_positions(std::size_t n, RandomStream& rng,
                           std::vector<std::size_t>& flips) {
  flips.clear();
  if (n == 0) return;
  if (n == 1) {
    flips.push_back(0);
    return;
  }
  // Gaps between successive flips are geometric with success rate 1/n. The
  // first gap reaches n (no flip at all) iff u <= (1 - 1/n)^n, which skips
  // the logarithm in about 37% of calls.
  struct GapTable {
    std::size_t n = 0;
    double log_q = 0.0;
    double none = 0.0;
  };
  thread_local GapTable table;
  if (table.n != n) {
    table.n = n;
    table.log_q = std::log1p(-1.0 / static_cast<double>(n));
    table.none = std::exp(static_cast<double>(n) * table.log_q);
  }
  double u = rng.uniform_open01();
  if (u <= table.none) return;
  std::size_t pos = 0;
  while (true) {
    double gap = std::floor(std::log(u) / table.log_q);
    if (gap >= static_cast<double>(n - pos)) return;
    pos += static_cast<std::size_t>(gap);
    flips.push_back(pos);
    if (++pos >= n) return;
    u = rng.uniform_open01();
  }
}

Solution standard_bit_mutation(const Solution& parent, RandomStream& rng) {
  Solution child = parent;
  std::vector<std::size_t> flips;
  sample_flip_positions(parent.size(), rng, flips);
  for (auto i : flips) child.flip(i);
  return child;
}

void mutate_in_place(Solution& child, Evaluation& eval,
                     const Instance& instance, RandomStream& rng,
                     std::vector<std::size_t>& scratch) {
  sample_flip_positions(child.size(), rng, scratch);
  if (scratch.empty()) return;
  for (auto i : scratch) {
    child.flip(i);
    if (child.test(i)) {
      eval.profit += instance.profit(i);
      eval.weight += instance.weight(i);
    } else {
      eval.profit -= instance.profit(i);
      eval.weight -= instance.weight(i);
    }
  }
  eval.last_index = child.last_index();
}

}  // namespace qdknap
