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

#ifndef QDKNAP_KNAPSACK_H_
#define QDKNAP_KNAPSACK_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdknap/random.h"

namespace qdknap {

// A 0/1 knapsack instance with integral weights and profits.
//
// Invariants, checked on construction: at least one item, equal-length
// weight and profit vectors, 0 < w_i <= capacity, p_i > 0.
class Instance {
 public:
  Instance(std::vector<std::int64_t> weights, std::vector<std::int64_t> profits,
           std::int64_t capacity);

  std::size_t size() const { return weights_.size(); }
  std::int64_t capacity() const { return capacity_; }
  std::span<const std::int64_t> weights() const { return weights_; }
  std::span<const std::int64_t> profits() const { return profits_; }
  std::int64_t weight(std::size_t i) const { return weights_[i]; }
  std::int64_t profit(std::size_t i) const { return profits_[i]; }

  // Q, the sum of all profits.
  std::int64_t total_profit() const { return total_profit_; }
  std::int64_t total_weight() const { return total_weight_; }
  std::int64_t max_profit() const { return max_profit_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<std::int64_t> weights_;
  std::vector<std::int64_t> profits_;
  std::int64_t capacity_;
  std::int64_t total_profit_ = 0;
  std::int64_t total_weight_ = 0;
  std::int64_t max_profit_ = 0;
};

// Characteristic vector x of an item selection, packed 64 bits per word.
// Item i (1-based in the math, 0-based here) is bit i.
class Solution {
 public:
  Solution() = default;
  explicit Solution(std::size_t n);

  // Parses a string of '0'/'1' characters, item 1 first.
  static Solution from_string(std::string_view bits);

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void set(std::size_t i, bool value);

  // v(x): 1-based index of the highest selected item, 0 for the empty set.
  std::size_t last_index() const;
  std::size_t count() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::string to_string() const;

  // Copies another solution's bits without reallocating when sizes match.
  void assign(const Solution& other);

  friend bool operator==(const Solution&, const Solution&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct Evaluation {
  std::int64_t profit = 0;
  std::int64_t weight = 0;
  std::size_t last_index = 0;

  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

// A solution together with its cached evaluation.
struct Candidate {
  Solution bits;
  Evaluation eval;
};

Evaluation evaluate(const Solution& solution, const Instance& instance);

inline bool is_feasible(const Evaluation& e, const Instance& instance) {
  return e.weight <= instance.capacity();
}

// Appends to `flips` the positions selected by flipping each of n bits
// independently with probability 1/n, in increasing order. `flips` is
// cleared first.
void sample_flip_positions(std::size_t n, RandomStream& rng,
                           std::vector<std::size_t>& flips);

// Standard bit mutation: each bit of the parent flipped independently with
// probability 1/n.
Solution standard_bit_mutation(const Solution& parent, RandomStream& rng);

// Mutates `child` (already a copy of the parent) in place and updates its
// evaluation incrementally from the parent's. Used by the run loops.
void mutate_in_place(Solution& child, Evaluation& eval,
                     const Instance& instance, RandomStream& rng,
                     std::vector<std::size_t>& scratch);

}  // namespace qdknap

#endif  // QDKNAP_KNAPSACK_H_
