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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qdknap/errors.h"
#include "test_util.h"

namespace qdknap {
namespace {

using testing::mask_to_bits;
using testing::naive_evaluate;
using testing::oracle_instance;

TEST(InstanceTest, DerivedAccessors) {
  Instance inst = oracle_instance();
  EXPECT_EQ(inst.size(), 4u);
  EXPECT_EQ(inst.total_profit(), 18);
  EXPECT_EQ(inst.total_weight(), 14);
  EXPECT_EQ(inst.max_profit(), 6);
}

TEST(InstanceTest, RejectsInvariantViolations) {
  EXPECT_THROW(Instance({}, {}, 5), ContractViolation);
  EXPECT_THROW(Instance({1, 2}, {1}, 5), ContractViolation);
  EXPECT_THROW(Instance({6}, {1}, 5), ContractViolation);
  EXPECT_THROW(Instance({0}, {1}, 5), ContractViolation);
  EXPECT_THROW(Instance({1}, {0}, 5), ContractViolation);
  EXPECT_THROW(Instance({1}, {1}, 0), ContractViolation);
}

TEST(EvaluateTest, Examples) {
  Instance inst = oracle_instance();
  EXPECT_EQ(evaluate(Solution(4), inst), (Evaluation{0, 0, 0}));
  EXPECT_EQ(evaluate(Solution::from_string("1100"), inst), (Evaluation{7, 5, 2}));
  EXPECT_EQ(evaluate(Solution::from_string("1010"), inst), (Evaluation{8, 6, 3}));
}

TEST(EvaluateTest, LengthMismatchIsContractViolation) {
  EXPECT_THROW(evaluate(Solution(3), oracle_instance()), ContractViolation);
}

TEST(EvaluateTest, AgreesWithNaiveOnAllSubsets) {
  Instance inst = oracle_instance();
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    std::string bits = mask_to_bits(mask, 4);
    Evaluation e = evaluate(Solution::from_string(bits), inst);
    auto ref = naive_evaluate(bits, inst);
    EXPECT_EQ(e.profit, ref.profit) << bits;
    EXPECT_EQ(e.weight, ref.weight) << bits;
    EXPECT_EQ(e.last_index, ref.last_index) << bits;
  }
}

TEST(EvaluateTest, LinearOverDisjointSupports) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 150;
    Instance inst = testing::random_instance(gen, n, 1000, 100000);
    Solution x(n), y(n), both(n);
    for (std::size_t i = 0; i < n; ++i) {
      switch (gen() % 3) {
        case 0: x.flip(i); both.flip(i); break;
        case 1: y.flip(i); both.flip(i); break;
        default: break;
      }
    }
    Evaluation ex = evaluate(x, inst), ey = evaluate(y, inst), eb = evaluate(both, inst);
    EXPECT_EQ(eb.profit, ex.profit + ey.profit);
    EXPECT_EQ(eb.weight, ex.weight + ey.weight);
    EXPECT_EQ(eb.last_index, std::max(ex.last_index, ey.last_index));
  }
}

TEST(SolutionTest, LastIndexMatchesNaiveScan) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + gen() % 300;
    std::string bits(n, '0');
    const double density = (gen() % 100) / 1000.0;
    std::bernoulli_distribution on(density);
    for (auto& c : bits) c = on(gen) ? '1' : '0';
    std::size_t expected = 0;
    for (std::size_t i = n; i > 0; --i) {
      if (bits[i - 1] == '1') { expected = i; break; }
    }
    Solution s = Solution::from_string(bits);
    EXPECT_EQ(s.last_index(), expected);
    EXPECT_EQ(s.to_string(), bits);
  }
}

TEST(FeasibilityTest, BoundaryInclusive) {
  Instance inst = oracle_instance();
  EXPECT_TRUE(is_feasible({0, 0, 0}, inst));
  EXPECT_TRUE(is_feasible({0, 6, 0}, inst));
  EXPECT_FALSE(is_feasible({0, 7, 0}, inst));
}

TEST(MutationTest, SingleBitAlwaysFlips) {
  RandomStream rng(3);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(standard_bit_mutation(Solution(1), rng).to_string(), "1");
  }
}

TEST(MutationTest, ParentUnmodifiedAndDeterministic) {
  Solution parent = Solution::from_string("0110100000111");
  RandomStream a(99), b(99);
  for (int i = 0; i < 50; ++i) {
    Solution x = standard_bit_mutation(parent, a);
    Solution y = standard_bit_mutation(parent, b);
    EXPECT_EQ(x, y);
  }
  EXPECT_EQ(parent.to_string(), "0110100000111");
}

// Flip count is Binomial(n, 1/n): mean 1, variance 1 - 1/n.
TEST(MutationTest, HammingDistanceMeanIsOne) {
  constexpr int kDraws = 100'000;
  for (std::size_t n : {2u, 20u, 64u, 150u}) {
    RandomStream rng(1234 + n);
    Solution parent(n);
    double sum = 0.0;
    for (int i = 0; i < kDraws; ++i) {
      sum += static_cast<double>(standard_bit_mutation(parent, rng).count());
    }
    const double mean = sum / kDraws;
    const double sigma = std::sqrt((1.0 - 1.0 / n) / kDraws);
    EXPECT_NEAR(mean, 1.0, 0.02) << "n=" << n;
    EXPECT_NEAR(mean, 1.0, 3 * sigma) << "n=" << n;
  }
}

TEST(MutationTest, EachPositionFlipsWithRateOneOverN) {
  constexpr std::size_t n = 10;
  constexpr int kDraws = 200'000;
  RandomStream rng(5);
  std::vector<int> hits(n, 0);
  std::vector<std::size_t> flips;
  for (int i = 0; i < kDraws; ++i) {
    sample_flip_positions(n, rng, flips);
    for (auto f : flips) ++hits[f];
  }
  const double p = 1.0 / n;
  const double sigma = std::sqrt(p * (1 - p) / kDraws);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(static_cast<double>(hits[i]) / kDraws, p, 4 * sigma) << i;
  }
}

TEST(MutationTest, IncrementalEvaluationMatchesFull) {
  std::mt19937_64 gen(17);
  Instance inst = testing::random_instance(gen, 70, 500, 20000);
  RandomStream rng(8);
  Solution x(70);
  Evaluation e;
  std::vector<std::size_t> scratch;
  for (int i = 0; i < 5000; ++i) {
    mutate_in_place(x, e, inst, rng, scratch);
    ASSERT_EQ(e, evaluate(x, inst));
  }
}

}  // namespace
}  // namespace qdknap
