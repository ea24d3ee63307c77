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

#include "qdknap/map_elites.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qdknap/errors.h"
#include "qdknap/run_io.h"
#include "test_util.h"

namespace qdknap {
namespace {

using testing::oracle_instance;

TerminationCriteria evals(std::uint64_t n) {
  TerminationCriteria t;
  t.max_evaluations = n;
  return t;
}

TEST(MapElitesTest, SingleItemFoundQuickly) {
  Instance inst({1}, {1}, 1);
  int found = 0;
  constexpr int kRuns = 10'000;
  for (int seed = 0; seed < kRuns; ++seed) {
    RandomStream rng(seed);
    TerminationCriteria t = evals(1000);
    t.target_profit = 1;
    RunResult r = run_weight_map_elites(inst, Rational(1), t, rng);
    if (r.best_profit == 1) ++found;
  }
  EXPECT_GE(static_cast<double>(found) / kRuns, 0.999);
}

TEST(MapElitesTest, ZeroTargetStopsImmediately) {
  for (Space space : {Space::kWeight, Space::kProfit}) {
    RandomStream rng(1);
    TerminationCriteria t;
    t.target_profit = 0;
    RunResult r = space == Space::kWeight
                      ? run_weight_map_elites(oracle_instance(), Rational(1), t, rng)
                      : run_profit_map_elites(oracle_instance(), Rational(1), t, rng);
    EXPECT_EQ(r.evaluations_used, 0u);
    EXPECT_TRUE(r.hit_target);
    ASSERT_EQ(r.trajectory.size(), 1u);
    EXPECT_EQ(r.trajectory[0], (TrajectorySample{0, 1, 0}));
  }
}

TEST(MapElitesTest, OracleInstanceReachesOptimum) {
  for (ArchiveMode mode : {ArchiveMode::kStrict, ArchiveMode::kLiteral}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      RandomStream a(seed), b(seed);
      RunResult w = run_weight_map_elites(oracle_instance(), Rational(1),
                                          evals(20'000), a, mode);
      RunResult p = run_profit_map_elites(oracle_instance(), Rational(1),
                                          evals(20'000), b, mode);
      EXPECT_EQ(w.best_profit, 8);
      EXPECT_EQ(p.best_profit, 8);
      EXPECT_EQ(w.best_solution.to_string(), "1010");
      EXPECT_EQ(p.best_solution.to_string(), "1010");
    }
  }
}

// Adding both unit-weight items overflows C = 1, so 11 is stored as an
// infeasible cell while B never exceeds the best single item.
TEST(MapElitesTest, ProfitSpaceKeepsInfeasibleButBestStaysFeasible) {
  Instance inst({1, 1}, {5, 7}, 1);
  RandomStream rng(4);
  RunResult r = run_profit_map_elites(inst, Rational(1), evals(5000), rng);
  EXPECT_EQ(r.best_profit, 7);
  ASSERT_TRUE(r.final_snapshot);
  bool infeasible_cell = false;
  for (const auto& rec : r.final_snapshot->cells) {
    if (rec.col == 13) {
      infeasible_cell = true;
      EXPECT_FALSE(rec.feasible);
    }
  }
  EXPECT_TRUE(infeasible_cell);
}

TEST(MapElitesTest, ProfitAxisSingleBucketWhenGammaExceedsTotal) {
  RandomStream rng(2);
  RunResult r = run_profit_map_elites(oracle_instance(), Rational(19), evals(2000), rng);
  ASSERT_TRUE(r.final_snapshot);
  EXPECT_EQ(r.final_snapshot->cols, 1u);
  EXPECT_LE(r.final_snapshot->cells.size(), 5u);
}

TEST(MapElitesTest, DeterministicGivenSeed) {
  std::mt19937_64 gen(3);
  Instance inst = testing::random_instance(gen, 30, 100, 800);
  for (Space space : {Space::kWeight, Space::kProfit}) {
    std::string first;
    std::optional<MapSnapshot> snap;
    for (int rep = 0; rep < 2; ++rep) {
      RandomStream rng(555);
      RunResult r = space == Space::kWeight
                        ? run_weight_map_elites(inst, Rational(5, 2), evals(30'000), rng)
                        : run_profit_map_elites(inst, Rational(7), evals(30'000), rng);
      std::string text = dump_json(run_result_to_json(r));
      if (rep == 0) {
        first = text;
        snap = r.final_snapshot;
      } else {
        EXPECT_EQ(text, first);
        EXPECT_EQ(r.final_snapshot, snap);
      }
    }
  }
}

TEST(MapElitesTest, ObserverSeesEveryEvaluationAndBestIsRealizable) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 10; ++trial) {
    Instance inst = testing::random_instance(gen, 12 + trial, 60, 300);
    for (Space space : {Space::kWeight, Space::kProfit}) {
      std::uint64_t calls = 0;
      std::int64_t best_seen = 0;
      ArchiveObserver obs = [&](const ArchiveGrid&, const Candidate& c,
                                const InsertOutcome& out) {
        ++calls;
        ASSERT_EQ(c.eval, evaluate(c.bits, inst));
        if (out.appended) ASSERT_TRUE(out.accepted);
        if (is_feasible(c.eval, inst)) best_seen = std::max(best_seen, c.eval.profit);
        if (space == Space::kWeight && !is_feasible(c.eval, inst)) {
          ASSERT_FALSE(out.accepted);
        }
      };
      RandomStream rng(trial);
      RunResult r =
          space == Space::kWeight
              ? run_weight_map_elites(inst, Rational(1), evals(7777), rng,
                                      ArchiveMode::kStrict, obs)
              : run_profit_map_elites(inst, Rational(1), evals(7777), rng,
                                      ArchiveMode::kStrict, obs);
      EXPECT_EQ(calls, r.evaluations_used);
      EXPECT_EQ(r.evaluations_used, 7777u);
      EXPECT_EQ(r.best_profit, best_seen);
      Evaluation be = evaluate(r.best_solution, inst);
      EXPECT_EQ(be.profit, r.best_profit);
      EXPECT_TRUE(is_feasible(be, inst));
      for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
        EXPECT_LT(r.trajectory[i - 1].evaluations, r.trajectory[i].evaluations);
        EXPECT_LE(r.trajectory[i - 1].best_profit, r.trajectory[i].best_profit);
        EXPECT_LE(r.trajectory[i - 1].population_size,
                  r.trajectory[i].population_size);
      }
    }
  }
}

TEST(MapElitesTest, TrajectoryCadence) {
  RandomStream rng(6);
  RunResult r = run_weight_map_elites(oracle_instance(), Rational(1), evals(12'345), rng);
  ASSERT_EQ(r.trajectory.front(), (TrajectorySample{0, 1, 0}));
  EXPECT_EQ(trajectory_interval(evals(12'345)), 12u);
  for (std::size_t i = 1; i + 1 < r.trajectory.size(); ++i) {
    EXPECT_EQ(r.trajectory[i].evaluations, 12 * i);
  }
  EXPECT_EQ(r.trajectory.back().evaluations, 12'345u);
  EXPECT_EQ(trajectory_interval(evals(10)), 1u);
  TerminationCriteria unbounded;
  unbounded.target_profit = 5;
  EXPECT_EQ(trajectory_interval(unbounded), 1000u);
}

TEST(MapElitesTest, WallClockStops) {
  std::mt19937_64 gen(1);
  Instance inst = testing::random_instance(gen, 40, 1000, 20000);
  TerminationCriteria t;
  t.max_seconds = 0.05;
  RandomStream rng(1);
  RunResult r = run_weight_map_elites(inst, Rational(1), t, rng);
  EXPECT_GT(r.evaluations_used, 0u);
  EXPECT_EQ(r.evaluations_used % 1024, 0u);
  EXPECT_FALSE(r.hit_target);
}

TEST(TerminationTest, Validation) {
  EXPECT_THROW(TerminationCriteria{}.validate(), ContractViolation);
  TerminationCriteria t;
  t.max_seconds = 0.0;
  EXPECT_THROW(t.validate(), ContractViolation);
  EXPECT_NO_THROW(evals(1).validate());
}

// Known bound values, three significant digits.
TEST(BoundsTest, WeightBoundMatchesPublishedTable) {
  EXPECT_NEAR(expected_bound_weight(50, 4029) / 1.37e9, 1.0, 5e-3);
  EXPECT_NEAR(expected_bound_weight(50, 2226) / 7.57e8, 1.0, 5e-3);
  EXPECT_NEAR(expected_bound_weight(50, 4567) / 1.55e9, 1.0, 5e-3);
  EXPECT_NEAR(expected_bound_weight(75, 5780) / 6.63e9, 1.0, 5e-3);
  EXPECT_DOUBLE_EQ(expected_bound_weight(1, 0), std::numbers::e);
}

TEST(BoundsTest, ProfitBoundMatchesPublishedTable) {
  EXPECT_NEAR(expected_bound_profit(50, 53928, Rational(1)) / 1.83e10, 1.0, 5e-3);
  EXPECT_NEAR(expected_bound_profit(50, 23825, Rational(1)) / 8.10e9, 1.0, 5e-3);
  EXPECT_NEAR(expected_bound_profit(50, 23825, Rational(5)) / 1.62e9, 1.0, 5e-3);
  EXPECT_NEAR(expected_bound_profit(50, 53928, Rational(25)) / 7.33e8, 1.0, 5e-3);
  // e * 10786 * 50^3 = 3.6649e9.
  EXPECT_NEAR(expected_bound_profit(50, 53928, Rational(5)) / 3.66e9, 1.0, 5e-3);
}

TEST(BoundsTest, ProfitBoundSingleBucket) {
  EXPECT_DOUBLE_EQ(expected_bound_profit(7, 18, Rational(19)), std::numbers::e * 343);
  EXPECT_DOUBLE_EQ(expected_bound_profit(7, 18, Rational(37, 2)), std::numbers::e * 343);
}

TEST(FprasGammaTest, ExactRational) {
  std::vector<std::int64_t> w(50, 1), p(50, 1);
  p[7] = 100;
  EXPECT_EQ(fpras_gamma(Rational(1, 2), Instance(w, p, 10)), Rational(1));
  p[7] = 1147;
  Rational g = fpras_gamma(Rational(1, 10), Instance(w, p, 10));
  EXPECT_EQ(g, Rational(1147, 500));
  EXPECT_EQ(g.den(), 500);
  EXPECT_THROW(fpras_gamma(Rational(0), Instance(w, p, 10)), ContractViolation);
  EXPECT_THROW(fpras_gamma(Rational(1), Instance(w, p, 10)), ContractViolation);
  EXPECT_THROW(fpras_gamma(Rational(3, 2), Instance(w, p, 10)), ContractViolation);
}

}  // namespace
}  // namespace qdknap
