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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdknap/errors.h"
#include "qdknap/stopwatch.h"

namespace qdknap {
namespace {

constexpr std::uint64_t kClockCheckPeriod = 1024;
constexpr std::uint64_t kUnboundedTrajectoryInterval = 1000;

RunResult run_map_elites(const Instance& instance, Space space, Rational gamma,
                         const TerminationCriteria& term, RandomStream& rng,
                         ArchiveMode mode, const ArchiveObserver& observer) {
  term.validate();
  Stopwatch clock;
  ArchiveGrid grid(instance, space, gamma, mode);

  RunResult result;
  result.algorithm = space == Space::kWeight ? "weight-qd" : "profit-qd";
  result.best_solution = Solution(instance.size());

  const std::uint64_t interval = trajectory_interval(term);
  auto sample = [&] {
    result.trajectory.push_back(TrajectorySample{
        result.evaluations_used, grid.population_size(), result.best_profit});
  };
  auto target_met = [&] {
    return term.target_profit && result.best_profit >= *term.target_profit;
  };
  sample();

  Candidate child{Solution(instance.size()), Evaluation{}};
  std::vector<std::size_t> flips;
  std::uint64_t next_sample = interval;
  std::uint64_t iterations = 0;
  while (true) {
    if (target_met()) break;
    if (term.max_evaluations && result.evaluations_used >= *term.max_evaluations) {
      break;
    }
    if (term.max_seconds && iterations % kClockCheckPeriod == 0 &&
        iterations > 0 && clock.elapsed_seconds() >= *term.max_seconds) {
      break;
    }
    ++iterations;

    const Candidate& parent = grid.select_parent(rng);
    child.bits.assign(parent.bits);
    child.eval = parent.eval;
    mutate_in_place(child.bits, child.eval, instance, rng, flips);
    ++result.evaluations_used;

    InsertOutcome outcome;
    const bool feasible = is_feasible(child.eval, instance);
    if (space == Space::kProfit || feasible) {
      outcome = grid.insert(child.bits, child.eval);
    }
    if (feasible && child.eval.profit > result.best_profit) {
      result.best_profit = child.eval.profit;
      result.best_solution.assign(child.bits);
    }
    if (observer) observer(grid, child, outcome);
    if (result.evaluations_used >= next_sample) {
      sample();
      next_sample += interval;
    }
  }
  if (result.trajectory.back().evaluations != result.evaluations_used) sample();
  result.hit_target = target_met();
  result.final_snapshot = grid.snapshot();
  result.seconds = clock.elapsed_seconds();
  return result;
}

}  // namespace

void TerminationCriteria::validate() const {
  if (!max_evaluations && !target_profit && !max_seconds) {
    throw ContractViolation("no termination criterion set");
  }
  if (max_seconds && !(*max_seconds > 0.0)) {
    throw ContractViolation("max_seconds must be positive");
  }
}

std::uint64_t trajectory_interval(const TerminationCriteria& term) {
  if (!term.max_evaluations) return kUnboundedTrajectoryInterval;
  return std::max<std::uint64_t>(1, *term.max_evaluations / 1000);
}

RunResult run_weight_map_elites(const Instance& instance, Rational gamma,
                                const TerminationCriteria& term,
                                RandomStream& rng, ArchiveMode mode,
                                const ArchiveObserver& observer) {
  return run_map_elites(instance, Space::kWeight, gamma, term, rng, mode,
                        observer);
}

RunResult run_profit_map_elites(const Instance& instance, Rational gamma,
                                const TerminationCriteria& term,
                                RandomStream& rng, ArchiveMode mode,
                                const ArchiveObserver& observer) {
  return run_map_elites(instance, Space::kProfit, gamma, term, rng, mode,
                        observer);
}

double expected_bound_weight(std::int64_t n, std::int64_t capacity) {
  if (n < 1 || capacity < 0) {
    throw ContractViolation("expected_bound_weight needs n >= 1, C >= 0");
  }
  const double nd = static_cast<double>(n);
  return std::numbers::e * (static_cast<double>(capacity) + 1.0) * nd * nd * nd;
}

double expected_bound_profit(std::int64_t n, std::int64_t total_profit,
                             const Rational& gamma) {
  if (n < 1 || total_profit < 0) {
    throw ContractViolation("expected_bound_profit needs n >= 1, Q >= 0");
  }
  const double buckets =
      static_cast<double>(floor_div(total_profit, gamma)) + 1.0;
  const double nd = static_cast<double>(n);
  return std::numbers::e * buckets * nd * nd * nd;
}

Rational fpras_gamma(const Rational& epsilon, const Instance& instance) {
  if (epsilon <= Rational(0) || epsilon >= Rational(1)) {
    throw ContractViolation("epsilon must lie in (0, 1), got " +
                            epsilon.to_string());
  }
  return epsilon * Rational(instance.max_profit(),
                            static_cast<std::int64_t>(instance.size()));
}

}  // namespace qdknap
