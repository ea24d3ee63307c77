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

#include "qdknap/baselines.h"

#include <vector>

#include "qdknap/errors.h"
#include "qdknap/stopwatch.h"

namespace qdknap {
namespace {

constexpr std::uint64_t kClockCheckPeriod = 1024;

RunResult run_elitist(const Instance& instance, std::size_t mu,
                      PenaltyRule rule, const TerminationCriteria& term,
                      RandomStream& rng, const PopulationObserver& observer,
                      std::string algorithm) {
  term.validate();
  if (mu < 1) throw ContractViolation("mu must be >= 1");
  Stopwatch clock;

  RunResult result;
  result.algorithm = std::move(algorithm);
  result.best_solution = Solution(instance.size());

  std::vector<Candidate> population(
      mu, Candidate{Solution(instance.size()), Evaluation{}});
  std::vector<std::int64_t> fitness(mu,
                                    penalized_fitness(Evaluation{}, instance, rule));

  const std::uint64_t interval = trajectory_interval(term);
  auto sample = [&] {
    result.trajectory.push_back(
        TrajectorySample{result.evaluations_used, mu, result.best_profit});
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

    const Candidate& parent = population[rng.uniform_below(mu)];
    child.bits.assign(parent.bits);
    child.eval = parent.eval;
    mutate_in_place(child.bits, child.eval, instance, rng, flips);
    ++result.evaluations_used;

    std::size_t worst = 0;
    for (std::size_t i = 1; i < mu; ++i) {
      if (fitness[i] < fitness[worst]) worst = i;
    }
    const std::int64_t f = penalized_fitness(child.eval, instance, rule);
    if (f >= fitness[worst]) {
      population[worst].bits.assign(child.bits);
      population[worst].eval = child.eval;
      fitness[worst] = f;
    }
    if (is_feasible(child.eval, instance) &&
        child.eval.profit > result.best_profit) {
      result.best_profit = child.eval.profit;
      result.best_solution.assign(child.bits);
    }
    if (observer) observer(population);
    if (result.evaluations_used >= next_sample) {
      sample();
      next_sample += interval;
    }
  }
  if (result.trajectory.back().evaluations != result.evaluations_used) sample();
  result.hit_target = target_met();
  result.seconds = clock.elapsed_seconds();
  return result;
}

}  // namespace

std::string_view to_string(PenaltyRule rule) {
  switch (rule) {
    case PenaltyRule::kLinearOverweight:
      return "linear-overweight";
  }
  return "unknown";
}

std::int64_t penalized_fitness(const Evaluation& e, const Instance& instance,
                               PenaltyRule rule) {
  switch (rule) {
    case PenaltyRule::kLinearOverweight:
      return is_feasible(e, instance) ? e.profit
                                      : instance.capacity() - e.weight;
  }
  throw ContractViolation("unknown penalty rule");
}

RunResult run_one_plus_one_ea(const Instance& instance,
                              const TerminationCriteria& term,
                              RandomStream& rng,
                              const PopulationObserver& observer) {
  return run_elitist(instance, 1, PenaltyRule::kLinearOverweight, term, rng,
                     observer, "one-plus-one");
}

RunResult run_mu_plus_one_ea(const Instance& instance,
                             const BaselineConfig& config,
                             const TerminationCriteria& term,
                             RandomStream& rng,
                             const PopulationObserver& observer) {
  return run_elitist(instance, config.mu, config.penalty, term, rng, observer,
                     "mu-plus-one");
}

}  // namespace qdknap
