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

#ifndef QDKNAP_MAP_ELITES_H_
#define QDKNAP_MAP_ELITES_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qdknap/archive.h"
#include "qdknap/knapsack.h"
#include "qdknap/random.h"
#include "qdknap/rational.h"

namespace qdknap {

// A run stops as soon as any configured criterion fires. At least one must
// be set.
struct TerminationCriteria {
  std::optional<std::uint64_t> max_evaluations;
  std::optional<std::int64_t> target_profit;  // stop once B >= target
  std::optional<double> max_seconds;

  void validate() const;
};

struct TrajectorySample {
  std::uint64_t evaluations = 0;
  std::size_t population_size = 0;
  std::int64_t best_profit = 0;

  friend bool operator==(const TrajectorySample&,
                         const TrajectorySample&) = default;
};

struct RunResult {
  std::string algorithm;
  std::int64_t best_profit = 0;  // B
  Solution best_solution;
  std::uint64_t evaluations_used = 0;
  bool hit_target = false;
  std::vector<TrajectorySample> trajectory;
  std::optional<MapSnapshot> final_snapshot;  // empty for baselines
  double seconds = 0.0;  // not part of the deterministic record
};

// Called after every offspring is processed, with the grid after insertion.
using ArchiveObserver = std::function<void(
    const ArchiveGrid& grid, const Candidate& offspring,
    const InsertOutcome& outcome)>;

// Weight-based MAP-Elites with DP-based filtering. Infeasible offspring are
// counted as evaluations and discarded.
RunResult run_weight_map_elites(const Instance& instance, Rational gamma,
                                const TerminationCriteria& term,
                                RandomStream& rng,
                                ArchiveMode mode = ArchiveMode::kStrict,
                                const ArchiveObserver& observer = {});

// Profit-based MAP-Elites with DP-based filtering. Every offspring is offered
// to the archive; only feasible ones update B.
RunResult run_profit_map_elites(const Instance& instance, Rational gamma,
                                const TerminationCriteria& term,
                                RandomStream& rng,
                                ArchiveMode mode = ArchiveMode::kStrict,
                                const ArchiveObserver& observer = {});

// e (C + 1) n^3: expected evaluations for weight-based MAP-Elites at
// gamma = 1 to reach an optimum.
double expected_bound_weight(std::int64_t n, std::int64_t capacity);

// e (floor(Q / gamma) + 1) n^3 for profit-based MAP-Elites.
double expected_bound_profit(std::int64_t n, std::int64_t total_profit,
                             const Rational& gamma);

// gamma = epsilon * max_i p_i / n, exact. epsilon must lie in (0, 1).
Rational fpras_gamma(const Rational& epsilon, const Instance& instance);

// Samples are taken every this many evaluations.
std::uint64_t trajectory_interval(const TerminationCriteria& term);

}  // namespace qdknap

#endif  // QDKNAP_MAP_ELITES_H_
