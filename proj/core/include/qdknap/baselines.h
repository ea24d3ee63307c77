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

#ifndef QDKNAP_BASELINES_H_
#define QDKNAP_BASELINES_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>

#include "qdknap/knapsack.h"
#include "qdknap/map_elites.h"
#include "qdknap/random.h"

namespace qdknap {

// Constraint handling for the elitist baselines. Only one rule exists today;
// the id is carried through configs and run records.
enum class PenaltyRule { kLinearOverweight };

std::string_view to_string(PenaltyRule rule);

struct BaselineConfig {
  std::size_t mu = 50;
  PenaltyRule penalty = PenaltyRule::kLinearOverweight;
};

// p(x) if feasible, otherwise C - w(x) < 0, so any feasible solution beats
// any infeasible one.
std::int64_t penalized_fitness(
    const Evaluation& e, const Instance& instance,
    PenaltyRule rule = PenaltyRule::kLinearOverweight);

// Receives the population after each step.
using PopulationObserver = std::function<void(std::span<const Candidate>)>;

RunResult run_one_plus_one_ea(const Instance& instance,
                              const TerminationCriteria& term,
                              RandomStream& rng,
                              const PopulationObserver& observer = {});

// Offspring replaces a worst member (lowest index among ties) when its
// penalized fitness is at least that member's.
RunResult run_mu_plus_one_ea(const Instance& instance,
                             const BaselineConfig& config,
                             const TerminationCriteria& term,
                             RandomStream& rng,
                             const PopulationObserver& observer = {});

}  // namespace qdknap

#endif  // QDKNAP_BASELINES_H_
