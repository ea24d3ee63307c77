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

#ifndef QDKNAP_HARNESS_H_
#define QDKNAP_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdknap/archive.h"
#include "qdknap/baselines.h"
#include "qdknap/instances.h"
#include "qdknap/map_elites.h"
#include "qdknap/oracles.h"
#include "qdknap/rational.h"

namespace qdknap {

enum class Algorithm { kWeightQd, kProfitQd, kOnePlusOne, kMuPlusOne };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view text);
bool uses_gamma(Algorithm algorithm);

// Runs one algorithm; gamma and mode are ignored by the baselines.
RunResult run_algorithm(Algorithm algorithm, const Instance& instance,
                        const Rational& gamma, ArchiveMode mode,
                        const BaselineConfig& baseline,
                        const TerminationCriteria& term, RandomStream& rng);

struct ExperimentConfig {
  std::vector<std::filesystem::path> instance_paths;
  std::vector<GeneratorSpec> generated;
  std::vector<Algorithm> algorithms;
  std::vector<Rational> gammas{Rational(1)};
  std::size_t repetitions = 30;
  bool target_opt = true;
  // Unset means C * n^2 for each instance; use_eval_cap = false disables it.
  std::optional<std::uint64_t> max_evaluations;
  bool use_eval_cap = true;
  std::optional<double> max_seconds = 7200.0;
  std::uint64_t base_seed = 1;
  ArchiveMode mode = ArchiveMode::kStrict;
  BaselineConfig baseline;
  std::filesystem::path output_dir;
  bool force = false;
  bool write_maps = true;
  // Wall-time sidecars are machine dependent and therefore opt-in.
  bool record_timing = false;
  std::size_t jobs = 1;
  std::uint64_t dp_table_bits = kDefaultDpTableBits;

  void validate() const;
};

struct RunRecord {
  std::size_t rep = 0;
  std::uint64_t seed = 0;
  RunResult result;
  std::filesystem::path run_file;  // relative to the output directory
  std::optional<std::filesystem::path> map_file;
};

struct RunStats {
  std::string cell_id;
  std::string instance_name;
  Algorithm algorithm = Algorithm::kWeightQd;
  std::optional<Rational> gamma;
  ArchiveMode mode = ArchiveMode::kStrict;
  std::size_t n = 0;
  std::int64_t capacity = 0;
  std::int64_t total_profit = 0;
  std::optional<std::int64_t> opt;
  TerminationCriteria termination;

  // Percentage of runs with B == OPT; unset when OPT is unknown.
  std::optional<double> success_ratio;
  double mean_evaluations = 0.0;
  double mean_wall_seconds = 0.0;
  std::vector<RunRecord> runs;

  bool skipped = false;
  std::string skip_reason;
};

// Recomputes success_ratio and the means from `runs`.
void summarize(RunStats& stats);

// Executes every (instance, algorithm, gamma) cell for `repetitions` seeds
// base_seed + rep. Outputs under output_dir: runs/*.json, maps/*.csv,
// trajectories/*.csv, stats.csv, manifest.json, instances/ for generated
// instances, and timing.csv when record_timing is set. Existing run files
// are reused unless force is set.
std::vector<RunStats> run_experiment(const ExperimentConfig& config);

// Reads an experiment output directory back from its manifest and run files.
std::vector<RunStats> load_experiment(const std::filesystem::path& dir);

// Throws ContractViolation when the record carries no snapshot.
void export_map_csv(const RunRecord& record, const std::filesystem::path& path);

// One row per sample point: evaluations, then per-seed population columns
// with their mean and sample standard deviation, then the same for B.
// Runs that stopped early hold their final value.
void export_trajectory_csv(const RunStats& stats,
                           const std::filesystem::path& path);

void export_stats_csv(const std::vector<RunStats>& stats,
                      const std::filesystem::path& path);

}  // namespace qdknap

#endif  // QDKNAP_HARNESS_H_
