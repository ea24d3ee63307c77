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

// qdknap: instance generation, single runs, experiment grids, exact and
// approximate oracles, and re-export of experiment outputs.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "qdknap/archive.h"
#include "qdknap/errors.h"
#include "qdknap/harness.h"
#include "qdknap/instances.h"
#include "qdknap/oracles.h"
#include "qdknap/run_io.h"

namespace {

namespace fs = std::filesystem;
using namespace qdknap;

const std::vector<std::string> kAlgorithms = {"weight-qd", "profit-qd",
                                              "one-plus-one", "mu-plus-one"};
const std::vector<std::string> kClasses = {
    "uncorrelated", "bounded-strongly-correlated", "similar-weights"};
const std::vector<std::string> kModes = {"strict", "literal"};
const std::vector<std::string> kMethods = {"brute", "dp-weight", "dp-profit"};

// Usage errors raised after parsing, reported like CLI11's own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CLI::Validator rational_validator() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          if (!Rational::parse(s).is_positive()) return "must be positive";
        } catch (const std::exception&) {
          return "expected NUM/DEN, got '" + s + "'";
        }
        return {};
      },
      "NUM/DEN");
}

struct GenerateOptions {
  std::string cls = "uncorrelated";
  std::size_t n = 50;
  std::int64_t range = 1000;
  std::optional<std::int64_t> capacity;
  double capacity_fraction = 0.5;
  std::uint64_t seed = 1;
  std::size_t count = 1;
  bool with_opt = false;
  std::string out;
};

struct SolveOptions {
  std::string instance;
  std::string algo = "weight-qd";
  std::string gamma = "1/1";
  std::string mode = "strict";
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> max_evals;
  std::optional<double> max_seconds;
  bool target_opt = false;
  std::optional<std::int64_t> target;
  std::size_t mu = 50;
  std::string out;
};

struct ExperimentOptions {
  std::vector<std::string> instances;
  std::vector<std::string> algos;
  std::vector<std::string> gammas = {"1/1"};
  std::string mode = "strict";
  std::size_t reps = 30;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> max_evals;
  bool no_eval_cap = false;
  double max_seconds = 7200.0;
  bool target_opt = true;
  std::size_t mu = 50;
  std::size_t jobs = 1;
  bool force = false;
  bool timing = false;
  bool no_maps = false;
  std::string out;
  // One optional generated instance.
  std::optional<std::string> gen_class;
  std::size_t gen_n = 50;
  std::int64_t gen_range = 1000;
  std::optional<std::int64_t> gen_capacity;
  double gen_fraction = 0.5;
  std::uint64_t gen_seed = 1;
};

struct OracleOptions {
  std::string instance;
  std::string method = "dp-weight";
  bool fptas = false;
  std::string epsilon = "1/10";
};

struct ExportOptions {
  std::string dir;
  std::optional<std::string> cell;
  std::optional<std::string> out;
};

TerminationCriteria solve_termination(const SolveOptions& o,
                                      const Instance& instance) {
  TerminationCriteria t;
  t.max_evaluations = o.max_evals;
  t.max_seconds = o.max_seconds;
  if (o.target) t.target_profit = *o.target;
  if (o.target_opt) t.target_profit = dp_by_weight(instance).opt_profit;
  if (!t.max_evaluations && !t.max_seconds && !t.target_profit) {
    // Default budget: C n^2 evaluations.
    t.max_evaluations = static_cast<std::uint64_t>(instance.capacity()) *
                        instance.size() * instance.size();
  }
  return t;
}

int cmd_generate(const GenerateOptions& o) {
  GeneratorSpec spec;
  spec.cls = parse_instance_class(o.cls);
  spec.n = o.n;
  spec.range = o.range;
  spec.capacity = o.capacity;
  spec.capacity_fraction = o.capacity_fraction;
  fs::create_directories(o.out);
  nlohmann::json manifest = nlohmann::json::array();
  for (std::size_t k = 0; k < o.count; ++k) {
    spec.seed = o.seed + k;
    Instance inst = generate(spec);
    std::string file = o.cls + "-n" + std::to_string(o.n) + "-s" +
                       std::to_string(spec.seed) + ".txt";
    write_file_atomic(fs::path(o.out) / file, write_instance(inst));
    nlohmann::json entry{{"file", file},
                         {"class", o.cls},
                         {"n", inst.size()},
                         {"C", inst.capacity()},
                         {"Q", inst.total_profit()},
                         {"seed", spec.seed},
                         {"approximate_benchmark_rules", true}};
    entry["OPT"] = nullptr;
    if (o.with_opt) {
      try {
        entry["OPT"] = dp_by_weight(inst).opt_profit;
      } catch (const ResourceLimitExceeded&) {
      }
    }
    manifest.push_back(std::move(entry));
    std::cout << file << '\n';
  }
  write_file_atomic(fs::path(o.out) / "manifest.json", dump_json(manifest));
  return 0;
}

int cmd_solve(const SolveOptions& o) {
  Instance inst = load_instance(o.instance);
  Algorithm algo = parse_algorithm(o.algo);
  TerminationCriteria term = solve_termination(o, inst);
  BaselineConfig baseline;
  baseline.mu = o.mu;
  RandomStream rng(o.seed);
  RunResult r = run_algorithm(algo, inst, Rational::parse(o.gamma),
                              parse_archive_mode(o.mode), baseline, term, rng);
  std::cout << "B=" << r.best_profit << '\n'
            << "evaluations=" << r.evaluations_used << '\n'
            << "hit_target=" << (r.hit_target ? "true" : "false") << '\n'
            << "best_solution=" << r.best_solution.to_string() << '\n';
  if (r.final_snapshot) {
    std::cout << "population=" << r.final_snapshot->population_size << '\n';
  }
  if (!o.out.empty()) {
    fs::path out(o.out);
    nlohmann::json j = run_result_to_json(r);
    j["instance"] = o.instance;
    j["seed"] = o.seed;
    j["gamma"] = uses_gamma(algo) ? nlohmann::json(Rational::parse(o.gamma).to_string())
                                  : nlohmann::json();
    j["mode"] = o.mode;
    j["map"] = nullptr;
    if (r.final_snapshot) {
      std::ostringstream buf;
      write_snapshot_csv(*r.final_snapshot, buf);
      write_file_atomic(out / "map.csv", buf.str());
      j["map"] = "map.csv";
    }
    write_file_atomic(out / "run.json", dump_json(j));
  }
  return 0;
}

int cmd_experiment(const ExperimentOptions& o) {
  if (o.instances.empty() && !o.gen_class) {
    throw UsageError("experiment needs at least one --instance or --class");
  }
  if (o.algos.empty()) throw UsageError("experiment needs at least one --algo");
  ExperimentConfig c;
  for (const auto& p : o.instances) c.instance_paths.emplace_back(p);
  if (o.gen_class) {
    GeneratorSpec g;
    g.cls = parse_instance_class(*o.gen_class);
    g.n = o.gen_n;
    g.range = o.gen_range;
    g.capacity = o.gen_capacity;
    g.capacity_fraction = o.gen_fraction;
    g.seed = o.gen_seed;
    c.generated.push_back(g);
  }
  for (const auto& a : o.algos) c.algorithms.push_back(parse_algorithm(a));
  c.gammas.clear();
  for (const auto& g : o.gammas) c.gammas.push_back(Rational::parse(g));
  c.mode = parse_archive_mode(o.mode);
  c.repetitions = o.reps;
  c.base_seed = o.seed;
  c.max_evaluations = o.max_evals;
  c.use_eval_cap = !o.no_eval_cap;
  c.max_seconds = o.max_seconds > 0 ? std::optional<double>(o.max_seconds)
                                    : std::nullopt;
  c.target_opt = o.target_opt;
  c.baseline.mu = o.mu;
  c.jobs = o.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.jobs;
  c.force = o.force;
  c.record_timing = o.timing;
  c.write_maps = !o.no_maps;
  c.output_dir = o.out;
  auto cells = run_experiment(c);
  for (const auto& s : cells) {
    std::cout << s.cell_id << ": ";
    if (s.skipped) {
      std::cout << "skipped (" << s.skip_reason << ")\n";
      continue;
    }
    std::cout << "runs=" << s.runs.size();
    if (s.success_ratio) std::cout << " ratio=" << *s.success_ratio;
    std::cout << " mean_evaluations=" << s.mean_evaluations << '\n';
  }
  return 0;
}

int cmd_oracle(const OracleOptions& o) {
  Instance inst = load_instance(o.instance);
  OracleResult exact;
  if (o.method == "brute") {
    exact = brute_force_opt(inst);
  } else if (o.method == "dp-profit") {
    exact = dp_by_profit(inst);
  } else {
    exact = dp_by_weight(inst);
  }
  if (o.fptas) {
    Rational eps = Rational::parse(o.epsilon);
    OracleResult approx = fptas(inst, eps);
    std::cout << "profit=" << approx.opt_profit << '\n'
              << "epsilon=" << eps.to_string() << '\n'
              << "witness=" << approx.witness.to_string() << '\n';
  } else {
    std::cout << "witness=" << exact.witness.to_string() << '\n';
  }
  std::cout << "OPT=" << exact.opt_profit << '\n'
            << "method=" << o.method << '\n';
  return 0;
}

int cmd_export(const ExportOptions& o) {
  fs::path dir(o.dir);
  auto cells = load_experiment(dir);
  if (o.cell) {
    for (const auto& s : cells) {
      if (s.cell_id == *o.cell) {
        export_trajectory_csv(s, o.out ? fs::path(*o.out)
                                       : dir / "trajectories" / (s.cell_id + ".csv"));
        return 0;
      }
    }
    throw UsageError("no cell named '" + *o.cell + "'");
  }
  for (const auto& s : cells) {
    if (!s.skipped) {
      export_trajectory_csv(s, dir / "trajectories" / (s.cell_id + ".csv"));
    }
  }
  export_stats_csv(cells, o.out ? fs::path(*o.out) : dir / "stats.csv");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quality-diversity knapsack experiments"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Generate benchmark instances");
  g->add_option("--class", gen.cls, "Instance class")->check(CLI::IsMember(kClasses));
  g->add_option("--n", gen.n, "Item count")->check(CLI::PositiveNumber);
  g->add_option("--range", gen.range, "Coefficient range R")->check(CLI::PositiveNumber);
  auto* cap = g->add_option("--capacity", gen.capacity, "Explicit capacity C");
  g->add_option("--capacity-fraction", gen.capacity_fraction,
                "C as a fraction of the total weight")
      ->excludes(cap);
  g->add_option("--seed", gen.seed, "Seed of the first instance");
  g->add_option("--count", gen.count, "Number of instances (seeds seed..)")
      ->check(CLI::PositiveNumber);
  g->add_flag("--with-opt", gen.with_opt, "Record OPT from the weight DP");
  g->add_option("--out", gen.out, "Output directory")->required();

  SolveOptions solve;
  auto* s = app.add_subcommand("solve", "Run one algorithm once");
  s->add_option("--instance", solve.instance, "Instance file")->required()
      ->check(CLI::ExistingFile);
  s->add_option("--algo", solve.algo, "Algorithm")->check(CLI::IsMember(kAlgorithms));
  s->add_option("--gamma", solve.gamma, "Niche width NUM/DEN")->check(rational_validator());
  s->add_option("--mode", solve.mode, "Archive mode")->check(CLI::IsMember(kModes));
  s->add_option("--seed", solve.seed, "Random seed");
  s->add_option("--max-evals", solve.max_evals, "Evaluation budget");
  s->add_option("--max-seconds", solve.max_seconds, "CPU-time budget")
      ->check(CLI::PositiveNumber);
  s->add_flag("--target-opt", solve.target_opt, "Stop on reaching OPT");
  s->add_option("--target", solve.target, "Stop once B reaches this profit");
  s->add_option("--mu", solve.mu, "(mu+1)EA population size")->check(CLI::PositiveNumber);
  s->add_option("--out", solve.out, "Directory for run.json and map.csv");

  ExperimentOptions exp;
  auto* e = app.add_subcommand("experiment", "Run an experiment grid");
  e->add_option("--instance", exp.instances, "Instance files")->check(CLI::ExistingFile);
  e->add_option("--algo", exp.algos, "Algorithms")->check(CLI::IsMember(kAlgorithms));
  e->add_option("--gamma", exp.gammas, "Niche widths NUM/DEN")->check(rational_validator());
  e->add_option("--mode", exp.mode, "Archive mode")->check(CLI::IsMember(kModes));
  e->add_option("--reps", exp.reps, "Repetitions per cell")->check(CLI::PositiveNumber);
  e->add_option("--seed", exp.seed, "Base seed; run k uses seed + k");
  e->add_option("--max-evals", exp.max_evals, "Evaluation cap (default C n^2)");
  e->add_flag("--no-eval-cap", exp.no_eval_cap, "Disable the evaluation cap");
  e->add_option("--max-seconds", exp.max_seconds, "CPU-time cap, 0 disables");
  e->add_flag("--target-opt,!--no-target-opt", exp.target_opt,
              "Stop runs on reaching OPT (default on)");
  e->add_option("--mu", exp.mu, "(mu+1)EA population size")->check(CLI::PositiveNumber);
  e->add_option("--jobs", exp.jobs, "Worker threads, 0 = all cores");
  e->add_flag("--force", exp.force, "Rerun cells with existing outputs");
  e->add_flag("--timing", exp.timing, "Write wall-time sidecars and timing.csv");
  e->add_flag("--no-maps", exp.no_maps, "Skip per-run archive maps");
  e->add_option("--class", exp.gen_class, "Also generate one instance of this class")
      ->check(CLI::IsMember(kClasses));
  e->add_option("--n", exp.gen_n, "Generated instance size")->check(CLI::PositiveNumber);
  e->add_option("--range", exp.gen_range, "Generated coefficient range")
      ->check(CLI::PositiveNumber);
  e->add_option("--capacity", exp.gen_capacity, "Generated instance capacity");
  e->add_option("--capacity-fraction", exp.gen_fraction,
                "Generated capacity as a fraction of total weight");
  e->add_option("--instance-seed", exp.gen_seed, "Generator seed");
  e->add_option("--out", exp.out, "Output directory")->required();

  OracleOptions orc;
  auto* o = app.add_subcommand("oracle", "Exact optimum or FPTAS value");
  o->add_option("--instance", orc.instance, "Instance file")->required()
      ->check(CLI::ExistingFile);
  o->add_option("--method", orc.method, "Exact method")->check(CLI::IsMember(kMethods));
  o->add_flag("--fptas", orc.fptas, "Also run the FPTAS");
  o->add_option("--epsilon", orc.epsilon, "FPTAS epsilon NUM/DEN")
      ->check(rational_validator());

  ExportOptions ex;
  auto* x = app.add_subcommand("export", "Rebuild stats and trajectories from runs");
  x->add_option("--dir", ex.dir, "Experiment output directory")->required()
      ->check(CLI::ExistingDirectory);
  x->add_option("--cell", ex.cell, "Only this cell's trajectory");
  x->add_option("--out", ex.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*s) return cmd_solve(solve);
    if (*e) return cmd_experiment(exp);
    if (*o) return cmd_oracle(orc);
    if (*x) return cmd_export(ex);
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << "\n\n";
    for (auto* sub : app.get_subcommands()) std::cerr << sub->help();
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 1;
}
