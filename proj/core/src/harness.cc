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

#include "qdknap/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "qdknap/errors.h"
#include "qdknap/run_io.h"
#include "qdknap/stopwatch.h"

namespace qdknap {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct NamedInstance {
  std::string name;
  std::string source;  // path as given, or generator description
  Instance instance;
};

std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

std::string gamma_tag(const Rational& g) {
  return "g" + std::to_string(g.num()) + "-" + std::to_string(g.den());
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json termination_to_json(const TerminationCriteria& t) {
  json j;
  j["max_evaluations"] = t.max_evaluations ? json(*t.max_evaluations) : json();
  j["target_profit"] = t.target_profit ? json(*t.target_profit) : json();
  j["max_seconds"] = t.max_seconds ? json(*t.max_seconds) : json();
  return j;
}

TerminationCriteria termination_from_json(const json& j) {
  TerminationCriteria t;
  if (!j.at("max_evaluations").is_null()) {
    t.max_evaluations = j["max_evaluations"].get<std::uint64_t>();
  }
  if (!j.at("target_profit").is_null()) {
    t.target_profit = j["target_profit"].get<std::int64_t>();
  }
  if (!j.at("max_seconds").is_null()) {
    t.max_seconds = j["max_seconds"].get<double>();
  }
  return t;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  auto paths = json::array();
  for (const auto& p : c.instance_paths) paths.push_back(p.string());
  j["instance_paths"] = std::move(paths);
  auto gens = json::array();
  for (const auto& g : c.generated) {
    gens.push_back({{"class", to_string(g.cls)},
                    {"n", g.n},
                    {"range", g.range},
                    {"capacity", g.capacity ? json(*g.capacity) : json()},
                    {"capacity_fraction", g.capacity_fraction},
                    {"seed", g.seed}});
  }
  j["generated"] = std::move(gens);
  auto algos = json::array();
  for (auto a : c.algorithms) algos.push_back(to_string(a));
  j["algorithms"] = std::move(algos);
  auto gammas = json::array();
  for (const auto& g : c.gammas) gammas.push_back(g.to_string());
  j["gammas"] = std::move(gammas);
  j["repetitions"] = c.repetitions;
  j["target_opt"] = c.target_opt;
  j["max_evaluations"] = c.max_evaluations ? json(*c.max_evaluations) : json();
  j["use_eval_cap"] = c.use_eval_cap;
  j["max_seconds"] = c.max_seconds ? json(*c.max_seconds) : json();
  j["base_seed"] = c.base_seed;
  j["mode"] = to_string(c.mode);
  j["mu"] = c.baseline.mu;
  j["penalty"] = to_string(c.baseline.penalty);
  j["write_maps"] = c.write_maps;
  return j;
}

std::vector<NamedInstance> load_instances(const ExperimentConfig& config) {
  std::vector<NamedInstance> out;
  std::set<std::string> used;
  auto unique_name = [&](std::string base) {
    std::string name = base;
    for (int k = 2; used.count(name) != 0; ++k) {
      name = base + "-" + std::to_string(k);
    }
    used.insert(name);
    return name;
  };
  for (const auto& path : config.instance_paths) {
    out.push_back({unique_name(path.stem().string()), path.string(),
                   load_instance(path)});
  }
  for (const auto& spec : config.generated) {
    std::string base = std::string(to_string(spec.cls)) + "-n" +
                       std::to_string(spec.n) + "-s" + std::to_string(spec.seed);
    out.push_back({unique_name(base), "generated", generate(spec)});
  }
  return out;
}

std::string run_stem(const RunStats& s, std::size_t rep) {
  return s.cell_id + "__r" + std::to_string(rep);
}

json run_record_to_json(const RunStats& s, const RunRecord& r) {
  json j;
  j["cell"] = s.cell_id;
  j["instance"] = s.instance_name;
  j["algorithm"] = to_string(s.algorithm);
  j["gamma"] = s.gamma ? json(s.gamma->to_string()) : json();
  j["mode"] = to_string(s.mode);
  j["rep"] = r.rep;
  j["seed"] = r.seed;
  j["opt"] = s.opt ? json(*s.opt) : json();
  j["termination"] = termination_to_json(s.termination);
  j["result"] = run_result_to_json(r.result);
  j["map"] = r.map_file ? json(r.map_file->generic_string()) : json();
  return j;
}

RunRecord run_record_from_json(const json& j, const fs::path& run_file) {
  RunRecord r;
  r.rep = j.at("rep").get<std::size_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.result = run_result_from_json(j.at("result"));
  r.run_file = run_file;
  if (!j.at("map").is_null()) r.map_file = fs::path(j["map"].get<std::string>());
  return r;
}

// The archive map lives in its own CSV next to the run JSON.
void attach_snapshot(RunRecord& record, const fs::path& dir) {
  if (!record.map_file) return;
  std::istringstream in(read_file(dir / *record.map_file));
  record.result.final_snapshot = read_snapshot_csv(in);
}

double read_timing(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) return 0.0;
  return json::parse(read_file(path)).at("seconds").get<double>();
}

void execute_run(const ExperimentConfig& config, const Instance& instance,
                 RunStats& stats, std::size_t rep) {
  const fs::path& out = config.output_dir;
  const std::string stem = run_stem(stats, rep);
  RunRecord& record = stats.runs[rep];
  record.rep = rep;
  record.seed = config.base_seed + rep;
  record.run_file = fs::path("runs") / (stem + ".json");
  const fs::path timing_file = out / "runs" / (stem + ".timing.json");

  if (!config.force && fs::exists(out / record.run_file)) {
    record = run_record_from_json(json::parse(read_file(out / record.run_file)),
                                  record.run_file);
    attach_snapshot(record, out);
    record.result.seconds = read_timing(timing_file);
    return;
  }

  RandomStream rng(record.seed);
  record.result = run_algorithm(stats.algorithm, instance,
                                stats.gamma.value_or(Rational(1)), stats.mode,
                                config.baseline, stats.termination, rng);
  if (config.write_maps && record.result.final_snapshot) {
    record.map_file = fs::path("maps") / (stem + ".csv");
    export_map_csv(record, out / *record.map_file);
  }
  write_file_atomic(out / record.run_file,
                    dump_json(run_record_to_json(stats, record)));
  if (config.record_timing) {
    json t{{"seconds", record.result.seconds},
           {"clock", std::string(Stopwatch::clock_name())}};
    write_file_atomic(timing_file, dump_json(t));
  }
}

void write_outputs(const ExperimentConfig& config,
                   const std::vector<RunStats>& cells,
                   const std::vector<NamedInstance>& instances) {
  const fs::path& out = config.output_dir;
  std::vector<std::string> files;
  for (const auto& s : cells) {
    if (s.skipped) continue;
    fs::path traj = fs::path("trajectories") / (s.cell_id + ".csv");
    export_trajectory_csv(s, out / traj);
    files.push_back(traj.generic_string());
    for (const auto& r : s.runs) {
      files.push_back(r.run_file.generic_string());
      if (r.map_file) files.push_back(r.map_file->generic_string());
    }
  }
  export_stats_csv(cells, out / "stats.csv");
  files.push_back("stats.csv");

  if (config.record_timing) {
    std::ostringstream t;
    t << "cell,runs,mean_wall_seconds,clock\n";
    for (const auto& s : cells) {
      if (s.skipped) continue;
      t << s.cell_id << ',' << s.runs.size() << ','
        << format_fixed(s.mean_wall_seconds, 6) << ','
        << Stopwatch::clock_name() << '\n';
    }
    write_file_atomic(out / "timing.csv", t.str());
  }

  json manifest;
  const json cfg = config_to_json(config);
  manifest["config"] = cfg;
  manifest["config_hash"] = hex64(fnv1a(cfg.dump()));
  auto insts = json::array();
  for (const auto& inst : instances) {
    insts.push_back({{"name", inst.name},
                     {"source", inst.source},
                     {"n", inst.instance.size()},
                     {"C", inst.instance.capacity()},
                     {"Q", inst.instance.total_profit()}});
  }
  manifest["instances"] = std::move(insts);
  auto cell_list = json::array();
  for (const auto& s : cells) {
    auto runs = json::array();
    for (const auto& r : s.runs) runs.push_back(r.run_file.generic_string());
    cell_list.push_back({{"cell", s.cell_id},
                         {"instance", s.instance_name},
                         {"algorithm", to_string(s.algorithm)},
                         {"gamma", s.gamma ? json(s.gamma->to_string()) : json()},
                         {"mode", to_string(s.mode)},
                         {"n", s.n},
                         {"C", s.capacity},
                         {"Q", s.total_profit},
                         {"opt", s.opt ? json(*s.opt) : json()},
                         {"termination", termination_to_json(s.termination)},
                         {"skipped", s.skipped},
                         {"skip_reason", s.skip_reason},
                         {"runs", std::move(runs)}});
  }
  manifest["cells"] = std::move(cell_list);
  std::sort(files.begin(), files.end());
  manifest["files"] = files;
  write_file_atomic(out / "manifest.json", dump_json(manifest));
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kWeightQd:
      return "weight-qd";
    case Algorithm::kProfitQd:
      return "profit-qd";
    case Algorithm::kOnePlusOne:
      return "one-plus-one";
    case Algorithm::kMuPlusOne:
      return "mu-plus-one";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view text) {
  for (auto a : {Algorithm::kWeightQd, Algorithm::kProfitQd,
                 Algorithm::kOnePlusOne, Algorithm::kMuPlusOne}) {
    if (text == to_string(a)) return a;
  }
  throw ContractViolation("unknown algorithm '" + std::string(text) + "'");
}

bool uses_gamma(Algorithm algorithm) {
  return algorithm == Algorithm::kWeightQd || algorithm == Algorithm::kProfitQd;
}

RunResult run_algorithm(Algorithm algorithm, const Instance& instance,
                        const Rational& gamma, ArchiveMode mode,
                        const BaselineConfig& baseline,
                        const TerminationCriteria& term, RandomStream& rng) {
  switch (algorithm) {
    case Algorithm::kWeightQd:
      return run_weight_map_elites(instance, gamma, term, rng, mode);
    case Algorithm::kProfitQd:
      return run_profit_map_elites(instance, gamma, term, rng, mode);
    case Algorithm::kOnePlusOne:
      return run_one_plus_one_ea(instance, term, rng);
    case Algorithm::kMuPlusOne:
      return run_mu_plus_one_ea(instance, baseline, term, rng);
  }
  throw ContractViolation("unknown algorithm");
}

void ExperimentConfig::validate() const {
  if (instance_paths.empty() && generated.empty()) {
    throw ContractViolation("experiment has no instances");
  }
  if (algorithms.empty()) throw ContractViolation("experiment has no algorithms");
  if (repetitions < 1) throw ContractViolation("repetitions must be >= 1");
  if (output_dir.empty()) throw ContractViolation("experiment needs an output directory");
  bool any_qd = std::any_of(algorithms.begin(), algorithms.end(), uses_gamma);
  if (any_qd && gammas.empty()) throw ContractViolation("experiment has no gamma values");
  for (const auto& g : gammas) {
    if (!g.is_positive()) throw ContractViolation("gamma must be > 0");
  }
  if (!target_opt && !use_eval_cap && !max_seconds) {
    throw ContractViolation("experiment has no termination criterion");
  }
  if (baseline.mu < 1) throw ContractViolation("mu must be >= 1");
}

void summarize(RunStats& stats) {
  if (stats.runs.empty()) return;
  double evals = 0.0;
  double seconds = 0.0;
  std::size_t hits = 0;
  for (const auto& r : stats.runs) {
    evals += static_cast<double>(r.result.evaluations_used);
    seconds += r.result.seconds;
    if (stats.opt && r.result.best_profit == *stats.opt) ++hits;
  }
  const auto count = static_cast<double>(stats.runs.size());
  stats.mean_evaluations = evals / count;
  stats.mean_wall_seconds = seconds / count;
  if (stats.opt) {
    stats.success_ratio = 100.0 * static_cast<double>(hits) / count;
  } else {
    stats.success_ratio.reset();
  }
}

std::vector<RunStats> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const fs::path& out = config.output_dir;
  fs::create_directories(out);

  std::vector<NamedInstance> instances = load_instances(config);
  for (const auto& inst : instances) {
    if (inst.source == "generated") {
      fs::path p = out / "instances" / (inst.name + ".txt");
      write_file_atomic(p, write_instance(inst.instance));
    }
  }

  std::vector<RunStats> cells;
  std::vector<std::size_t> cell_instance;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Instance& inst = instances[i].instance;
    std::optional<std::int64_t> opt;
    std::string opt_error;
    try {
      opt = dp_by_weight(inst, config.dp_table_bits).opt_profit;
    } catch (const ResourceLimitExceeded& e) {
      opt_error = e.what();
    }
    for (auto algo : config.algorithms) {
      std::vector<std::optional<Rational>> gammas;
      if (uses_gamma(algo)) {
        for (const auto& g : config.gammas) gammas.emplace_back(g);
      } else {
        gammas.emplace_back(std::nullopt);
      }
      for (const auto& g : gammas) {
        RunStats s;
        s.instance_name = instances[i].name;
        s.algorithm = algo;
        s.gamma = g;
        s.mode = config.mode;
        s.cell_id = s.instance_name + "__" + std::string(to_string(algo));
        if (g) s.cell_id += "__" + gamma_tag(*g);
        s.n = inst.size();
        s.capacity = inst.capacity();
        s.total_profit = inst.total_profit();
        s.opt = opt;
        if (config.use_eval_cap) {
          s.termination.max_evaluations =
              config.max_evaluations.value_or(static_cast<std::uint64_t>(
                  inst.capacity()) * inst.size() * inst.size());
        }
        if (config.target_opt && opt) s.termination.target_profit = *opt;
        s.termination.max_seconds = config.max_seconds;
        if (config.target_opt && !opt) {
          s.skipped = true;
          s.skip_reason = "OPT unavailable: " + opt_error;
        } else if (!s.termination.max_evaluations && !s.termination.target_profit &&
                   !s.termination.max_seconds) {
          s.skipped = true;
          s.skip_reason = "no termination criterion applies";
        } else {
          s.runs.resize(config.repetitions);
        }
        cells.push_back(std::move(s));
        cell_instance.push_back(i);
      }
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t r = 0; r < cells[c].runs.size(); ++r) jobs.emplace_back(c, r);
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    while (true) {
      std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      auto [c, r] = jobs[j];
      try {
        execute_run(config, instances[cell_instance[c]].instance, cells[c], r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(config.jobs, jobs.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& s : cells) summarize(s);
  write_outputs(config, cells, instances);
  return cells;
}

std::vector<RunStats> load_experiment(const fs::path& dir) {
  const json manifest = json::parse(read_file(dir / "manifest.json"));
  std::vector<RunStats> cells;
  for (const auto& c : manifest.at("cells")) {
    RunStats s;
    s.cell_id = c.at("cell").get<std::string>();
    s.instance_name = c.at("instance").get<std::string>();
    s.algorithm = parse_algorithm(c.at("algorithm").get<std::string>());
    if (!c.at("gamma").is_null()) s.gamma = Rational::parse(c["gamma"].get<std::string>());
    s.mode = parse_archive_mode(c.at("mode").get<std::string>());
    s.n = c.at("n").get<std::size_t>();
    s.capacity = c.at("C").get<std::int64_t>();
    s.total_profit = c.at("Q").get<std::int64_t>();
    if (!c.at("opt").is_null()) s.opt = c["opt"].get<std::int64_t>();
    s.termination = termination_from_json(c.at("termination"));
    s.skipped = c.at("skipped").get<bool>();
    s.skip_reason = c.at("skip_reason").get<std::string>();
    for (const auto& f : c.at("runs")) {
      fs::path rel(f.get<std::string>());
      RunRecord r = run_record_from_json(json::parse(read_file(dir / rel)), rel);
      attach_snapshot(r, dir);
      auto timing = dir / rel;
      timing.replace_extension(".timing.json");
      r.result.seconds = read_timing(timing);
      s.runs.push_back(std::move(r));
    }
    summarize(s);
    cells.push_back(std::move(s));
  }
  return cells;
}

void export_map_csv(const RunRecord& record, const fs::path& path) {
  if (!record.result.final_snapshot) {
    throw ContractViolation("run record for " + record.result.algorithm +
                            " has no archive snapshot");
  }
  std::ostringstream buf;
  write_snapshot_csv(*record.result.final_snapshot, buf);
  write_file_atomic(path, buf.str());
}

void export_trajectory_csv(const RunStats& stats, const fs::path& path) {
  if (stats.runs.empty()) {
    throw ContractViolation("cell " + stats.cell_id + " has no runs");
  }
  std::set<std::uint64_t> points;
  for (const auto& r : stats.runs) {
    if (r.result.trajectory.empty()) {
      throw ContractViolation("run " + r.run_file.string() + " has no trajectory");
    }
    for (const auto& s : r.result.trajectory) points.insert(s.evaluations);
  }
  std::ostringstream out;
  out << "evaluations";
  for (const auto& r : stats.runs) out << ",pop_seed" << r.seed;
  out << ",pop_mean,pop_sd";
  for (const auto& r : stats.runs) out << ",best_seed" << r.seed;
  out << ",best_mean,best_sd\n";

  const std::size_t k = stats.runs.size();
  std::vector<std::size_t> cursor(k, 0);
  std::vector<double> pop(k);
  std::vector<double> best(k);
  auto mean_sd = [k](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(k);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    double sd = k > 1 ? std::sqrt(ss / static_cast<double>(k - 1)) : 0.0;
    return std::pair{mean, sd};
  };
  for (std::uint64_t e : points) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto& traj = stats.runs[i].result.trajectory;
      while (cursor[i] + 1 < traj.size() && traj[cursor[i] + 1].evaluations <= e) {
        ++cursor[i];
      }
      pop[i] = static_cast<double>(traj[cursor[i]].population_size);
      best[i] = static_cast<double>(traj[cursor[i]].best_profit);
    }
    out << e;
    for (double v : pop) out << ',' << static_cast<std::int64_t>(v);
    auto [pm, ps] = mean_sd(pop);
    out << ',' << format_fixed(pm, 6) << ',' << format_fixed(ps, 6);
    for (double v : best) out << ',' << static_cast<std::int64_t>(v);
    auto [bm, bs] = mean_sd(best);
    out << ',' << format_fixed(bm, 6) << ',' << format_fixed(bs, 6) << '\n';
  }
  write_file_atomic(path, out.str());
}

void export_stats_csv(const std::vector<RunStats>& stats, const fs::path& path) {
  std::ostringstream out;
  out << "cell,instance,algorithm,gamma,mode,n,C,Q,opt,runs,success_ratio,"
         "mean_evaluations,max_evaluations,target_profit,skipped,skip_reason\n";
  for (const auto& s : stats) {
    std::string reason = s.skip_reason;
    std::replace(reason.begin(), reason.end(), ',', ';');
    out << s.cell_id << ',' << s.instance_name << ',' << to_string(s.algorithm)
        << ',' << (s.gamma ? s.gamma->to_string() : "") << ','
        << to_string(s.mode) << ',' << s.n << ',' << s.capacity << ','
        << s.total_profit << ',' << (s.opt ? std::to_string(*s.opt) : "") << ','
        << s.runs.size() << ','
        << (s.success_ratio ? format_fixed(*s.success_ratio, 4) : "") << ','
        << format_fixed(s.mean_evaluations, 3) << ','
        << (s.termination.max_evaluations
                ? std::to_string(*s.termination.max_evaluations)
                : "")
        << ','
        << (s.termination.target_profit
                ? std::to_string(*s.termination.target_profit)
                : "")
        << ',' << (s.skipped ? 1 : 0) << ',' << reason << '\n';
  }
  write_file_atomic(path, out.str());
}

}  // namespace qdknap
