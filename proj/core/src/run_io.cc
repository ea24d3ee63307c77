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

#include "qdknap/run_io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qdknap {

nlohmann::json run_result_to_json(const RunResult& r) {
  nlohmann::json j;
  j["algorithm"] = r.algorithm;
  j["best_profit"] = r.best_profit;
  j["best_solution"] = r.best_solution.to_string();
  j["evaluations_used"] = r.evaluations_used;
  j["hit_target"] = r.hit_target;
  auto traj = nlohmann::json::array();
  for (const auto& s : r.trajectory) {
    traj.push_back({s.evaluations, s.population_size, s.best_profit});
  }
  j["trajectory"] = std::move(traj);
  if (r.final_snapshot) {
    j["population_size"] = r.final_snapshot->population_size;
    j["referenced_slots"] = r.final_snapshot->referenced_slots;
  } else {
    j["population_size"] = nullptr;
    j["referenced_slots"] = nullptr;
  }
  return j;
}

RunResult run_result_from_json(const nlohmann::json& j) {
  RunResult r;
  r.algorithm = j.at("algorithm").get<std::string>();
  r.best_profit = j.at("best_profit").get<std::int64_t>();
  r.best_solution = Solution::from_string(j.at("best_solution").get<std::string>());
  r.evaluations_used = j.at("evaluations_used").get<std::uint64_t>();
  r.hit_target = j.at("hit_target").get<bool>();
  for (const auto& s : j.at("trajectory")) {
    r.trajectory.push_back(TrajectorySample{s.at(0).get<std::uint64_t>(),
                                            s.at(1).get<std::size_t>(),
                                            s.at(2).get<std::int64_t>()});
  }
  return r;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace qdknap
