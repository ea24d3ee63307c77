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

#ifndef QDKNAP_INSTANCES_H_
#define QDKNAP_INSTANCES_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qdknap/knapsack.h"
#include "qdknap/random.h"

namespace qdknap {

enum class InstanceClass {
  kUncorrelated,               // w, p ~ U{1..R}
  kBoundedStronglyCorrelated,  // w ~ U{1..R}, p = w + R/10 + U{-R/500..R/500}
  kSimilarWeights,             // w ~ U{1000..1010}, p ~ U{1..R}
};

std::string_view to_string(InstanceClass cls);
InstanceClass parse_instance_class(std::string_view text);

struct GeneratorSpec {
  InstanceClass cls = InstanceClass::kUncorrelated;
  std::size_t n = 50;
  std::int64_t range = 1000;  // R
  // Explicit capacity wins; otherwise C = floor(capacity_fraction * sum w).
  std::optional<std::int64_t> capacity;
  double capacity_fraction = 0.5;
  std::uint64_t seed = 1;
};

inline constexpr std::int64_t kSimilarWeightMin = 1000;
inline constexpr std::int64_t kSimilarWeightMax = 1010;

// Items heavier than the capacity are redrawn from the class's weight range
// truncated at C. Throws ContractViolation for impossible specs.
Instance generate(const GeneratorSpec& spec, RandomStream& rng);
// Same, drawing from RandomStream(spec.seed).
Instance generate(const GeneratorSpec& spec);

// Text format: line 1 "n C", then n lines "w_i p_i".
Instance parse_instance(std::string_view text);
std::string write_instance(const Instance& instance);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

}  // namespace qdknap

#endif  // QDKNAP_INSTANCES_H_
