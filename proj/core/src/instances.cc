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

#include "qdknap/instances.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "qdknap/errors.h"

namespace qdknap {
namespace {

void validate(const GeneratorSpec& spec) {
  if (spec.n < 1) throw ContractViolation("generator needs n >= 1");
  if (spec.range < 1) throw ContractViolation("generator needs R >= 1");
  if (spec.capacity && *spec.capacity < 1) {
    throw ContractViolation("explicit capacity must be positive");
  }
  if (!spec.capacity &&
      !(spec.capacity_fraction > 0.0 && spec.capacity_fraction < 1.0)) {
    throw ContractViolation("capacity fraction must lie in (0, 1)");
  }
  if (spec.cls == InstanceClass::kSimilarWeights && spec.capacity &&
      *spec.capacity < kSimilarWeightMin) {
    throw ContractViolation("similar-weights instances need C >= " +
                            std::to_string(kSimilarWeightMin));
  }
}

std::pair<std::int64_t, std::int64_t> weight_range(const GeneratorSpec& spec) {
  if (spec.cls == InstanceClass::kSimilarWeights) {
    return {kSimilarWeightMin, kSimilarWeightMax};
  }
  return {1, spec.range};
}

std::int64_t draw_profit(const GeneratorSpec& spec, std::int64_t weight,
                         RandomStream& rng) {
  switch (spec.cls) {
    case InstanceClass::kUncorrelated:
    case InstanceClass::kSimilarWeights:
      return rng.uniform_int(1, spec.range);
    case InstanceClass::kBoundedStronglyCorrelated: {
      const std::int64_t noise = spec.range / 500;
      return std::max<std::int64_t>(
          1, weight + spec.range / 10 + rng.uniform_int(-noise, noise));
    }
  }
  throw ContractViolation("unknown instance class");
}

std::string_view next_line(std::string_view& rest) {
  auto nl = rest.find('\n');
  std::string_view line = rest.substr(0, nl);
  rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

// Exactly two decimal integers separated by whitespace.
bool parse_pair(std::string_view line, std::int64_t& a, std::int64_t& b) {
  auto skip_ws = [&](const char* p, const char* end) {
    while (p != end && (*p == ' ' || *p == '\t')) ++p;
    return p;
  };
  const char* end = line.data() + line.size();
  const char* p = skip_ws(line.data(), end);
  auto r1 = std::from_chars(p, end, a);
  if (r1.ec != std::errc() || r1.ptr == end ||
      (*r1.ptr != ' ' && *r1.ptr != '\t')) {
    return false;
  }
  p = skip_ws(r1.ptr, end);
  auto r2 = std::from_chars(p, end, b);
  if (r2.ec != std::errc()) return false;
  return skip_ws(r2.ptr, end) == end;
}

}  // namespace

std::string_view to_string(InstanceClass cls) {
  switch (cls) {
    case InstanceClass::kUncorrelated:
      return "uncorrelated";
    case InstanceClass::kBoundedStronglyCorrelated:
      return "bounded-strongly-correlated";
    case InstanceClass::kSimilarWeights:
      return "similar-weights";
  }
  return "unknown";
}

InstanceClass parse_instance_class(std::string_view text) {
  for (auto cls : {InstanceClass::kUncorrelated,
                   InstanceClass::kBoundedStronglyCorrelated,
                   InstanceClass::kSimilarWeights}) {
    if (text == to_string(cls)) return cls;
  }
  throw ContractViolation("unknown instance class '" + std::string(text) + "'");
}

Instance generate(const GeneratorSpec& spec, RandomStream& rng) {
  validate(spec);
  const auto [w_lo, w_hi] = weight_range(spec);
  std::vector<std::int64_t> weights(spec.n);
  for (auto& w : weights) w = rng.uniform_int(w_lo, w_hi);

  std::int64_t capacity = 0;
  if (spec.capacity) {
    capacity = *spec.capacity;
  } else {
    std::int64_t total = 0;
    for (auto w : weights) total += w;
    capacity = static_cast<std::int64_t>(
        std::floor(spec.capacity_fraction * static_cast<double>(total)));
  }
  if (capacity < w_lo) {
    throw ContractViolation("capacity " + std::to_string(capacity) +
                            " is below the minimum item weight " +
                            std::to_string(w_lo));
  }
  for (auto& w : weights) {
    if (w > capacity) w = rng.uniform_int(w_lo, std::min(w_hi, capacity));
  }
  std::vector<std::int64_t> profits(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    profits[i] = draw_profit(spec, weights[i], rng);
  }
  return Instance(std::move(weights), std::move(profits), capacity);
}

Instance generate(const GeneratorSpec& spec) {
  RandomStream rng(spec.seed);
  return generate(spec, rng);
}

Instance parse_instance(std::string_view text) {
  std::string_view rest = text;
  std::size_t line_no = 1;
  std::int64_t n = 0;
  std::int64_t capacity = 0;
  if (!parse_pair(next_line(rest), n, capacity)) {
    throw ParseError(line_no, "expected header \"n C\"");
  }
  if (n < 1) throw ParseError(line_no, "item count must be positive");
  std::vector<std::int64_t> weights;
  std::vector<std::int64_t> profits;
  weights.reserve(static_cast<std::size_t>(n));
  profits.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    if (rest.empty()) {
      // Reported at the last line present, where the item list stops short.
      throw ParseError(line_no, "header declares " + std::to_string(n) +
                                    " items, found " + std::to_string(i));
    }
    ++line_no;
    std::int64_t w = 0;
    std::int64_t p = 0;
    if (!parse_pair(next_line(rest), w, p)) {
      throw ParseError(line_no, "expected item line \"w p\"");
    }
    if (w <= 0 || w > capacity) {
      throw ParseError(line_no, "item weight outside (0, C]");
    }
    if (p <= 0) throw ParseError(line_no, "item profit must be positive");
    weights.push_back(w);
    profits.push_back(p);
  }
  while (!rest.empty()) {
    ++line_no;
    if (!next_line(rest).empty()) {
      throw ParseError(line_no, "unexpected content after item lines");
    }
  }
  try {
    return Instance(std::move(weights), std::move(profits), capacity);
  } catch (const ContractViolation& e) {
    throw ParseError(1, e.what());
  }
}

std::string write_instance(const Instance& instance) {
  std::ostringstream out;
  out << instance.size() << ' ' << instance.capacity() << '\n';
  for (std::size_t i = 0; i < instance.size(); ++i) {
    out << instance.weight(i) << ' ' << instance.profit(i) << '\n';
  }
  return out.str();
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.detail());
  }
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_instance(instance);
}

}  // namespace qdknap
