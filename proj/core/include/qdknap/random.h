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

#ifndef QDKNAP_RANDOM_H_
#define QDKNAP_RANDOM_H_

#include <cstdint>
#include <random>

namespace qdknap {

// Seeded single-owner random stream.
//
// Built on std::mt19937_64, whose output sequence is fixed by the
// standard. Integer and real draws are derived here rather than through
// std::*_distribution so that sequences do not depend on the standard
// library implementation.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, bound). bound == 1 returns 0 without consuming
  // a draw. bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Uniform double in (0, 1], 53-bit resolution.
  double uniform_open01();

 private:
  std::mt19937_64 engine_;
};

}  // namespace qdknap

#endif  // QDKNAP_RANDOM_H_
