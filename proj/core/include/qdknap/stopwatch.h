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

#ifndef QDKNAP_STOPWATCH_H_
#define QDKNAP_STOPWATCH_H_

#include <chrono>
#include <string_view>

namespace qdknap {

// Measures per-thread CPU time where the platform exposes it, otherwise
// monotonic wall-clock time. clock_name() reports which one is in use.
class Stopwatch {
 public:
  Stopwatch();

  double elapsed_seconds() const;
  static std::string_view clock_name();

 private:
  double start_;
};

}  // namespace qdknap

#endif  // QDKNAP_STOPWATCH_H_
