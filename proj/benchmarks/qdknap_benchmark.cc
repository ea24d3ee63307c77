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

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "qdknap/archive.h"
#include "qdknap/baselines.h"
#include "qdknap/instances.h"
#include "qdknap/knapsack.h"
#include "qdknap/map_elites.h"
#include "qdknap/oracles.h"
#include "qdknap/random.h"

namespace qdknap {
namespace {

Instance bench_instance(InstanceClass cls, std::size_t n) {
  GeneratorSpec spec;
  spec.cls = cls;
  spec.n = n;
  if (cls == InstanceClass::kSimilarWeights) spec.capacity = 4567;
  return generate(spec);
}

void BM_Mutation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Instance inst = bench_instance(InstanceClass::kUncorrelated, n);
  RandomStream rng(1);
  Solution x(n);
  Evaluation e;
  std::vector<std::size_t> scratch;
  for (auto _ : state) {
    mutate_in_place(x, e, inst, rng, scratch);
    benchmark::DoNotOptimize(e);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Mutation)->Arg(50)->Arg(200)->Arg(1000);

void BM_WeightQd(benchmark::State& state) {
  Instance inst = bench_instance(InstanceClass::kSimilarWeights, 50);
  TerminationCriteria term;
  term.max_evaluations = 1'000'000;
  for (auto _ : state) {
    RandomStream rng(7);
    benchmark::DoNotOptimize(run_weight_map_elites(inst, Rational(25), term, rng));
  }
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_WeightQd)->Unit(benchmark::kMillisecond);

void BM_ProfitQd(benchmark::State& state) {
  Instance inst = bench_instance(InstanceClass::kSimilarWeights, 50);
  TerminationCriteria term;
  term.max_evaluations = 1'000'000;
  for (auto _ : state) {
    RandomStream rng(7);
    benchmark::DoNotOptimize(run_profit_map_elites(inst, Rational(25), term, rng));
  }
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_ProfitQd)->Unit(benchmark::kMillisecond);

void BM_OnePlusOne(benchmark::State& state) {
  Instance inst = bench_instance(InstanceClass::kBoundedStronglyCorrelated, 50);
  TerminationCriteria term;
  term.max_evaluations = 1'000'000;
  for (auto _ : state) {
    RandomStream rng(7);
    benchmark::DoNotOptimize(run_one_plus_one_ea(inst, term, rng));
  }
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_OnePlusOne)->Unit(benchmark::kMillisecond);

void BM_ArchiveInsert(benchmark::State& state) {
  Instance inst = bench_instance(InstanceClass::kUncorrelated, 100);
  RandomStream rng(3);
  std::vector<Candidate> pool;
  for (int i = 0; i < 4096; ++i) {
    Solution s(100);
    for (std::size_t k = 0; k < 100; ++k) {
      if (rng.uniform_below(8) == 0) s.flip(k);
    }
    pool.push_back({s, evaluate(s, inst)});
  }
  ArchiveGrid grid(inst, Space::kProfit, Rational(1), ArchiveMode::kStrict);
  std::size_t i = 0;
  for (auto _ : state) {
    const Candidate& c = pool[i++ & 4095];
    benchmark::DoNotOptimize(grid.insert(c.bits, c.eval));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ArchiveInsert);

void BM_DpByWeight(benchmark::State& state) {
  Instance inst = bench_instance(InstanceClass::kUncorrelated,
                                 static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dp_by_weight(inst));
}
BENCHMARK(BM_DpByWeight)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_DpByProfit(benchmark::State& state) {
  Instance inst = bench_instance(InstanceClass::kUncorrelated,
                                 static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dp_by_profit(inst));
}
BENCHMARK(BM_DpByProfit)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace qdknap

BENCHMARK_MAIN();
