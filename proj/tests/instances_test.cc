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

#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "qdknap/errors.h"
#include "qdknap/oracles.h"
#include "test_util.h"

namespace qdknap {
namespace {

int error_line(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(ParseInstanceTest, Minimal) {
  Instance inst = parse_instance("1 5\n3 4\n");
  EXPECT_EQ(inst.size(), 1u);
  EXPECT_EQ(inst.capacity(), 5);
  EXPECT_EQ(inst.weight(0), 3);
  EXPECT_EQ(inst.profit(0), 4);
}

TEST(ParseInstanceTest, ToleratesMissingTrailingNewlineAndCrlf) {
  EXPECT_EQ(parse_instance("2 6\r\n2 3\r\n4 5"), Instance({2, 4}, {3, 5}, 6));
}

TEST(ParseInstanceTest, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("2 5\n3 4\n"), 2);
  EXPECT_EQ(error_line("x 5\n"), 1);
  EXPECT_EQ(error_line(""), 1);
  EXPECT_EQ(error_line("2 5\n3 4\n1 b\n"), 3);
  EXPECT_EQ(error_line("2 5\n3 4\n6 1\n"), 3);
  EXPECT_EQ(error_line("1 5\n3 0\n"), 2);
  EXPECT_EQ(error_line("1 5\n3 4\n9 9\n"), 3);
  EXPECT_EQ(error_line("0 5\n"), 1);
}

TEST(WriteInstanceTest, Format) {
  EXPECT_EQ(write_instance(Instance({2, 4}, {3, 5}, 6)), "2 6\n2 3\n4 5\n");
}

TEST(WriteInstanceTest, RoundTrip) {
  std::mt19937_64 gen(100);
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = testing::random_instance(gen, 1 + gen() % 200, 1'000'000, 1LL << 40);
    EXPECT_EQ(parse_instance(write_instance(inst)), inst);
  }
}

TEST(WriteInstanceTest, FileRoundTrip) {
  auto path = std::filesystem::temp_directory_path() / "qdknap_instances_test.txt";
  Instance inst({2, 3, 4, 5}, {3, 4, 5, 6}, 6);
  save_instance(inst, path);
  EXPECT_EQ(load_instance(path), inst);
  std::filesystem::remove(path);
  EXPECT_THROW(load_instance(path), std::runtime_error);
}

TEST(GenerateTest, DeterministicPerSeed) {
  for (InstanceClass cls : {InstanceClass::kUncorrelated,
                            InstanceClass::kBoundedStronglyCorrelated,
                            InstanceClass::kSimilarWeights}) {
    GeneratorSpec spec;
    spec.cls = cls;
    spec.seed = 77;
    EXPECT_EQ(write_instance(generate(spec)), write_instance(generate(spec)));
    GeneratorSpec other = spec;
    other.seed = 78;
    EXPECT_NE(write_instance(generate(spec)), write_instance(generate(other)));
  }
}

TEST(GenerateTest, InvariantsAndRanges) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GeneratorSpec spec;
    spec.cls = static_cast<InstanceClass>(seed % 3);
    spec.n = 1 + seed % 60;
    spec.range = 1 + static_cast<std::int64_t>(seed * 37 % 2000);
    spec.seed = seed;
    if (seed % 4 == 0 || spec.cls == InstanceClass::kSimilarWeights) spec.capacity = 1000 + static_cast<std::int64_t>(seed * 13);
    spec.capacity_fraction = 0.05 + (seed % 9) / 10.0;
    Instance inst = generate(spec);
    ASSERT_EQ(inst.size(), spec.n);
    if (spec.capacity) EXPECT_EQ(inst.capacity(), *spec.capacity);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      ASSERT_GT(inst.weight(i), 0);
      ASSERT_LE(inst.weight(i), inst.capacity());
      ASSERT_GT(inst.profit(i), 0);
      if (spec.cls == InstanceClass::kSimilarWeights) {
        ASSERT_GE(inst.weight(i), kSimilarWeightMin);
        ASSERT_LE(inst.weight(i), kSimilarWeightMax);
      } else {
        ASSERT_LE(inst.weight(i), spec.range);
      }
      if (spec.cls != InstanceClass::kBoundedStronglyCorrelated) {
        ASSERT_LE(inst.profit(i), spec.range);
      }
    }
  }
}

TEST(GenerateTest, StronglyCorrelatedProfits) {
  GeneratorSpec spec;
  spec.cls = InstanceClass::kBoundedStronglyCorrelated;
  spec.n = 1000;
  spec.range = 1000;
  spec.seed = 5;
  Instance inst = generate(spec);
  const double n = 1000.0;
  double mw = 0, mp = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    mw += inst.weight(i);
    mp += inst.profit(i);
    EXPECT_LE(std::abs(inst.profit(i) - inst.weight(i) - 100), 2);
  }
  mw /= n;
  mp /= n;
  double sw = 0, sp = 0, cov = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const double dw = inst.weight(i) - mw, dp = inst.profit(i) - mp;
    sw += dw * dw;
    sp += dp * dp;
    cov += dw * dp;
  }
  EXPECT_GE(cov / std::sqrt(sw * sp), 0.95);
}

TEST(GenerateTest, SimilarWeightsAdmitAtMostFourItems) {
  GeneratorSpec spec;
  spec.cls = InstanceClass::kSimilarWeights;
  spec.n = 50;
  spec.capacity = 4567;
  spec.seed = 3;
  Instance inst = generate(spec);
  EXPECT_EQ(inst.capacity(), 4567);
  // Five lightest items already exceed C, so no feasible set has 5 items.
  std::vector<std::int64_t> w(inst.weights().begin(), inst.weights().end());
  std::sort(w.begin(), w.end());
  EXPECT_GT(std::accumulate(w.begin(), w.begin() + 5, std::int64_t{0}), 4567);
  EXPECT_LE(std::accumulate(w.begin(), w.begin() + 4, std::int64_t{0}), 4567);
  EXPECT_LE(brute_force_opt(Instance(std::vector<std::int64_t>(w.begin(), w.begin() + 20),
                                     std::vector<std::int64_t>(20, 1), 4567))
                .opt_profit,
            4);
}

TEST(GenerateTest, ImpossibleSpecs) {
  GeneratorSpec spec;
  spec.cls = InstanceClass::kSimilarWeights;
  spec.capacity = 999;
  EXPECT_THROW(generate(spec), ContractViolation);
  spec = GeneratorSpec{};
  spec.n = 0;
  EXPECT_THROW(generate(spec), ContractViolation);
  spec = GeneratorSpec{};
  spec.capacity_fraction = 1.5;
  EXPECT_THROW(generate(spec), ContractViolation);
  spec = GeneratorSpec{};
  spec.cls = InstanceClass::kSimilarWeights;
  spec.n = 1;
  spec.capacity_fraction = 0.5;
  EXPECT_THROW(generate(spec), ContractViolation);
}

TEST(InstanceClassTest, Names) {
  for (InstanceClass cls : {InstanceClass::kUncorrelated,
                            InstanceClass::kBoundedStronglyCorrelated,
                            InstanceClass::kSimilarWeights}) {
    EXPECT_EQ(parse_instance_class(to_string(cls)), cls);
  }
  EXPECT_THROW(parse_instance_class("weakly"), ContractViolation);
}

}  // namespace
}  // namespace qdknap
