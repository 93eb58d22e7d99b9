// Copyright 2026 The Authors.
//
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

#include "ksubmax/generator.h"

#include <cmath>

#include "gtest/gtest.h"
#include "ksubmax/instance_io.h"
#include "test_util.h"

namespace ksubmax {
namespace {

bool OnSixteenthGrid(double v) { return std::floor(v * 16.0) == v * 16.0; }

TEST(GenerateTest, TwoUnaryBlocksAreValid) {
  GeneratorConfig config;
  config.dims = Dims(2, 3);
  config.unary_blocks = 2;
  config.coverage_blocks = 0;
  config.table_blocks = 0;
  const OracleSpec spec = Generate(config, 7);
  EXPECT_TRUE(Validate(spec, ValidationMethod::kDirect).ok);
  EXPECT_TRUE(Validate(spec, ValidationMethod::kCharacterization).ok);
}

TEST(GenerateTest, MonotoneCoverageHasNonnegativeMarginals) {
  GeneratorConfig config = GeneratorConfig::Monotone(Dims(3, 3));
  config.unary_blocks = 0;
  config.table_blocks = 0;
  config.coverage_blocks = 3;
  const OracleSpec spec = Generate(config, 1);
  for (const Assignment& x : testing::AllPoints(spec.dims())) {
    for (int e = 0; e < x.size(); ++e) {
      if (x.is_assigned(e)) continue;
      for (Label i = 1; i <= 3; ++i) {
        EXPECT_GE(spec.Value(x.With(e, i)) - spec.Value(x), 0.0);
      }
    }
  }
}

TEST(GenerateTest, Deterministic) {
  const GeneratorConfig config = GeneratorConfig::Nonmonotone(Dims(4, 3));
  EXPECT_EQ(SerializeInstance(Generate(config, 99)), SerializeInstance(Generate(config, 99)));
  EXPECT_NE(SerializeInstance(Generate(config, 99)), SerializeInstance(Generate(config, 100)));
}

TEST(GenerateTest, PresetsProduceValidNonnegativeInstances) {
  for (int k = 1; k <= 5; ++k) {
    for (int n = 1; n <= 4; ++n) {
      for (bool monotone : {false, true}) {
        const Dims dims(n, k);
        const GeneratorConfig config =
            monotone ? GeneratorConfig::Monotone(dims) : GeneratorConfig::Nonmonotone(dims);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
          SCOPED_TRACE(::testing::Message() << "n=" << n << " k=" << k << " monotone="
                                            << monotone << " seed=" << seed);
          const OracleSpec spec = Generate(config, seed);
          const ValueRange range = ExactRange(spec);
          EXPECT_GE(range.min, 0.0);
          EXPECT_GT(range.max, 0.0);
          EXPECT_TRUE(Validate(spec, ValidationMethod::kDirect).ok);
          if (*PointCount(dims) <= 256) {
            EXPECT_TRUE(testing::RefIsKSubmodular(
                [&](const Assignment& x) { return spec.Value(x); }, dims));
          }
          if (monotone) {
            EXPECT_TRUE(IsMonotone(spec));
          }
          for (const Assignment& x : testing::AllPoints(dims)) {
            ASSERT_TRUE(OnSixteenthGrid(spec.Value(x))) << spec.Value(x);
          }
        }
      }
    }
  }
}

TEST(GenerateTest, NonmonotonePresetIsNonmonotone) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_FALSE(IsMonotone(Generate(GeneratorConfig::Nonmonotone(Dims(3, 3)), seed)));
  }
}

TEST(GenerateTest, ImpossibleRequirementExhaustsBudget) {
  GeneratorConfig config = GeneratorConfig::Monotone(Dims(3, 3));
  config.require_nonmonotone = true;
  config.rejection_budget = 5;
  EXPECT_THROW(Generate(config, 1), RejectionBudgetExhausted);
}

TEST(SampleTableValuesTest, TablesAreValid) {
  for (int arity = 1; arity <= 3; ++arity) {
    for (int k = 1; k <= 4; ++k) {
      for (bool monotone : {false, true}) {
        const std::vector<double> values = SampleTableValues(arity, k, monotone, 17, 500);
        const Dims dims(arity, k);
        EXPECT_TRUE(ValidateKSubmodularTable(dims, values, ValidationMethod::kDirect).ok);
        const OracleSpec table(dims, ExplicitTable{values});
        if (monotone) {
          EXPECT_TRUE(IsMonotone(table));
        }
      }
    }
  }
}

}  // namespace
}  // namespace ksubmax
