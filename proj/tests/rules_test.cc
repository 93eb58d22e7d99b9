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

#include "ksubmax/rules.h"

#include <cmath>
#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace ksubmax {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::Pointwise;

constexpr double kTol = 1e-12;
const double kAlpha = (std::sqrt(17.0) - 3.0) / 2.0;

MATCHER(NearPair, "") { return std::abs(std::get<0>(arg) - std::get<1>(arg)) <= kTol; }

void ExpectSimplex(const std::vector<double>& p) {
  double sum = 0.0;
  for (double v : p) {
    EXPECT_GE(v, 0.0);
    sum += v;
  }
  EXPECT_NEAR(sum, 1.0, kTol);
}

// Marginal vectors with y_i + y_j >= 0, on a 1/64 grid.
std::vector<double> RandomMarginals(std::mt19937_64& rng, int k) {
  std::uniform_int_distribution<int> mag(0, 128);
  std::vector<double> y(k);
  for (double& v : y) v = mag(rng) / 64.0;
  if (rng() % 2) {
    const auto it = std::min_element(y.begin(), y.end());
    double second = INFINITY;
    for (auto j = y.begin(); j != y.end(); ++j) {
      if (j != it) second = std::min(second, *j);
    }
    std::uniform_int_distribution<int> flip(0, static_cast<int>(second * 64));
    *it = -flip(rng) / 64.0;
  }
  return y;
}

TEST(RuleMonotoneTest, Examples) {
  EXPECT_THAT(RuleMonotone(std::vector<double>{1, 1, 1}).p,
              Pointwise(NearPair(), {1.0 / 3, 1.0 / 3, 1.0 / 3}));
  EXPECT_THAT(RuleMonotone(std::vector<double>{2, 1, 1}).p,
              Pointwise(NearPair(), {4.0 / 6, 1.0 / 6, 1.0 / 6}));
  const StepDistribution zero = RuleMonotone(std::vector<double>{0, 0, 0});
  EXPECT_THAT(zero.p, ElementsAre(1.0, 0.0, 0.0));
  EXPECT_EQ(zero.branch.kind, RuleBranch::Kind::kMonotoneFallback);
}

TEST(RuleMonotoneTest, ClampsNegativeEntries) {
  // With k = 3 the exponent is even, so clamping matters.
  EXPECT_THAT(RuleMonotone(std::vector<double>{-0.5, 1, 1}).p,
              Pointwise(NearPair(), {0.0, 0.5, 0.5}));
}

TEST(RuleK3Test, TightnessPointIsUniform) {
  const StepDistribution d = RuleK3(std::vector<double>{1, 1, kAlpha});
  EXPECT_EQ(d.branch.kind, RuleBranch::Kind::kK3NonPositiveDelta);
  EXPECT_THAT(d.p, Pointwise(NearPair(), {1.0 / 3, 1.0 / 3, 1.0 / 3}));
}

TEST(RuleK3Test, GammaZeroBranch) {
  const StepDistribution d = RuleK3(std::vector<double>{1, 1, 0});
  EXPECT_EQ(d.branch.kind, RuleBranch::Kind::kK3NonPositiveGamma);
  EXPECT_THAT(d.p, Pointwise(NearPair(), {0.5, 0.5, 0.0}));
}

TEST(RuleK3Test, PositiveDeltaBranch) {
  const StepDistribution d = RuleK3(std::vector<double>{1, 0.5, 0.25});
  EXPECT_EQ(d.branch.kind, RuleBranch::Kind::kK3PositiveDelta);
  EXPECT_THAT(d.p, Pointwise(NearPair(), {0.625, 0.375, 0.0}));
}

TEST(RuleK3Test, UnsortsToLabelOrder) {
  const StepDistribution d = RuleK3(std::vector<double>{0.25, 1, 0.5});
  EXPECT_THAT(d.p, Pointwise(NearPair(), {0.0, 0.625, 0.375}));
}

TEST(RuleK3Test, NegativeDeltaBranchClosedForm) {
  // y = (2, 1, 1): beta = gamma = 1/2, delta = -1/6, p = (1/2, 1/4, 1/4).
  const StepDistribution d = RuleK3(std::vector<double>{2, 1, 1});
  EXPECT_EQ(d.branch.kind, RuleBranch::Kind::kK3NonPositiveDelta);
  EXPECT_THAT(d.p, Pointwise(NearPair(), {0.5, 0.25, 0.25}));
}

TEST(RuleK3Test, NegativeThirdEntry) {
  // gamma < 0: p = (1/(1+beta), beta/(1+beta), 0) with beta = 1/2.
  const StepDistribution d = RuleK3(std::vector<double>{1, -0.25, 0.5});
  EXPECT_EQ(d.branch.kind, RuleBranch::Kind::kK3NonPositiveGamma);
  EXPECT_THAT(d.p, Pointwise(NearPair(), {2.0 / 3, 0.0, 1.0 / 3}));
}

TEST(RuleK3Test, DegenerateFallback) {
  const StepDistribution d = RuleK3(std::vector<double>{0, 0, 0});
  EXPECT_EQ(d.branch.kind, RuleBranch::Kind::kDegenerate);
  EXPECT_THAT(d.p, ElementsAre(1.0, 0.0, 0.0));
}

TEST(RuleK3Test, Errors) {
  EXPECT_THROW(RuleK3(std::vector<double>{1, 1}), RuleCompatibilityError);
  EXPECT_THROW(RuleK3(std::vector<double>{1, 1, 1, 1}), RuleCompatibilityError);
  EXPECT_THROW(RuleK3(std::vector<double>{1, -1, -1}), std::domain_error);
}

TEST(RuleK3Test, SortedOutputIsNonIncreasing) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20000; ++trial) {
    const std::vector<double> y = RandomMarginals(rng, 3);
    const StepDistribution d = RuleK3(y);
    ExpectSimplex(d.p);
    const std::vector<int> order = DescendingOrder(y);
    EXPECT_GE(d.p[order[0]], d.p[order[1]] - kTol);
    EXPECT_GE(d.p[order[1]], d.p[order[2]] - kTol);
  }
}

TEST(DescendingOrderTest, StableOnTies) {
  EXPECT_THAT(DescendingOrder(std::vector<double>{1, 2, 2, 0}), ElementsAre(1, 2, 0, 3));
}

TEST(FlowchartLevelTest, Examples) {
  const double eps = 1.0 / 16;
  EXPECT_EQ(FlowchartLevel(std::vector<double>{1, 1, 1, 1}, eps), 1);
  EXPECT_EQ(FlowchartLevel(std::vector<double>{1, 0.7, 0.6, 0.1}, eps), 2);
  EXPECT_EQ(FlowchartLevel(std::vector<double>{1, 1, 1, 0.1}, eps), 3);
  EXPECT_EQ(FlowchartLevel(std::vector<double>{1, 1, 1}, 1.0 / 9), 0);
}

TEST(FlowchartLevelTest, PreconditionViolations) {
  EXPECT_THROW(FlowchartLevel(std::vector<double>{1, 2, 1}, 0.1), std::invalid_argument);
  EXPECT_THROW(FlowchartLevel(std::vector<double>{1, 1, 0}, 0.1), std::invalid_argument);
  EXPECT_THROW(FlowchartLevel(std::vector<double>{1, 1}, 0.1), std::invalid_argument);
}

TEST(RuleGeneralTest, NegativeBranchUsesExponentKMinus2) {
  const StepDistribution d = RuleGeneral(std::vector<double>{2, 1, 1, -0.5}, 1.0 / 16);
  EXPECT_EQ(d.branch.kind, RuleBranch::Kind::kGeneralNegative);
  EXPECT_THAT(d.p, Pointwise(NearPair(), {2.0 / 3, 1.0 / 6, 1.0 / 6, 0.0}));
}

TEST(RuleGeneralTest, NegativeBranchKMinus1Variant) {
  const StepDistribution d = RuleGeneral(std::vector<double>{2, 1, 1, -0.5}, 1.0 / 16,
                                         NegativeExponent::kKMinus1);
  EXPECT_THAT(d.p, Pointwise(NearPair(), {0.8, 0.1, 0.1, 0.0}));
}

TEST(RuleGeneralTest, ZeroMinimumTakesNegativeBranch) {
  const StepDistribution d = RuleGeneral(std::vector<double>{0, 1, 1}, 1.0 / 9);
  EXPECT_EQ(d.branch.kind, RuleBranch::Kind::kGeneralNegative);
  EXPECT_EQ(d.p[0], 0.0);
}

TEST(RuleGeneralTest, LevelExamples) {
  const StepDistribution three = RuleGeneral(std::vector<double>{1, 1, 1, 0.1}, 1.0 / 16);
  EXPECT_EQ(three.branch, (RuleBranch{RuleBranch::Kind::kGeneralLevel, 3}));
  EXPECT_THAT(three.p, Pointwise(NearPair(), {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0}));
  const StepDistribution zero = RuleGeneral(std::vector<double>{1, 1, 1}, 1.0 / 9);
  EXPECT_EQ(zero.branch, (RuleBranch{RuleBranch::Kind::kGeneralLevel, 0}));
  EXPECT_THAT(zero.p, Pointwise(NearPair(), {1.0 / 3, 1.0 / 3, 1.0 / 3}));
}

TEST(RuleGeneralTest, LevelZeroAndOneMatchRawFormulas) {
  // The listing writes both families in y1, y2 directly.
  const double eps = 1.0 / 25;
  const int k = 5;
  {
    const std::vector<double> y = {1.0, 0.5, 0.49, 0.48, 0.47};  // l = 0
    const StepDistribution d = RuleGeneral(y, eps);
    ASSERT_EQ(d.branch.level, 0);
    EXPECT_NEAR(d.p[0], 1 - 2 * y[1] / (y[0] + 2 * y[1]), kTol);
    EXPECT_NEAR(d.p[4], 2 * y[1] / ((k - 1) * (y[0] + 2 * y[1])), kTol);
  }
  {
    const std::vector<double> y = {1.0, 0.9, 0.89, 0.88, 0.87};  // l = 1
    const StepDistribution d = RuleGeneral(y, eps);
    ASSERT_EQ(d.branch.level, 1);
    EXPECT_NEAR(d.p[0], 1 - (k - 1) * y[1] / ((k - 1) * y[0] + y[1]), kTol);
    EXPECT_NEAR(d.p[2], y[1] / ((k - 1) * y[0] + y[1]), kTol);
  }
}

TEST(RuleGeneralTest, Errors) {
  EXPECT_THROW(RuleGeneral(std::vector<double>{1, 1}, 0.1), RuleCompatibilityError);
  EXPECT_THROW(RuleGeneral(std::vector<double>{1, 1, 1}, 1.0), RuleCompatibilityError);
  EXPECT_THROW(RuleGeneral(std::vector<double>{1, 1, 1}, 0.0), RuleCompatibilityError);
}

TEST(RuleGeneralTest, SimplexAndZeroMassOnMinimum) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20000; ++trial) {
    const int k = 3 + trial % 5;
    const std::vector<double> y = RandomMarginals(rng, k);
    for (auto exponent : {NegativeExponent::kKMinus2, NegativeExponent::kKMinus1}) {
      const StepDistribution d = RuleGeneral(y, 1.0 / (k * k), exponent);
      ExpectSimplex(d.p);
      if (d.branch.kind == RuleBranch::Kind::kGeneralNegative) {
        EXPECT_EQ(d.p[DescendingOrder(y).back()], 0.0);
      }
    }
  }
}

TEST(SampleLabelTest, FollowsCumulativeSums) {
  const std::vector<double> p = {0.25, 0.0, 0.75};
  EXPECT_EQ(SampleLabel(p, 0.0), 1);
  EXPECT_EQ(SampleLabel(p, 0.2499), 1);
  EXPECT_EQ(SampleLabel(p, 0.25), 3);
  EXPECT_EQ(SampleLabel(p, 0.99999999), 3);
  EXPECT_EQ(SampleLabel(std::vector<double>{0.5, 0.5, 0.0}, 0.9999999999999999), 2);
  EXPECT_THROW(SampleLabel(std::vector<double>{0.0, 0.0}, 0.5), std::invalid_argument);
}

TEST(ProbabilityRuleTest, NamesAndCompatibility) {
  EXPECT_EQ(ProbabilityRule::KThree().Name(), "k3");
  EXPECT_EQ(ProbabilityRule::GeneralK(0.1).Name(), "general");
  EXPECT_EQ(ProbabilityRule::Monotone().Name(), "monotone");
  EXPECT_EQ(ProbabilityRule::Uniform().Name(), "uniform");
  EXPECT_THROW(ProbabilityRule::KThree().CheckCompatible(4), RuleCompatibilityError);
  EXPECT_THROW(ProbabilityRule::GeneralK(0.1).CheckCompatible(2), RuleCompatibilityError);
  EXPECT_THROW(ProbabilityRule::GeneralK(1.0).CheckCompatible(3), RuleCompatibilityError);
  EXPECT_THROW(ProbabilityRule::GeneralK(-1.0), RuleCompatibilityError);
  EXPECT_NO_THROW(ProbabilityRule::Uniform().CheckCompatible(1));
}

TEST(ProbabilityRuleTest, RatioBounds) {
  EXPECT_NEAR(*ProbabilityRule::KThree().RatioBound(3), 0.5615528128088303, kTol);
  for (int k = 3; k <= 64; ++k) {
    const double kk = static_cast<double>(k) * k;
    EXPECT_NEAR(*ProbabilityRule::GeneralK(1.0 / kk).RatioBound(k), (kk + 1) / (2 * kk + 1),
                kTol);
    EXPECT_NEAR(*ProbabilityRule::Monotone().RatioBound(k), k / (2.0 * k - 1), kTol);
  }
  EXPECT_FALSE(ProbabilityRule::Uniform().RatioBound(3).has_value());
}

TEST(RuleUniformTest, IsUniform) {
  EXPECT_THAT(RuleUniform(4).p, ElementsAre(0.25, 0.25, 0.25, 0.25));
}

}  // namespace
}  // namespace ksubmax
