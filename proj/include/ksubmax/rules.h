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

// Per-step probability rules for the randomized greedy framework.
//
// A rule maps the marginal vector y (label i at index i-1) to a distribution
// over labels 1..k. Rules that reason about the descending order of y sort
// it stably (ties keep the smaller label first), compute the distribution on
// the sorted order and map it back to label order.

#ifndef KSUBMAX_RULES_H_
#define KSUBMAX_RULES_H_

#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ksubmax/kernel.h"

namespace ksubmax {

class RuleCompatibilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// |δ| at or below this is treated as δ = 0 by the k=3 rule, so the
// third branch is taken on the boundary despite rounding in δ.
inline constexpr double kDeltaTieTolerance = 1e-12;

struct RuleBranch {
  enum class Kind {
    kMonotoneWeighted,
    kMonotoneFallback,   // all weights zero: p = (1, 0, ..., 0)
    kK3NonPositiveGamma,
    kK3PositiveDelta,
    kK3NonPositiveDelta,
    kDegenerate,         // top marginal <= 0: p = (1, 0, ..., 0) sorted
    kGeneralNegative,    // smallest marginal <= 0
    kGeneralLevel,       // all marginals positive; `level` from the flowchart
    kUniform,
  };
  Kind kind = Kind::kUniform;
  int level = -1;

  std::string Name() const;
  auto operator<=>(const RuleBranch&) const = default;
};

struct StepDistribution {
  std::vector<double> p;  // p[i-1] = Pr[label i]
  RuleBranch branch;
};

// Exponent used on the nonpositive-minimum branch of the general-k rule.
enum class NegativeExponent {
  kKMinus2,  // p_i ∝ y_i^{k-2}, the analysed variant (default)
  kKMinus1,  // p_i ∝ y_i^{k-1}, renormalised over the top k-1 labels
};

// Stable descending order of y: result[r] is the 0-based label index of
// the r-th largest marginal.
std::vector<int> DescendingOrder(std::span<const double> y);

StepDistribution RuleMonotone(std::span<const double> y);
StepDistribution RuleK3(std::span<const double> y);
StepDistribution RuleUniform(int k);

// Level l in {0..k} for a descending, strictly positive y (k >= 3).
int FlowchartLevel(std::span<const double> y_sorted, double eps);

StepDistribution RuleGeneral(std::span<const double> y, double eps,
                             NegativeExponent exponent = NegativeExponent::kKMinus2);

// Draw a label in 1..k from p with a uniform u in [0, 1). Labels with zero
// probability are never returned.
Label SampleLabel(std::span<const double> p, double u);

enum class RuleKind { kMonotone, kKThree, kGeneralK, kUniform };

class ProbabilityRule {
 public:
  static ProbabilityRule Monotone();
  static ProbabilityRule KThree();
  static ProbabilityRule GeneralK(double eps,
                                  NegativeExponent exponent = NegativeExponent::kKMinus2);
  static ProbabilityRule Uniform();

  RuleKind kind() const { return kind_; }
  double epsilon() const { return eps_; }
  NegativeExponent exponent() const { return exponent_; }
  std::string Name() const;

  // Throws RuleCompatibilityError when the rule cannot run with k labels.
  void CheckCompatible(int k) const;

  StepDistribution Apply(std::span<const double> y) const;

  // The constant c of the per-step inequality f(p) <= c g(p) that the rule
  // is analysed for, and the implied ratio 1/(1+c). Monotone is analysed
  // only for monotone functions; Uniform has no analysis (nullopt).
  std::optional<double> AnalysisConstant(int k) const;
  std::optional<double> RatioBound(int k) const;

 private:
  ProbabilityRule(RuleKind kind, double eps, NegativeExponent exponent)
      : kind_(kind), eps_(eps), exponent_(exponent) {}

  RuleKind kind_;
  double eps_ = 0.0;
  NegativeExponent exponent_ = NegativeExponent::kKMinus2;
};

}  // namespace ksubmax

#endif  // KSUBMAX_RULES_H_
