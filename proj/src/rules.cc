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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ksubmax/epsilon.h"

namespace ksubmax {
namespace {

constexpr double kSimplexSlack = 1e-12;

// Marginal vectors of k-submodular functions have y_i + y_j >= 0 for i != j.
// The sorted rules rely on it; anything else is a caller error.
void RequirePairwiseMonotone(std::span<const double> y_sorted) {
  if (y_sorted.size() >= 2 &&
      y_sorted[y_sorted.size() - 1] + y_sorted[y_sorted.size() - 2] < -kSimplexSlack) {
    throw std::domain_error("marginal vector is not pairwise monotone");
  }
}

// Maps a distribution on the sorted order back to label order and
// renormalises it onto the simplex.
StepDistribution Finish(std::vector<double> p_sorted, const std::vector<int>& order,
                        RuleBranch branch) {
  std::vector<double> p(p_sorted.size());
  double sum = 0.0;
  for (std::size_t r = 0; r < p_sorted.size(); ++r) {
    double v = p_sorted[r];
    if (v < -kSimplexSlack || !std::isfinite(v)) {
      throw std::domain_error("rule produced a negative probability");
    }
    v = std::max(v, 0.0);
    p[order[r]] = v;
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexSlack) {
    throw std::logic_error("rule produced a distribution summing to " +
                           std::to_string(sum));
  }
  for (double& v : p) v /= sum;
  return StepDistribution{std::move(p), branch};
}

std::vector<double> Gather(std::span<const double> y, const std::vector<int>& order) {
  std::vector<double> ys(y.size());
  for (std::size_t r = 0; r < y.size(); ++r) ys[r] = y[order[r]];
  return ys;
}

std::vector<double> PointMass(std::size_t k) {
  std::vector<double> p(k, 0.0);
  p[0] = 1.0;
  return p;
}

}  // namespace

std::string RuleBranch::Name() const {
  using K = Kind;
  switch (kind) {
    case K::kMonotoneWeighted:
      return "monotone:weighted";
    case K::kMonotoneFallback:
      return "monotone:fallback";
    case K::kK3NonPositiveGamma:
      return "k3:gamma<=0";
    case K::kK3PositiveDelta:
      return "k3:delta>0";
    case K::kK3NonPositiveDelta:
      return "k3:delta<=0";
    case K::kDegenerate:
      return "degenerate";
    case K::kGeneralNegative:
      return "general:negative";
    case K::kGeneralLevel:
      return "general:l=" + std::to_string(level);
    case K::kUniform:
      return "uniform";
  }
  return "unknown";
}

std::vector<int> DescendingOrder(std::span<const double> y) {
  std::vector<int> order(y.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return y[a] > y[b]; });
  return order;
}

StepDistribution RuleMonotone(std::span<const double> y) {
  const int k = static_cast<int>(y.size());
  if (k < 1) throw std::invalid_argument("empty marginal vector");
  const double alpha = k - 1;
  std::vector<double> weights(k);
  double beta = 0.0;
  for (int i = 0; i < k; ++i) {
    // Negative marginals are clamped: an even exponent would reward them.
    weights[i] = std::pow(std::max(y[i], 0.0), alpha);
    beta += weights[i];
  }
  std::vector<int> identity(k);
  std::iota(identity.begin(), identity.end(), 0);
  if (beta == 0.0 || !std::isfinite(beta)) {
    return Finish(PointMass(k), identity, {RuleBranch::Kind::kMonotoneFallback});
  }
  for (double& w : weights) w /= beta;
  return Finish(std::move(weights), identity, {RuleBranch::Kind::kMonotoneWeighted});
}

StepDistribution RuleK3(std::span<const double> y) {
  if (y.size() != 3) throw RuleCompatibilityError("k=3 rule needs exactly 3 labels");
  const std::vector<int> order = DescendingOrder(y);
  const std::vector<double> ys = Gather(y, order);
  RequirePairwiseMonotone(ys);
  if (ys[0] <= 0.0) {
    return Finish(PointMass(3), order, {RuleBranch::Kind::kDegenerate});
  }
  const double beta = ys[1] / ys[0];
  const double gamma = ys[2] / ys[0];
  if (gamma <= 0.0) {
    return Finish({1.0 / (1.0 + beta), beta / (1.0 + beta), 0.0}, order,
                  {RuleBranch::Kind::kK3NonPositiveGamma});
  }
  const double delta =
      (1.0 - beta - gamma) / 2.0 + beta / (1.0 + gamma) - gamma / (beta + gamma);
  if (delta > kDeltaTieTolerance) {
    const double denom = 1.0 + beta + 2.0 * gamma;
    return Finish({(1.0 + gamma) / denom, (beta + gamma) / denom, 0.0}, order,
                  {RuleBranch::Kind::kK3PositiveDelta});
  }
  const double denom = 2.0 + beta + 3.0 * gamma;
  const double rest = (beta + gamma) / denom;
  return Finish({(2.0 - beta + gamma) / denom, rest, rest}, order,
                {RuleBranch::Kind::kK3NonPositiveDelta});
}

StepDistribution RuleUniform(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::vector<int> identity(k);
  std::iota(identity.begin(), identity.end(), 0);
  return Finish(std::vector<double>(k, 1.0 / k), identity, {RuleBranch::Kind::kUniform});
}

int FlowchartLevel(std::span<const double> y_sorted, double eps) {
  const int k = static_cast<int>(y_sorted.size());
  if (k < 3) throw std::invalid_argument("flowchart needs k >= 3");
  for (int r = 1; r < k; ++r) {
    if (y_sorted[r] > y_sorted[r - 1]) {
      throw std::invalid_argument("flowchart input must be sorted descending");
    }
  }
  if (!(y_sorted[k - 1] > 0.0)) {
    throw std::invalid_argument("flowchart input must be strictly positive");
  }
  const double one_eps = 1.0 + eps;
  if (y_sorted[k - 1] > (y_sorted[1] - eps * y_sorted[0]) / one_eps) {
    const double split = static_cast<double>(k - 1) / (2.0 * (k - 2));
    return y_sorted[1] <= split * y_sorted[0] ? 0 : 1;
  }
  int level = 2;
  double prefix = y_sorted[0] + y_sorted[1];
  while (level < k && y_sorted[level] > prefix / (level * one_eps)) {
    prefix += y_sorted[level];
    ++level;
  }
  return level;
}

StepDistribution RuleGeneral(std::span<const double> y, double eps,
                             NegativeExponent exponent) {
  const int k = static_cast<int>(y.size());
  if (k < 3) throw RuleCompatibilityError("general-k rule needs k >= 3");
  if (!(eps > 0.0) || !ResidualsEps(k, eps).feasible()) {
    throw RuleCompatibilityError("epsilon " + std::to_string(eps) +
                                 " is infeasible for k = " + std::to_string(k));
  }
  const std::vector<int> order = DescendingOrder(y);
  const std::vector<double> ys = Gather(y, order);
  RequirePairwiseMonotone(ys);

  if (ys[k - 1] <= 0.0) {
    const double power = exponent == NegativeExponent::kKMinus2 ? k - 2 : k - 1;
    std::vector<double> p(k, 0.0);
    double beta = 0.0;
    for (int r = 0; r < k - 1; ++r) {
      p[r] = std::pow(std::max(ys[r], 0.0), power);
      beta += p[r];
    }
    if (beta == 0.0) {
      return Finish(PointMass(k), order, {RuleBranch::Kind::kDegenerate});
    }
    for (double& v : p) v /= beta;
    return Finish(std::move(p), order, {RuleBranch::Kind::kGeneralNegative});
  }

  const int level = FlowchartLevel(ys, eps);
  const RuleBranch branch{RuleBranch::Kind::kGeneralLevel, level};
  std::vector<double> p(k, 0.0);
  const double ratio = ys[1] / ys[0];
  if (level == 0) {
    const double rest = 2.0 * ratio / ((k - 1) * (1.0 + 2.0 * ratio));
    p[0] = 1.0 - 2.0 * ratio / (1.0 + 2.0 * ratio);
    std::fill(p.begin() + 1, p.end(), rest);
  } else if (level == 1) {
    const double rest = ratio / ((k - 1) + ratio);
    p[0] = 1.0 - (k - 1) * ratio / ((k - 1) + ratio);
    std::fill(p.begin() + 1, p.end(), rest);
  } else {
    std::fill(p.begin(), p.begin() + level, 1.0 / level);
  }
  return Finish(std::move(p), order, branch);
}

Label SampleLabel(std::span<const double> p, double u) {
  double cumulative = 0.0;
  Label last = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    last = static_cast<Label>(i + 1);
    cumulative += p[i];
    if (u < cumulative) return last;
  }
  if (last == 0) throw std::invalid_argument("distribution has no mass");
  return last;  // u landed in the rounding gap above the final sum
}

ProbabilityRule ProbabilityRule::Monotone() {
  return ProbabilityRule(RuleKind::kMonotone, 0.0, NegativeExponent::kKMinus2);
}

ProbabilityRule ProbabilityRule::KThree() {
  return ProbabilityRule(RuleKind::kKThree, 0.0, NegativeExponent::kKMinus2);
}

ProbabilityRule ProbabilityRule::GeneralK(double eps, NegativeExponent exponent) {
  if (!(eps > 0.0)) throw RuleCompatibilityError("epsilon must be > 0");
  return ProbabilityRule(RuleKind::kGeneralK, eps, exponent);
}

ProbabilityRule ProbabilityRule::Uniform() {
  return ProbabilityRule(RuleKind::kUniform, 0.0, NegativeExponent::kKMinus2);
}

std::string ProbabilityRule::Name() const {
  switch (kind_) {
    case RuleKind::kMonotone:
      return "monotone";
    case RuleKind::kKThree:
      return "k3";
    case RuleKind::kGeneralK:
      return exponent_ == NegativeExponent::kKMinus2 ? "general" : "general-kminus1";
    case RuleKind::kUniform:
      return "uniform";
  }
  return "unknown";
}

void ProbabilityRule::CheckCompatible(int k) const {
  switch (kind_) {
    case RuleKind::kKThree:
      if (k != 3) throw RuleCompatibilityError("k3 rule requires k = 3");
      break;
    case RuleKind::kGeneralK:
      if (k < 3) throw RuleCompatibilityError("general rule requires k >= 3");
      if (!ResidualsEps(k, eps_).feasible()) {
        throw RuleCompatibilityError("epsilon " + std::to_string(eps_) +
                                     " is infeasible for k = " + std::to_string(k));
      }
      break;
    case RuleKind::kMonotone:
    case RuleKind::kUniform:
      if (k < 1) throw RuleCompatibilityError("k must be >= 1");
      break;
  }
}

StepDistribution ProbabilityRule::Apply(std::span<const double> y) const {
  switch (kind_) {
    case RuleKind::kMonotone:
      return RuleMonotone(y);
    case RuleKind::kKThree:
      return RuleK3(y);
    case RuleKind::kGeneralK:
      return RuleGeneral(y, eps_, exponent_);
    case RuleKind::kUniform:
      return RuleUniform(static_cast<int>(y.size()));
  }
  throw std::logic_error("unknown rule kind");
}

std::optional<double> ProbabilityRule::AnalysisConstant(int k) const {
  switch (kind_) {
    case RuleKind::kMonotone:
      return 1.0 - 1.0 / k;
    case RuleKind::kKThree:
      return (std::sqrt(17.0) - 1.0) / 4.0;
    case RuleKind::kGeneralK:
      // The positive branch needs 1/(1+ε), the nonpositive one 1 - 1/(k-1).
      return std::max(1.0 / (1.0 + eps_), 1.0 - 1.0 / (k - 1));
    case RuleKind::kUniform:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> ProbabilityRule::RatioBound(int k) const {
  if (kind_ == RuleKind::kKThree) return (std::sqrt(17.0) - 3.0) / 2.0;
  const auto c = AnalysisConstant(k);
  if (!c) return std::nullopt;
  return 1.0 / (1.0 + *c);
}

}  // namespace ksubmax
