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

// Per-step analysis checks for the randomized framework.
//
// A step of the framework is summarised by two marginal vectors: y (gains
// at the algorithm's partial solution) and a (gains at the hybrid point
// built from a reference optimum), the optimum's label i* and the unique
// label i- with a negative entry of a, if any. These satisfy
//   a_i <= y_i,   a_i + a_j >= 0,   y_i + y_j >= 0   (i != j).
// A rule with constant c is sound when f(p) <= c g(p) for every such
// scenario, where
//   f(p) = 0                                          if i- = i*
//        = (1 - p_i*) a_i* + (1 - p_i* - 2 p_i-) a_i-  if i- exists, != i*
//        = (1 - p_i*) a_i*                             if a >= 0
//   g(p) = sum_i y_i p_i.
// Labels are 1-based throughout.

#ifndef KSUBMAX_LEMMA_LAB_H_
#define KSUBMAX_LEMMA_LAB_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ksubmax/kernel.h"
#include "ksubmax/oracle.h"
#include "ksubmax/rules.h"
#include "ksubmax/solvers.h"

namespace ksubmax {

// Slack for scenario constraint checks and residual verdicts.
inline constexpr double kScenarioSlack = 1e-12;
inline constexpr double kResidualTolerance = 1e-9;

struct AdversaryScenario {
  int k = 0;
  std::vector<double> a;
  std::vector<double> y;
  Label i_star = 1;
  std::optional<Label> i_minus;

  bool operator==(const AdversaryScenario&) const = default;
};

enum class FgCase { kMinusIsStar, kMinusNotStar, kNoMinus };
std::string ToString(FgCase c);
FgCase CaseOf(const AdversaryScenario& s);

// Empty when the scenario satisfies all constraints (to kScenarioSlack),
// otherwise a description of the first violated one.
std::optional<std::string> CheckScenario(const AdversaryScenario& s);

// Sign pattern of a.
enum class ScenarioCategory { kAny, kNegative, kNonnegative };

// Sign pattern of y. kNonpositiveMin forces min y <= 0, kPositive forces
// every y_i > 0. kNonnegative category overrides to y >= 0.
enum class YSign { kAny, kPositive, kNonpositiveMin };

// kClustered draws the lower entries close together below the maximum and
// kTwoLevel draws a near-equal top group above a lower tail; both reach the
// flowchart levels that independent draws rarely hit. kChain follows the
// flowchart's continuation test for `chain_eps` just above its threshold
// and, when the window exists (k >= 8), lands on level k; it is drawn in
// continuous arithmetic. kMixed picks one shape per seed, including kChain
// only when chain_eps > 0.
enum class YShape { kIndependent, kClustered, kTwoLevel, kChain, kMixed };

struct ScenarioOptions {
  int k = 3;
  ScenarioCategory category = ScenarioCategory::kAny;
  YSign y_sign = YSign::kAny;
  YShape y_shape = YShape::kMixed;
  // Off: magnitudes on the 1/64 grid in [-2, 2], so constraints hold
  // exactly. On: continuous draws.
  bool continuous = false;
  double chain_eps = 0.0;
};

// Constructive and deterministic per (options, seed).
AdversaryScenario SampleScenario(const ScenarioOptions& options, std::uint64_t seed);
AdversaryScenario SampleScenario(int k, std::uint64_t seed,
                                 ScenarioCategory category = ScenarioCategory::kAny);

// Both throw std::invalid_argument unless p has k nonnegative entries
// summing to 1.
double FOfP(const AdversaryScenario& s, std::span<const double> p);
double GOfP(const AdversaryScenario& s, std::span<const double> p);

struct Residual {
  double value = 0.0;  // c g(p) - f(p)
  RuleBranch branch;
  std::vector<double> p;
  AdversaryScenario scenario;
};

// Applies the rule to s.y. Throws RuleCompatibilityError when the rule
// cannot run with s.k labels.
Residual CheckRule(const AdversaryScenario& s, const ProbabilityRule& rule, double c);

struct ResidualSuiteConfig {
  std::string name;
  ScenarioOptions options;
  ProbabilityRule rule = ProbabilityRule::Uniform();
  double c = 0.0;
  std::int64_t count = 0;
  std::uint64_t seed = 0;  // scenario i uses DeriveSeed(seed, i)
};

struct BranchStats {
  std::string branch;
  std::int64_t count = 0;
  double min_residual = 0.0;
};

struct ResidualSuiteResult {
  std::string name;
  int k = 0;
  double c = 0.0;
  std::int64_t count = 0;
  double min_residual = 0.0;
  std::optional<Residual> worst;
  std::vector<BranchStats> branches;  // sorted by branch name

  bool passed() const { return min_residual >= -kResidualTolerance; }
  bool Covers(const std::string& branch) const;
};

ResidualSuiteResult RunResidualSuite(const ResidualSuiteConfig& config);

// The rule-versus-constant suites: k3 on k = 3; the general rule on
// nonpositive-minimum y and on positive y for each k in `ks`, plus positive
// y at k = kLevelKWitness, the smallest k whose flowchart can reach level k;
// the monotone rule on nonnegative scenarios for each k in `ks`.
inline constexpr int kLevelKWitness = 8;
std::vector<ResidualSuiteConfig> StandardResidualSuites(std::int64_t count,
                                                        std::uint64_t master_seed,
                                                        const std::vector<int>& ks = {3, 4, 5});

struct SimplexSearch {
  double c = 0.0;
  double step = 0.0;
  std::int64_t points = 0;
  // Smallest over the grid of max(f1 - c g1, f2 - c g2).
  double best_violation = 0.0;
  std::vector<double> best_p;
  bool satisfiable() const { return best_violation <= 0.0; }
};

// Grid search over the 3-simplex with the given step for a p satisfying
// f(p) <= c g(p) on both scenarios.
SimplexSearch SearchSimplexK3(const AdversaryScenario& s1, const AdversaryScenario& s2,
                              double c, double step);

struct TightnessReport {
  double alpha = 0.0;
  double c_prime = 0.0;
  AdversaryScenario first;
  AdversaryScenario second;
  std::vector<double> p;  // k3 rule on the shared y
  RuleBranch branch;
  double f1 = 0.0, g1 = 0.0, f2 = 0.0, g2 = 0.0;
  double gap1 = 0.0;      // |f1 - c' g1|
  double gap2 = 0.0;      // |f2 - c' g2|
  double sum_gap = 0.0;   // |f1 + f2 - (1+alpha)/2 (g1 + g2)|
  SimplexSearch search;   // at c' - 0.01, step 0.001

  bool equality_holds(double tol = 1e-12) const {
    return gap1 <= tol && gap2 <= tol && sum_gap <= tol;
  }
};

TightnessReport TightnessWitnessK3(double grid_step = 0.001, double c_margin = 0.01);

struct TraceStepCheck {
  int t = 0;  // 1-based step
  int element = 0;
  Assignment s_prev;
  Assignment o_t;
  Assignment t_prev;
  AdversaryScenario scenario;
  std::vector<double> p;
  RuleBranch branch;
  Label label = 0;
  double f_of_p = 0.0;
  double c_g_of_p = 0.0;
  std::vector<std::string> failures;
};

struct TraceReport {
  std::vector<TraceStepCheck> steps;
  Assignment final_s;
  Assignment final_o;
  std::optional<double> c;
  bool ok() const;
  std::string Describe() const;  // failing steps, or "ok"
};

// Replays the sampled run for `seed` against a full reference optimum,
// materialising s^(t-1), o^(t) = (o ⊔ s^(t)) ⊔ s^(t) and t^(t-1) (o^(t) with
// the current element cleared) and checking at every step:
//   the scenario constraints on (a, y),
//   f(o^(t-1)) - f(o^(t)) = a_i* - a_label and f(s^(t)) - f(s^(t-1)) = y_label,
//   f(p) <= c g(p) when c is known (defaults to the rule's constant),
// and finally o^(n) = s. Throws std::invalid_argument if the reference does
// not assign every element.
TraceReport TraceAgainstReference(const OracleSpec& spec, const ProbabilityRule& rule,
                                  const Assignment& reference, std::uint64_t seed,
                                  const ElementOrder& order = ElementOrder::Given(),
                                  std::optional<double> c = std::nullopt);

}  // namespace ksubmax

#endif  // KSUBMAX_LEMMA_LAB_H_
