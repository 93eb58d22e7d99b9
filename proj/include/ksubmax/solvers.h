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

// The randomized greedy framework: visit elements in a fixed order, read
// the k marginal gains at the current partial solution, draw a label from
// the rule's distribution and commit it.
//
// Besides the sampled run, this module computes the exact expectation of
// the framework's output (by branching over every label with nonzero
// probability) and the exact optimum (by enumeration), which together give
// exact approximation ratios on small instances.

#ifndef KSUBMAX_SOLVERS_H_
#define KSUBMAX_SOLVERS_H_

#include <cstdint>
#include <vector>

#include "ksubmax/kernel.h"
#include "ksubmax/oracle.h"
#include "ksubmax/rules.h"

namespace ksubmax {

enum class OrderMode { kGiven, kShuffled };

struct ElementOrder {
  OrderMode mode = OrderMode::kGiven;
  std::uint64_t seed = 0;  // used by kShuffled

  static ElementOrder Given() { return {}; }
  static ElementOrder Shuffled(std::uint64_t seed) {
    return {OrderMode::kShuffled, seed};
  }
};

// The visiting sequence e^(1), ..., e^(n).
std::vector<int> MakeOrder(int n, const ElementOrder& order);

struct TraceStep {
  int element = 0;
  std::vector<double> y;         // marginals in label order
  std::vector<double> y_sorted;  // descending
  RuleBranch branch;
  std::vector<double> p;  // label order
  Label label = 0;
};

struct RunReport {
  Assignment assignment;
  double value = 0.0;
  std::int64_t queries = 0;
  std::vector<TraceStep> trace;  // empty unless requested
};

// One sampled run. Step t (1-based) draws from Substream(seed, t), so runs
// are reproducible and the first steps do not depend on n. f of the current
// partial solution is carried along, so a run costs exactly n*k + 1 queries
// on a fresh oracle. Throws std::domain_error if a marginal vector has two
// negative entries (the oracle is not k-submodular).
RunReport RunRandomized(CountingOracle& oracle, const ProbabilityRule& rule,
                        std::uint64_t seed,
                        const ElementOrder& order = ElementOrder::Given(),
                        bool record_trace = false);

// E[f(s)] over the rule's randomness, summed depth-first in label order.
// Requires k^n <= guard.
double ExactExpectedValue(const OracleSpec& spec, const ProbabilityRule& rule,
                          const ElementOrder& order = ElementOrder::Given(),
                          std::uint64_t guard = DefaultGuard());

struct Optimum {
  Assignment assignment;
  double value = 0.0;
};

// Lexicographically smallest maximiser over all (k+1)^n points.
Optimum BruteForceOpt(const OracleSpec& spec, std::uint64_t guard = DefaultGuard());

// Lexicographically smallest maximiser among full assignments (k^n points).
// For k >= 2 pairwise monotonicity makes its value equal to the optimum.
Optimum BruteForceOptFullSupport(const OracleSpec& spec,
                                 std::uint64_t guard = DefaultGuard());

}  // namespace ksubmax

#endif  // KSUBMAX_SOLVERS_H_
