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

#ifndef KSUBMAX_GENERATOR_H_
#define KSUBMAX_GENERATOR_H_

#include <cstdint>
#include <stdexcept>

#include "ksubmax/oracle.h"

namespace ksubmax {

class RejectionBudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Weights and scales live on a 1/4 grid, so every value is a multiple of
// 1/16 and sums stay exact in double precision.
struct GeneratorConfig {
  Dims dims{4, 3};
  int unary_blocks = 4;
  int coverage_blocks = 1;
  int table_blocks = 1;

  double unary_weight_max = 2.0;  // unary weights drawn from [0, max]
  int coverage_items = 6;
  int table_max_arity = 2;  // capped at min(3, n)

  bool monotone = false;             // only monotone blocks
  bool require_nonmonotone = false;  // redraw until some marginal is < 0
  int rejection_budget = 200;

  // Unary + coverage + table mix with negative unary weights allowed.
  static GeneratorConfig Nonmonotone(Dims dims);
  // Nonnegative unary + coverage + monotone tables.
  static GeneratorConfig Monotone(Dims dims);
};

// Deterministic in (config, seed). The result is nonnegative: a constant
// block lifts a negative minimum to 0 when the range is enumerable, and
// otherwise lifts a block-wise lower bound to 0. Enumerable results pass the
// characterization check, and also the direct check when the number of
// point pairs is within the guard. Throws RejectionBudgetExhausted when a table block or
// the nonmonotone requirement cannot be met within the budget.
OracleSpec Generate(const GeneratorConfig& config, std::uint64_t seed,
                    std::uint64_t guard = DefaultGuard());

// Values of a table on `arity` elements and k labels, drawn by rejection:
// a k-submodular base with strict slack plus grid noise, kept when both
// validators accept (and, if requested, it is monotone).
std::vector<double> SampleTableValues(int arity, int k, bool monotone,
                                      std::uint64_t seed, int budget);

}  // namespace ksubmax

#endif  // KSUBMAX_GENERATOR_H_
