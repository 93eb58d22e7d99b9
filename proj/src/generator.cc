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

#include <algorithm>
#include <numeric>

#include "ksubmax/rng.h"

namespace ksubmax {
namespace {

constexpr double kGrid = 0.25;

double GridValue(SplitMix64& rng, std::int64_t lo, std::int64_t hi) {
  return static_cast<double>(UniformInt(rng, lo, hi)) * kGrid;
}

// k weights with w_i + w_j >= 0: nonnegative draws, then (optionally) the
// minimum flipped negative by no more than the second minimum.
std::vector<double> PairwiseMonotoneWeights(SplitMix64& rng, int k,
                                            double max_weight, bool allow_negative) {
  const auto top = static_cast<std::int64_t>(max_weight / kGrid);
  std::vector<std::int64_t> units(k);
  for (auto& u : units) u = UniformInt(rng, 0, top);
  if (allow_negative && k >= 2 && UniformInt(rng, 0, 1) == 1) {
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return units[a] < units[b]; });
    const std::int64_t second = units[order[1]];
    if (second >= 1) units[order[0]] = -UniformInt(rng, 1, second);
  } else if (allow_negative && k == 1 && UniformInt(rng, 0, 1) == 1) {
    // No pair to balance against.
    units[0] = -UniformInt(rng, 1, top);
  }
  std::vector<double> weights(k);
  for (int i = 0; i < k; ++i) weights[i] = static_cast<double>(units[i]) * kGrid;
  return weights;
}

CoverageBlock SampleCoverage(SplitMix64& rng, Dims dims, int items) {
  CoverageBlock block;
  block.item_weights.resize(items);
  for (auto& w : block.item_weights) w = GridValue(rng, 1, 8);
  block.covers.assign(dims.n, std::vector<std::vector<int>>(dims.k));
  for (int e = 0; e < dims.n; ++e) {
    for (int i = 0; i < dims.k; ++i) {
      for (int u = 0; u < items; ++u) {
        if (UniformInt(rng, 0, 2) == 0) block.covers[e][i].push_back(u);
      }
    }
  }
  return block;
}

bool TableIsMonotone(Dims dims, const std::vector<double>& values) {
  for (std::uint64_t idx = 0; idx < values.size(); ++idx) {
    const Assignment x = FromIndex(dims, idx);
    for (int e = 0; e < dims.n; ++e) {
      if (x.is_assigned(e)) continue;
      for (Label i = 1; i <= dims.k; ++i) {
        if (values[IndexOf(x.With(e, i))] - values[idx] < -kValueSlack) {
          return false;
        }
      }
    }
  }
  return true;
}

double BlockLowerBound(const Block& block) {
  const double raw = std::visit(
      [](const auto& body) -> double {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, UnaryBlock>) {
          return std::min(0.0, *std::min_element(body.weights.begin(),
                                                 body.weights.end()));
        } else if constexpr (std::is_same_v<T, CoverageBlock>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, TableBlock>) {
          return *std::min_element(body.values.begin(), body.values.end());
        } else {
          return body.value;
        }
      },
      block.body);
  return block.scale * raw;
}

}  // namespace

GeneratorConfig GeneratorConfig::Nonmonotone(Dims dims) {
  GeneratorConfig config;
  config.dims = dims;
  config.unary_blocks = dims.n;
  config.coverage_blocks = 1;
  config.table_blocks = dims.n >= 2 ? 1 : 0;
  config.require_nonmonotone = true;
  return config;
}

GeneratorConfig GeneratorConfig::Monotone(Dims dims) {
  GeneratorConfig config;
  config.dims = dims;
  config.unary_blocks = dims.n;
  config.coverage_blocks = 2;
  config.table_blocks = dims.n >= 2 ? 1 : 0;
  config.monotone = true;
  return config;
}

std::vector<double> SampleTableValues(int arity, int k, bool monotone,
                                      std::uint64_t seed, int budget) {
  const Dims dims(arity, k);
  const std::uint64_t points = *PointCount(dims);
  for (int attempt = 0; attempt < budget; ++attempt) {
    SplitMix64 rng = Substream(seed, static_cast<std::uint64_t>(attempt));
    // Base: concave function of the support size (strict slack everywhere),
    // pairwise-monotone unaries, and a Potts-style disagreement penalty
    // balanced by a per-element bonus.
    const std::int64_t curvature = UniformInt(rng, 2, 4);
    const std::int64_t first_gain = curvature * arity + UniformInt(rng, 0, 4);
    std::vector<std::vector<double>> unary(arity);
    for (auto& w : unary) w = PairwiseMonotoneWeights(rng, k, 2.0, !monotone);
    std::vector<std::vector<double>> disagree(arity, std::vector<double>(arity));
    for (int a = 0; a < arity; ++a) {
      for (int b = a + 1; b < arity; ++b) disagree[a][b] = GridValue(rng, 0, 4);
    }
    std::vector<double> values(points);
    for (std::uint64_t idx = 0; idx < points; ++idx) {
      const Assignment x = FromIndex(dims, idx);
      const int m = x.support_size();
      double v = 0.0;
      for (int t = 0; t < m; ++t) {
        v += static_cast<double>(first_gain - curvature * t) * kGrid;
      }
      for (int a = 0; a < arity; ++a) {
        if (x[a] != kUnassigned) v += unary[a][x[a] - 1];
        for (int b = a + 1; b < arity; ++b) {
          const double w = disagree[a][b];
          v += w * ((x[a] != kUnassigned) + (x[b] != kUnassigned));
          if (x[a] && x[b] && x[a] != x[b]) v -= w;
        }
      }
      // Grid noise on roughly half the entries.
      if (UniformInt(rng, 0, 1) == 1) v += GridValue(rng, -2, 2);
      values[idx] = v;
    }
    if (!ValidateKSubmodularTable(dims, values, ValidationMethod::kCharacterization).ok) {
      continue;
    }
    if (!ValidateKSubmodularTable(dims, values, ValidationMethod::kDirect).ok) {
      continue;
    }
    if (monotone && !TableIsMonotone(dims, values)) continue;
    return values;
  }
  throw RejectionBudgetExhausted("no valid table block after " +
                                 std::to_string(budget) + " draws");
}

OracleSpec Generate(const GeneratorConfig& config, std::uint64_t seed,
                    std::uint64_t guard) {
  const Dims dims = config.dims;
  const auto points = PointCount(dims);
  const bool enumerable = points.has_value() && *points <= guard;
  if (config.require_nonmonotone && !enumerable) {
    throw GuardExceeded("require_nonmonotone needs an enumerable instance");
  }
  const int max_arity = std::min({config.table_max_arity, dims.n, 3});

  for (int attempt = 0; attempt < config.rejection_budget; ++attempt) {
    SplitMix64 rng = Substream(seed, static_cast<std::uint64_t>(attempt));
    BlockSum sum;
    for (int b = 0; b < config.unary_blocks; ++b) {
      UnaryBlock unary;
      unary.element = static_cast<int>(UniformInt(rng, 0, dims.n - 1));
      unary.weights = PairwiseMonotoneWeights(rng, dims.k, config.unary_weight_max,
                                              !config.monotone);
      sum.blocks.push_back(Block{std::move(unary), 1.0});
    }
    for (int b = 0; b < config.coverage_blocks; ++b) {
      sum.blocks.push_back(
          Block{SampleCoverage(rng, dims, config.coverage_items), GridValue(rng, 1, 4)});
    }
    for (int b = 0; b < config.table_blocks && max_arity >= 1; ++b) {
      const int arity = static_cast<int>(UniformInt(rng, 1, max_arity));
      std::vector<int> elements(dims.n);
      std::iota(elements.begin(), elements.end(), 0);
      for (int i = 0; i < arity; ++i) {
        const auto j = UniformInt(rng, i, dims.n - 1);
        std::swap(elements[i], elements[j]);
      }
      elements.resize(arity);
      TableBlock table;
      table.elements = std::move(elements);
      table.values = SampleTableValues(arity, dims.k, config.monotone, rng(),
                                       config.rejection_budget);
      sum.blocks.push_back(Block{std::move(table), 1.0});
    }

    OracleSpec draft(dims, sum);
    double offset = 0.0;
    if (enumerable) {
      const ValueRange range = ExactRange(draft, guard);
      if (!(range.max > range.min)) continue;  // constant: OPT would be 0
      offset = std::max(0.0, -range.min);
    } else {
      double lower = 0.0;
      for (const Block& block : sum.blocks) lower += BlockLowerBound(block);
      offset = std::max(0.0, -lower);
    }
    sum.blocks.push_back(Block{ConstantBlock{offset}, 1.0});
    OracleSpec spec(dims, std::move(sum));

    if (enumerable) {
      if (config.require_nonmonotone && IsMonotone(spec, guard)) continue;
      // The direct check is quadratic in the point count.
      std::vector<ValidationMethod> methods = {ValidationMethod::kCharacterization};
      if (*points <= guard / *points) methods.push_back(ValidationMethod::kDirect);
      for (auto method : methods) {
        const ValidationReport report = Validate(spec, method, guard);
        if (!report.ok) {
          throw std::logic_error("generated instance failed validation: " +
                                 report.counterexample->Describe());
        }
      }
    }
    return spec;
  }
  throw RejectionBudgetExhausted("no acceptable instance after " +
                                 std::to_string(config.rejection_budget) +
                                 " draws");
}

}  // namespace ksubmax
