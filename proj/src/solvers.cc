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

#include "ksubmax/solvers.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "ksubmax/rng.h"

namespace ksubmax {
namespace {

// Salt separating the order shuffle from the per-step streams.
constexpr std::uint64_t kShuffleKey = 0x5348554646'4c45ULL;

void RequireAtMostOneNegative(const MarginalVector& y) {
  int negatives = 0;
  for (double v : y) negatives += (v < -kValueSlack);
  if (negatives > 1) {
    throw std::domain_error(
        "marginal vector has more than one negative entry; the oracle is not "
        "k-submodular");
  }
}

class ExpectationWalker {
 public:
  ExpectationWalker(const OracleSpec& spec, const ProbabilityRule& rule,
                    std::vector<int> order)
      : spec_(spec), rule_(rule), order_(std::move(order)), point_(spec.dims()) {}

  double Run() { return Visit(0, spec_.Value(point_)); }

 private:
  double Visit(std::size_t step, double current) {
    if (step == order_.size()) return current;
    const int e = order_[step];
    const int k = spec_.dims().k;
    std::vector<double> next(k);
    MarginalVector y(k);
    for (int i = 0; i < k; ++i) {
      point_.set(e, static_cast<Label>(i + 1));
      next[i] = spec_.Value(point_);
      y[i] = next[i] - current;
    }
    const StepDistribution dist = rule_.Apply(y);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
      if (dist.p[i] <= 0.0) continue;
      point_.set(e, static_cast<Label>(i + 1));
      total += dist.p[i] * Visit(step + 1, next[i]);
    }
    point_.set(e, kUnassigned);
    return total;
  }

  const OracleSpec& spec_;
  const ProbabilityRule& rule_;
  std::vector<int> order_;
  Assignment point_;
};

}  // namespace

std::vector<int> MakeOrder(int n, const ElementOrder& order) {
  std::vector<int> sequence(n);
  std::iota(sequence.begin(), sequence.end(), 0);
  if (order.mode == OrderMode::kShuffled) {
    SplitMix64 rng = Substream(order.seed, kShuffleKey);
    for (int i = n - 1; i > 0; --i) {
      std::swap(sequence[i], sequence[UniformInt(rng, 0, i)]);
    }
  }
  return sequence;
}

RunReport RunRandomized(CountingOracle& oracle, const ProbabilityRule& rule,
                        std::uint64_t seed, const ElementOrder& order,
                        bool record_trace) {
  const Dims dims = oracle.dims();
  rule.CheckCompatible(dims.k);
  const std::int64_t start_queries = oracle.queries();
  Assignment s(dims);
  double current = oracle.Evaluate(s);
  std::vector<TraceStep> trace;
  const std::vector<int> sequence = MakeOrder(dims.n, order);
  std::vector<double> next(dims.k);
  MarginalVector y(dims.k);
  for (std::size_t t = 0; t < sequence.size(); ++t) {
    const int e = sequence[t];
    for (int i = 0; i < dims.k; ++i) {
      next[i] = oracle.Evaluate(s.With(e, static_cast<Label>(i + 1)));
      y[i] = next[i] - current;
    }
    RequireAtMostOneNegative(y);
    const StepDistribution dist = rule.Apply(y);
    SplitMix64 rng = Substream(seed, t + 1);
    const Label label = SampleLabel(dist.p, UniformUnit(rng));
    s.set(e, label);
    current = next[label - 1];
    if (record_trace) {
      TraceStep step;
      step.element = e;
      step.y = y;
      step.y_sorted = y;
      std::sort(step.y_sorted.begin(), step.y_sorted.end(), std::greater<>());
      step.branch = dist.branch;
      step.p = dist.p;
      step.label = label;
      trace.push_back(std::move(step));
    }
  }
  return RunReport{std::move(s), current, oracle.queries() - start_queries,
                   std::move(trace)};
}

double ExactExpectedValue(const OracleSpec& spec, const ProbabilityRule& rule,
                          const ElementOrder& order, std::uint64_t guard) {
  rule.CheckCompatible(spec.dims().k);
  CheckGuard(LeafCount(spec.dims()), guard, "exact expected value");
  ExpectationWalker walker(spec, rule, MakeOrder(spec.dims().n, order));
  return walker.Run();
}

Optimum BruteForceOpt(const OracleSpec& spec, std::uint64_t guard) {
  const auto points = PointCount(spec.dims());
  CheckGuard(points, guard, "brute force optimum");
  // Index order is lexicographic order, so the first strict maximum wins.
  Optimum best{Assignment(spec.dims()), spec.Value(Assignment(spec.dims()))};
  for (std::uint64_t idx = 1; idx < *points; ++idx) {
    Assignment x = FromIndex(spec.dims(), idx);
    const double v = spec.Value(x);
    if (v > best.value) best = Optimum{std::move(x), v};
  }
  return best;
}

Optimum BruteForceOptFullSupport(const OracleSpec& spec, std::uint64_t guard) {
  const Dims dims = spec.dims();
  CheckGuard(LeafCount(dims), guard, "brute force optimum (full support)");
  std::vector<Label> labels(dims.n, 1);
  std::optional<Optimum> best;
  while (true) {
    Assignment x(dims, labels);
    const double v = spec.Value(x);
    if (!best || v > best->value) best = Optimum{std::move(x), v};
    int e = dims.n - 1;
    while (e >= 0 && labels[e] == dims.k) labels[e--] = 1;
    if (e < 0) break;
    ++labels[e];
  }
  return *best;
}

}  // namespace ksubmax
