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

// Reference implementations used as test oracles. They work from the set
// view and plain enumeration, sharing no code path with the library beyond
// OracleSpec::Value.

#ifndef KSUBMAX_TESTS_TEST_UTIL_H_
#define KSUBMAX_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "ksubmax/kernel.h"
#include "ksubmax/oracle.h"
#include "ksubmax/rules.h"

namespace ksubmax::testing {

using SetView = std::vector<std::set<int>>;  // [label-1] -> elements

inline SetView ToSets(const Assignment& x) {
  SetView sets(x.dims().k);
  for (int e = 0; e < x.size(); ++e) {
    if (x[e] != 0) sets[x[e] - 1].insert(e);
  }
  return sets;
}

inline Assignment FromSets(Dims dims, const SetView& sets) {
  std::vector<Label> labels(dims.n, 0);
  for (int i = 0; i < dims.k; ++i) {
    for (int e : sets[i]) labels[e] = i + 1;
  }
  return Assignment(dims, labels);
}

// (X_1 ∩ Y_1, ..., X_k ∩ Y_k).
inline Assignment RefMeet(const Assignment& x, const Assignment& y) {
  const SetView a = ToSets(x), b = ToSets(y);
  SetView out(x.dims().k);
  for (int i = 0; i < x.dims().k; ++i) {
    std::set_intersection(a[i].begin(), a[i].end(), b[i].begin(), b[i].end(),
                          std::inserter(out[i], out[i].end()));
  }
  return FromSets(x.dims(), out);
}

// X_i ∪ Y_i minus every other label's X_j ∪ Y_j.
inline Assignment RefJoin(const Assignment& x, const Assignment& y) {
  const int k = x.dims().k;
  const SetView a = ToSets(x), b = ToSets(y);
  SetView unions(k), out(k);
  for (int i = 0; i < k; ++i) {
    unions[i] = a[i];
    unions[i].insert(b[i].begin(), b[i].end());
  }
  for (int i = 0; i < k; ++i) {
    for (int e : unions[i]) {
      bool elsewhere = false;
      for (int j = 0; j < k; ++j) elsewhere = elsewhere || (j != i && unions[j].count(e));
      if (!elsewhere) out[i].insert(e);
    }
  }
  return FromSets(x.dims(), out);
}

inline std::vector<Assignment> AllPoints(Dims dims) {
  std::vector<Assignment> points;
  std::vector<Label> labels(dims.n, 0);
  while (true) {
    points.emplace_back(dims, labels);
    int e = dims.n - 1;
    while (e >= 0 && labels[e] == dims.k) labels[e--] = 0;
    if (e < 0) break;
    ++labels[e];
  }
  return points;
}

// Definition check over all pairs, using the set-view operations.
inline bool RefIsKSubmodular(const std::function<double(const Assignment&)>& f, Dims dims,
                             double slack = 1e-12) {
  const auto points = AllPoints(dims);
  for (const auto& x : points) {
    for (const auto& y : points) {
      if (f(x) + f(y) < f(RefMeet(x, y)) + f(RefJoin(x, y)) - slack) return false;
    }
  }
  return true;
}

inline double RefOpt(const OracleSpec& spec) {
  double best = -INFINITY;
  for (const auto& x : AllPoints(spec.dims())) best = std::max(best, spec.Value(x));
  return best;
}

// E[f(s)] by listing every label sequence and multiplying step
// probabilities along it; elements are visited in `order`.
inline double RefExpectation(const OracleSpec& spec, const ProbabilityRule& rule,
                             const std::vector<int>& order) {
  const Dims dims = spec.dims();
  std::vector<Label> seq(dims.n, 1);
  double total = 0.0;
  while (true) {
    Assignment s(dims);
    double prob = 1.0;
    for (int t = 0; t < dims.n && prob > 0.0; ++t) {
      const int e = order[t];
      std::vector<double> y(dims.k);
      for (int i = 0; i < dims.k; ++i) y[i] = spec.Value(s.With(e, i + 1)) - spec.Value(s);
      prob *= rule.Apply(y).p[seq[t] - 1];
      s.set(e, seq[t]);
    }
    if (prob > 0.0) total += prob * spec.Value(s);
    int t = dims.n - 1;
    while (t >= 0 && seq[t] == dims.k) seq[t--] = 1;
    if (t < 0) break;
    ++seq[t];
  }
  return total;
}

inline std::vector<int> Identity(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

inline Assignment RandomAssignment(Dims dims, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> label(0, dims.k);
  std::vector<Label> labels(dims.n);
  for (auto& l : labels) l = label(rng);
  return Assignment(dims, labels);
}

inline OracleSpec UnarySpec(std::vector<double> weights) {
  const int k = static_cast<int>(weights.size());
  BlockSum sum;
  sum.blocks.push_back({UnaryBlock{0, std::move(weights)}, 1.0});
  return OracleSpec(Dims(1, k), std::move(sum));
}

}  // namespace ksubmax::testing

#endif  // KSUBMAX_TESTS_TEST_UTIL_H_
