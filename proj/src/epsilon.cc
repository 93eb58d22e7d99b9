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

#include "ksubmax/epsilon.h"

#include <cmath>
#include <stdexcept>

namespace ksubmax {

EpsilonResiduals ResidualsEps(int k, double eps) {
  if (k < 3) throw std::invalid_argument("epsilon residuals need k >= 3");
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  const double one_eps = 1.0 + eps;
  EpsilonResiduals r;
  r.q1 = std::sqrt(2.0) / std::sqrt(one_eps) - eps / one_eps - one_eps;
  r.q2 = 1.0 / (k - 1) + (1.0 - eps) / one_eps - one_eps;
  double product = 1.0;
  for (int j = 2; j <= k - 1; ++j) product *= 1.0 + 1.0 / (j * one_eps);
  r.q3 = product / (k - 1) - (1.0 + 2.0 * eps) / 2.0;
  return r;
}

double EpsilonDefault(int k) {
  if (k < 3) throw std::invalid_argument("epsilon needs k >= 3");
  return 1.0 / (static_cast<double>(k) * k);
}

double EpsilonMax(int k, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  double lo = EpsilonDefault(k);
  double hi = 1.0;
  if (ResidualsEps(k, hi).feasible()) return hi;
  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (ResidualsEps(k, mid).feasible()) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace ksubmax
