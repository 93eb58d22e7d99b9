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

// Slack parameter ε of the general-k rule.
//
// ε is feasible for k when all three residuals are nonnegative:
//   q1 = √2/√(1+ε) − ε/(1+ε) − (1+ε)                 (level 0)
//   q2 = 1/(k−1) + (1−ε)/(1+ε) − (1+ε)               (level 1)
//   q3 = (1/(k−1)) Π_{j=2}^{k−1} (1 + 1/(j(1+ε))) − (1+2ε)/2   (levels >= 3)
// Each residual is strictly decreasing in ε, so the feasible set is an
// interval (0, ε̂].

#ifndef KSUBMAX_EPSILON_H_
#define KSUBMAX_EPSILON_H_

namespace ksubmax {

struct EpsilonResiduals {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;

  bool feasible() const { return q1 >= 0.0 && q2 >= 0.0 && q3 >= 0.0; }
};

// Requires k >= 3 and eps > 0.
EpsilonResiduals ResidualsEps(int k, double eps);

// 1/k², always feasible.
double EpsilonDefault(int k);

// Largest feasible ε in (0, 1] to within `tol`, by bisection from the
// feasible 1/k². The result is feasible and result + tol is not.
double EpsilonMax(int k, double tol);

}  // namespace ksubmax

#endif  // KSUBMAX_EPSILON_H_
