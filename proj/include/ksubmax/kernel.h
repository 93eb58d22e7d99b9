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

// Ground set, assignments and the k-submodular lattice operations.
//
// An assignment is a point of {0,1,...,k}^V stored as a dense label array.
// Elements are 0-based; labels are 1..k with 0 meaning "unassigned".

#ifndef KSUBMAX_KERNEL_H_
#define KSUBMAX_KERNEL_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ksubmax {

using Label = int;
inline constexpr Label kUnassigned = 0;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an exhaustive enumeration would exceed the configured guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dims {
  int n = 1;  // |V|
  int k = 1;  // number of labels

  Dims() = default;
  Dims(int n_in, int k_in);

  auto operator<=>(const Dims&) const = default;
};

class Assignment {
 public:
  Assignment() : Assignment(Dims()) {}
  explicit Assignment(Dims dims);  // the all-zero assignment
  Assignment(Dims dims, std::vector<Label> labels);

  const Dims& dims() const { return dims_; }
  int size() const { return dims_.n; }
  Label operator[](int e) const { return labels_[e]; }
  Label at(int e) const;
  void set(int e, Label label);
  std::span<const Label> labels() const { return labels_; }

  bool is_assigned(int e) const { return labels_[e] != kUnassigned; }
  int support_size() const;
  bool full_support() const { return support_size() == dims_.n; }

  // The set view (X_1, ..., X_k); entry i-1 lists the elements labelled i.
  std::vector<std::vector<int>> Sets() const;

  // Copy with element e relabelled.
  Assignment With(int e, Label label) const;

  std::string ToString() const;

  bool operator==(const Assignment& other) const = default;
  // Lexicographic order on the label arrays (dims compared first).
  auto operator<=>(const Assignment& other) const = default;

 private:
  Dims dims_;
  std::vector<Label> labels_;
};

using MarginalVector = std::vector<double>;

Assignment Meet(const Assignment& x, const Assignment& y);
Assignment Join(const Assignment& x, const Assignment& y);
// x ⪯ y: every label of x is kept by y.
bool Precedes(const Assignment& x, const Assignment& y);

// Number of points (k+1)^n, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> PointCount(Dims dims);
// Number of full assignments k^n, or nullopt on overflow.
std::optional<std::uint64_t> LeafCount(Dims dims);

// Mixed-radix index with element 0 most significant and radix k+1.
std::uint64_t IndexOf(const Assignment& x);
Assignment FromIndex(Dims dims, std::uint64_t index);

// Enumeration guard: 10^7 unless the KSUBMAX_GUARD environment variable
// holds a positive integer.
std::uint64_t DefaultGuard();
// Throws GuardExceeded when `count` is absent (overflowed) or above guard.
void CheckGuard(std::optional<std::uint64_t> count, std::uint64_t guard,
                const std::string& what);

// (Δ_{e,1}f(x), ..., Δ_{e,k}f(x)). Issues k+1 calls to `value`, or k when
// `fx` already holds f(x).
template <typename ValueFn>
MarginalVector MarginalGains(ValueFn&& value, const Assignment& x, int e,
                             std::optional<double> fx = std::nullopt) {
  if (e < 0 || e >= x.size()) {
    throw DimensionError("element index out of range");
  }
  if (x.is_assigned(e)) {
    throw std::invalid_argument("element " + std::to_string(e) +
                                " is already assigned");
  }
  const double base = fx.has_value() ? *fx : value(x);
  const int k = x.dims().k;
  MarginalVector gains(k);
  Assignment probe = x;
  for (Label i = 1; i <= k; ++i) {
    probe.set(e, i);
    gains[i - 1] = value(probe) - base;
  }
  return gains;
}

}  // namespace ksubmax

#endif  // KSUBMAX_KERNEL_H_
