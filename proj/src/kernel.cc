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

#include "ksubmax/kernel.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace ksubmax {

Dims::Dims(int n_in, int k_in) : n(n_in), k(k_in) {
  if (n < 1) throw DimensionError("n must be >= 1");
  if (k < 1) throw DimensionError("k must be >= 1");
}

Assignment::Assignment(Dims dims) : dims_(dims), labels_(dims.n, 0) {}

Assignment::Assignment(Dims dims, std::vector<Label> labels)
    : dims_(dims), labels_(std::move(labels)) {
  if (static_cast<int>(labels_.size()) != dims_.n) {
    throw DimensionError("assignment length " +
                         std::to_string(labels_.size()) + " != n = " +
                         std::to_string(dims_.n));
  }
  for (Label l : labels_) {
    if (l < 0 || l > dims_.k) {
      throw DimensionError("label " + std::to_string(l) + " outside [0, " +
                           std::to_string(dims_.k) + "]");
    }
  }
}

Label Assignment::at(int e) const {
  if (e < 0 || e >= dims_.n) throw DimensionError("element index out of range");
  return labels_[e];
}

void Assignment::set(int e, Label label) {
  if (e < 0 || e >= dims_.n) throw DimensionError("element index out of range");
  if (label < 0 || label > dims_.k) throw DimensionError("label out of range");
  labels_[e] = label;
}

int Assignment::support_size() const {
  int count = 0;
  for (Label l : labels_) count += (l != kUnassigned);
  return count;
}

std::vector<std::vector<int>> Assignment::Sets() const {
  std::vector<std::vector<int>> sets(dims_.k);
  for (int e = 0; e < dims_.n; ++e) {
    if (labels_[e] != kUnassigned) sets[labels_[e] - 1].push_back(e);
  }
  return sets;
}

Assignment Assignment::With(int e, Label label) const {
  Assignment copy = *this;
  copy.set(e, label);
  return copy;
}

std::string Assignment::ToString() const {
  std::ostringstream out;
  out << '(';
  for (int e = 0; e < dims_.n; ++e) {
    if (e) out << ',';
    out << labels_[e];
  }
  out << ')';
  return out.str();
}

namespace {

void RequireSameDims(const Assignment& x, const Assignment& y) {
  if (x.dims() != y.dims()) {
    throw DimensionError("assignments have different dimensions");
  }
}

}  // namespace

Assignment Meet(const Assignment& x, const Assignment& y) {
  RequireSameDims(x, y);
  std::vector<Label> out(x.size());
  for (int e = 0; e < x.size(); ++e) {
    out[e] = (x[e] == y[e]) ? x[e] : kUnassigned;
  }
  return Assignment(x.dims(), std::move(out));
}

Assignment Join(const Assignment& x, const Assignment& y) {
  RequireSameDims(x, y);
  std::vector<Label> out(x.size());
  for (int e = 0; e < x.size(); ++e) {
    if (x[e] == kUnassigned || y[e] == kUnassigned) {
      out[e] = std::max(x[e], y[e]);
    } else {
      // Conflicting labels cancel.
      out[e] = (x[e] == y[e]) ? x[e] : kUnassigned;
    }
  }
  return Assignment(x.dims(), std::move(out));
}

bool Precedes(const Assignment& x, const Assignment& y) {
  RequireSameDims(x, y);
  for (int e = 0; e < x.size(); ++e) {
    if (x[e] != kUnassigned && x[e] != y[e]) return false;
  }
  return true;
}

namespace {

std::optional<std::uint64_t> Power(std::uint64_t base, int exponent) {
  std::uint64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
    result *= base;
  }
  return result;
}

}  // namespace

std::optional<std::uint64_t> PointCount(Dims dims) {
  return Power(static_cast<std::uint64_t>(dims.k) + 1, dims.n);
}

std::optional<std::uint64_t> LeafCount(Dims dims) {
  return Power(static_cast<std::uint64_t>(dims.k), dims.n);
}

std::uint64_t IndexOf(const Assignment& x) {
  const std::uint64_t radix = static_cast<std::uint64_t>(x.dims().k) + 1;
  std::uint64_t index = 0;
  for (int e = 0; e < x.size(); ++e) {
    index = index * radix + static_cast<std::uint64_t>(x[e]);
  }
  return index;
}

Assignment FromIndex(Dims dims, std::uint64_t index) {
  const std::uint64_t radix = static_cast<std::uint64_t>(dims.k) + 1;
  std::vector<Label> labels(dims.n);
  for (int e = dims.n - 1; e >= 0; --e) {
    labels[e] = static_cast<Label>(index % radix);
    index /= radix;
  }
  if (index != 0) throw DimensionError("index out of range for dims");
  return Assignment(dims, std::move(labels));
}

std::uint64_t DefaultGuard() {
  constexpr std::uint64_t kDefault = 10'000'000;
  const char* env = std::getenv("KSUBMAX_GUARD");
  if (env == nullptr) return kDefault;
  std::string_view text(env);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    return kDefault;
  }
  return value;
}

void CheckGuard(std::optional<std::uint64_t> count, std::uint64_t guard,
                const std::string& what) {
  if (!count.has_value() || *count > guard) {
    throw GuardExceeded(what + ": enumeration size " +
                        (count ? std::to_string(*count) : std::string("overflow")) +
                        " exceeds guard " + std::to_string(guard) +
                        " (set KSUBMAX_GUARD to raise it)");
  }
}

}  // namespace ksubmax
