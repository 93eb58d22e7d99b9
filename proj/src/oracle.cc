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

#include "ksubmax/oracle.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ksubmax {
namespace {

void CheckBlock(const Block& block, Dims dims) {
  if (!(block.scale >= 0.0)) {
    throw std::invalid_argument("block scale must be nonnegative");
  }
  auto check_element = [&](int e) {
    if (e < 0 || e >= dims.n) {
      throw std::invalid_argument("block references element " +
                                  std::to_string(e) + " outside [0, n)");
    }
  };
  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, UnaryBlock>) {
          check_element(body.element);
          if (static_cast<int>(body.weights.size()) != dims.k) {
            throw std::invalid_argument("unary block needs k weights");
          }
        } else if constexpr (std::is_same_v<T, CoverageBlock>) {
          if (static_cast<int>(body.covers.size()) != dims.n) {
            throw std::invalid_argument("coverage block needs n cover lists");
          }
          const int items = static_cast<int>(body.item_weights.size());
          for (double w : body.item_weights) {
            if (!(w >= 0.0)) {
              throw std::invalid_argument("coverage item weights must be >= 0");
            }
          }
          for (const auto& per_label : body.covers) {
            if (static_cast<int>(per_label.size()) != dims.k) {
              throw std::invalid_argument("coverage block needs k cover sets");
            }
            for (const auto& set : per_label) {
              for (int item : set) {
                if (item < 0 || item >= items) {
                  throw std::invalid_argument("coverage item out of range");
                }
              }
            }
          }
        } else if constexpr (std::is_same_v<T, TableBlock>) {
          if (body.elements.empty()) {
            throw std::invalid_argument("table block needs elements");
          }
          std::vector<int> sorted = body.elements;
          std::sort(sorted.begin(), sorted.end());
          if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("table block elements must be distinct");
          }
          for (int e : sorted) check_element(e);
          const auto points =
              PointCount(Dims(static_cast<int>(body.elements.size()), dims.k));
          if (!points || *points != body.values.size()) {
            throw std::invalid_argument("table block needs (k+1)^|S| values");
          }
        }
      },
      block.body);
}

}  // namespace

OracleSpec::OracleSpec(Dims dims, ExplicitTable table)
    : dims_(dims), body_(std::move(table)) {
  const auto points = PointCount(dims_);
  if (!points || *points != std::get<ExplicitTable>(body_).values.size()) {
    throw std::invalid_argument("explicit table must cover all (k+1)^n points");
  }
}

OracleSpec::OracleSpec(Dims dims, BlockSum blocks)
    : dims_(dims), body_(std::move(blocks)) {
  for (const Block& block : std::get<BlockSum>(body_).blocks) {
    CheckBlock(block, dims_);
  }
}

double BlockValue(const Block& block, const Assignment& x) {
  const double raw = std::visit(
      [&](const auto& body) -> double {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, UnaryBlock>) {
          const Label l = x[body.element];
          return l == kUnassigned ? 0.0 : body.weights[l - 1];
        } else if constexpr (std::is_same_v<T, CoverageBlock>) {
          const int k = x.dims().k;
          std::vector<char> covered(body.item_weights.size());
          double total = 0.0;
          for (Label i = 1; i <= k; ++i) {
            std::fill(covered.begin(), covered.end(), 0);
            for (int e = 0; e < x.size(); ++e) {
              if (x[e] != i) continue;
              for (int item : body.covers[e][i - 1]) covered[item] = 1;
            }
            for (std::size_t u = 0; u < covered.size(); ++u) {
              if (covered[u]) total += body.item_weights[u];
            }
          }
          return total;
        } else if constexpr (std::is_same_v<T, TableBlock>) {
          const std::size_t radix = static_cast<std::size_t>(x.dims().k) + 1;
          std::size_t index = 0;
          for (int e : body.elements) index = index * radix + x[e];
          return body.values[index];
        } else {
          return body.value;
        }
      },
      block.body);
  return block.scale * raw;
}

double OracleSpec::Value(const Assignment& x) const {
  if (x.dims() != dims_) throw DimensionError("assignment dims do not match");
  if (const auto* table = std::get_if<ExplicitTable>(&body_)) {
    return table->values[IndexOf(x)];
  }
  double total = 0.0;
  for (const Block& block : std::get<BlockSum>(body_).blocks) {
    total += BlockValue(block, x);
  }
  return total;
}

OracleSpec OracleSpec::Materialize(std::uint64_t guard) const {
  if (is_table()) return *this;
  const auto points = PointCount(dims_);
  CheckGuard(points, guard, "materialize");
  ExplicitTable table;
  table.values.resize(*points);
  for (std::uint64_t idx = 0; idx < *points; ++idx) {
    table.values[idx] = Value(FromIndex(dims_, idx));
  }
  return OracleSpec(dims_, std::move(table));
}

double CountingOracle::Evaluate(const Assignment& x) {
  if (x.dims() != spec_->dims()) {
    throw DimensionError("assignment dims do not match oracle");
  }
  if (cached_point_.has_value() && *cached_point_ == x) return cached_value_;
  ++queries_;
  cached_value_ = spec_->Value(x);
  cached_point_ = x;
  return cached_value_;
}

std::string ToString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kNegativeValue:
      return "negative-value";
    case ViolationKind::kLatticeInequality:
      return "lattice-inequality";
    case ViolationKind::kPairwiseMonotonicity:
      return "pairwise-monotonicity";
    case ViolationKind::kOrthantSubmodularity:
      return "orthant-submodularity";
  }
  return "unknown";
}

std::string Violation::Describe() const {
  std::ostringstream out;
  out.precision(17);
  out << ToString(kind) << " at x=" << x.ToString();
  if (y) out << " y=" << y->ToString();
  if (element >= 0) out << " e=" << element;
  if (label_i) out << " i=" << label_i;
  if (label_j) out << " j=" << label_j;
  out << ": " << lhs << " < " << rhs;
  return out.str();
}

namespace {

// Table layout helpers shared by both validators.
class TableView {
 public:
  TableView(Dims dims, const std::vector<double>& values)
      : dims_(dims), values_(values), stride_(dims.n) {
    std::uint64_t s = 1;
    for (int e = dims.n - 1; e >= 0; --e) {
      stride_[e] = s;
      s *= static_cast<std::uint64_t>(dims.k) + 1;
    }
  }

  int Digit(std::uint64_t idx, int e) const {
    return static_cast<int>((idx / stride_[e]) %
                            (static_cast<std::uint64_t>(dims_.k) + 1));
  }
  std::uint64_t Stride(int e) const { return stride_[e]; }
  double operator[](std::uint64_t idx) const { return values_[idx]; }
  std::uint64_t size() const { return values_.size(); }
  Assignment Point(std::uint64_t idx) const { return FromIndex(dims_, idx); }

 private:
  Dims dims_;
  const std::vector<double>& values_;
  std::vector<std::uint64_t> stride_;
};

ValidationReport Fail(Violation v) {
  return ValidationReport{false, std::move(v)};
}

ValidationReport ValidateDirect(Dims dims, const TableView& t) {
  const std::uint64_t points = t.size();
  for (std::uint64_t a = 0; a < points; ++a) {
    for (std::uint64_t b = a + 1; b < points; ++b) {
      std::uint64_t meet = 0;
      std::uint64_t join = 0;
      for (int e = 0; e < dims.n; ++e) {
        const int xa = t.Digit(a, e);
        const int xb = t.Digit(b, e);
        int m = 0;
        int j = 0;
        if (xa == 0 || xb == 0) {
          j = std::max(xa, xb);
        } else if (xa == xb) {
          m = j = xa;
        }
        meet += static_cast<std::uint64_t>(m) * t.Stride(e);
        join += static_cast<std::uint64_t>(j) * t.Stride(e);
      }
      const double lhs = t[a] + t[b];
      const double rhs = t[meet] + t[join];
      if (lhs < rhs - kValueSlack) {
        Violation v{ViolationKind::kLatticeInequality, t.Point(a), t.Point(b)};
        v.lhs = lhs;
        v.rhs = rhs;
        return Fail(std::move(v));
      }
    }
  }
  return {};
}

ValidationReport ValidateCharacterization(Dims dims, const TableView& t) {
  const int k = dims.k;
  std::vector<double> gains(k);
  for (std::uint64_t idx = 0; idx < t.size(); ++idx) {
    for (int e = 0; e < dims.n; ++e) {
      if (t.Digit(idx, e) != 0) continue;
      const double base = t[idx];
      for (int i = 0; i < k; ++i) {
        gains[i] = t[idx + static_cast<std::uint64_t>(i + 1) * t.Stride(e)] - base;
      }
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
          if (gains[i] + gains[j] < -kValueSlack) {
            Violation v{ViolationKind::kPairwiseMonotonicity, t.Point(idx), std::nullopt};
            v.element = e;
            v.label_i = i + 1;
            v.label_j = j + 1;
            v.lhs = gains[i] + gains[j];
            v.rhs = 0.0;
            return Fail(std::move(v));
          }
        }
      }
      // Dominance over every one-step extension on another element.
      for (int f = 0; f < dims.n; ++f) {
        if (f == e || t.Digit(idx, f) != 0) continue;
        for (int j = 1; j <= k; ++j) {
          const std::uint64_t ext = idx + static_cast<std::uint64_t>(j) * t.Stride(f);
          for (int i = 0; i < k; ++i) {
            const double later =
                t[ext + static_cast<std::uint64_t>(i + 1) * t.Stride(e)] - t[ext];
            if (gains[i] < later - kValueSlack) {
              Violation v{ViolationKind::kOrthantSubmodularity, t.Point(idx),
                          t.Point(ext)};
              v.element = e;
              v.label_i = i + 1;
              v.lhs = gains[i];
              v.rhs = later;
              return Fail(std::move(v));
            }
          }
        }
      }
    }
  }
  return {};
}

}  // namespace

ValidationReport ValidateKSubmodularTable(Dims dims,
                                          const std::vector<double>& values,
                                          ValidationMethod method) {
  const auto points = PointCount(dims);
  if (!points || *points != values.size()) {
    throw std::invalid_argument("table size does not match dims");
  }
  TableView view(dims, values);
  return method == ValidationMethod::kDirect
             ? ValidateDirect(dims, view)
             : ValidateCharacterization(dims, view);
}

ValidationReport Validate(const OracleSpec& spec, ValidationMethod method,
                          std::uint64_t guard) {
  const OracleSpec table = spec.Materialize(guard);
  CheckGuard(PointCount(spec.dims()), guard, "validate");
  const auto& values = table.table().values;
  for (std::uint64_t idx = 0; idx < values.size(); ++idx) {
    if (values[idx] < -kValueSlack) {
      Violation v{ViolationKind::kNegativeValue, FromIndex(spec.dims(), idx), std::nullopt};
      v.lhs = values[idx];
      v.rhs = 0.0;
      return Fail(std::move(v));
    }
  }
  return ValidateKSubmodularTable(spec.dims(), values, method);
}

bool IsMonotone(const OracleSpec& spec, std::uint64_t guard) {
  const OracleSpec table = spec.Materialize(guard);
  TableView t(spec.dims(), table.table().values);
  for (std::uint64_t idx = 0; idx < t.size(); ++idx) {
    for (int e = 0; e < spec.dims().n; ++e) {
      if (t.Digit(idx, e) != 0) continue;
      for (int i = 1; i <= spec.dims().k; ++i) {
        if (t[idx + static_cast<std::uint64_t>(i) * t.Stride(e)] - t[idx] <
            -kValueSlack) {
          return false;
        }
      }
    }
  }
  return true;
}

ValueRange ExactRange(const OracleSpec& spec, std::uint64_t guard) {
  const OracleSpec table = spec.Materialize(guard);
  const auto& values = table.table().values;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return ValueRange{*lo, *hi};
}

}  // namespace ksubmax
