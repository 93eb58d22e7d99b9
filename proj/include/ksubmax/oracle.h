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

// Nonnegative k-submodular functions behind a value oracle.
//
// An OracleSpec is either an explicit table over all (k+1)^n points or a
// nonnegatively weighted sum of blocks that are each k-submodular. The
// k-submodular inequalities are linear in f, so block sums stay valid.

#ifndef KSUBMAX_ORACLE_H_
#define KSUBMAX_ORACLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ksubmax/kernel.h"

namespace ksubmax {

// Slack used by every inequality check on function values.
inline constexpr double kValueSlack = 1e-12;

// w_i for assigning `element` label i. Valid when w_i + w_j >= 0 (i != j),
// which also implies at most one negative weight.
struct UnaryBlock {
  int element = 0;
  std::vector<double> weights;  // size k

  bool operator==(const UnaryBlock&) const = default;
};

// f(x) = sum_i g_i(X_i), g_i(X) = total weight of items covered by
// {covers[e][i-1] : e in X}. Each g_i is monotone submodular.
struct CoverageBlock {
  std::vector<double> item_weights;
  std::vector<std::vector<std::vector<int>>> covers;  // [element][label-1]

  bool operator==(const CoverageBlock&) const = default;
};

// A validated table on a few elements; other elements are ignored.
struct TableBlock {
  std::vector<int> elements;
  std::vector<double> values;  // mixed radix over `elements`, first most
                               // significant, radix k+1

  bool operator==(const TableBlock&) const = default;
};

struct ConstantBlock {
  double value = 0.0;

  bool operator==(const ConstantBlock&) const = default;
};

struct Block {
  std::variant<UnaryBlock, CoverageBlock, TableBlock, ConstantBlock> body;
  double scale = 1.0;

  bool operator==(const Block&) const = default;
};

struct ExplicitTable {
  std::vector<double> values;  // indexed by IndexOf(x)

  bool operator==(const ExplicitTable&) const = default;
};

struct BlockSum {
  std::vector<Block> blocks;

  bool operator==(const BlockSum&) const = default;
};

class OracleSpec {
 public:
  OracleSpec(Dims dims, ExplicitTable table);
  OracleSpec(Dims dims, BlockSum blocks);

  const Dims& dims() const { return dims_; }
  bool is_table() const { return std::holds_alternative<ExplicitTable>(body_); }
  const ExplicitTable& table() const { return std::get<ExplicitTable>(body_); }
  const BlockSum& block_sum() const { return std::get<BlockSum>(body_); }

  // f(x) without query accounting.
  double Value(const Assignment& x) const;

  // Explicit table holding the same values. Subject to the guard.
  OracleSpec Materialize(std::uint64_t guard = DefaultGuard()) const;

  bool operator==(const OracleSpec& other) const = default;

 private:
  Dims dims_;
  std::variant<ExplicitTable, BlockSum> body_;
};

double BlockValue(const Block& block, const Assignment& x);

// Single-owner query accounting around a spec. Repeating the most recent
// query is served from a one-entry memo and is not counted.
class CountingOracle {
 public:
  explicit CountingOracle(const OracleSpec& spec) : spec_(&spec) {}

  const OracleSpec& spec() const { return *spec_; }
  const Dims& dims() const { return spec_->dims(); }

  double Evaluate(const Assignment& x);
  std::int64_t queries() const { return queries_; }
  void ResetQueries() { queries_ = 0; }

 private:
  const OracleSpec* spec_;
  std::int64_t queries_ = 0;
  std::optional<Assignment> cached_point_;
  double cached_value_ = 0.0;
};

enum class ValidationMethod {
  kDirect,            // f(x)+f(y) >= f(x⊓y)+f(x⊔y) over all pairs
  kCharacterization,  // pairwise monotone + single-step orthant submodular
};

enum class ViolationKind {
  kNegativeValue,
  kLatticeInequality,
  kPairwiseMonotonicity,
  kOrthantSubmodularity,
};

std::string ToString(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  Assignment x;
  std::optional<Assignment> y;  // second point, when the check uses one
  int element = -1;
  Label label_i = 0;
  Label label_j = 0;
  double lhs = 0.0;  // the violated check is lhs >= rhs
  double rhs = 0.0;

  std::string Describe() const;
};

struct ValidationReport {
  bool ok = true;
  std::optional<Violation> counterexample;
};

// Exhaustive check of nonnegativity and k-submodularity. Returns the first
// violated inequality. Throws GuardExceeded when (k+1)^n > guard.
ValidationReport Validate(const OracleSpec& spec, ValidationMethod method,
                          std::uint64_t guard = DefaultGuard());

// The same two checks on a raw table, skipping nonnegativity.
ValidationReport ValidateKSubmodularTable(Dims dims,
                                          const std::vector<double>& values,
                                          ValidationMethod method);

// True when every marginal gain is >= -kValueSlack.
bool IsMonotone(const OracleSpec& spec, std::uint64_t guard = DefaultGuard());

// Min and max of f over all points.
struct ValueRange {
  double min = 0.0;
  double max = 0.0;
};
ValueRange ExactRange(const OracleSpec& spec,
                      std::uint64_t guard = DefaultGuard());

}  // namespace ksubmax

#endif  // KSUBMAX_ORACLE_H_
