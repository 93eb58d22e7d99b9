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

// Experiment plumbing shared by the command-line tool and the acceptance
// suite: rule selection, exact ratio certification, the ratio-versus-k
// table and CSV/JSON emission.
//
// Seeds: instance i of a generated suite uses DeriveSeed(master, i), so
// growing a suite never changes its existing members.

#ifndef KSUBMAX_BENCH_H_
#define KSUBMAX_BENCH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ksubmax/lemma_lab.h"
#include "ksubmax/oracle.h"
#include "ksubmax/rules.h"
#include "ksubmax/solvers.h"

namespace ksubmax {

// Ratios may undershoot their bound by this much before counting as a
// violation.
inline constexpr double kRatioTolerance = 1e-9;

enum class EpsMode { kDefault, kBisect, kExplicit };

struct EpsChoice {
  EpsMode mode = EpsMode::kDefault;
  double value = 0.0;  // used by kExplicit

  // "default", "bisect" or a positive number.
  static EpsChoice Parse(const std::string& text);
  double Resolve(int k) const;
};

// Bisection tolerance behind EpsMode::kBisect.
inline constexpr double kBisectTolerance = 1e-12;

// name is one of monotone, k3, general, uniform.
ProbabilityRule MakeRule(const std::string& name, int k, const EpsChoice& eps = {});

// "%.12g".
std::string FormatNumber(double v);

struct BenchRecord {
  std::string instance_id;
  int k = 0;
  int n = 0;
  std::string rule;
  std::optional<double> eps;
  double expectation = 0.0;
  double opt = 0.0;
  std::optional<double> ratio;  // absent when OPT = 0
  std::optional<double> bound;  // absent when the rule has no guarantee here
  std::int64_t queries = 0;     // of one sampled run
  double wall_seconds = 0.0;

  bool violation() const {
    return ratio && bound && *ratio < *bound - kRatioTolerance;
  }
};

// Exact ratio of one rule on one instance. The monotone rule's bound is
// only attached when the instance is monotone.
BenchRecord Certify(const OracleSpec& spec, const std::string& instance_id,
                    const ProbabilityRule& rule, const ElementOrder& order = ElementOrder::Given(),
                    std::uint64_t run_seed = 0, std::uint64_t guard = DefaultGuard());

std::string RecordsToCsv(const std::vector<BenchRecord>& records);
nlohmann::json RecordsToJson(const std::vector<BenchRecord>& records);

// Generated suite member i (see the seed note above).
OracleSpec GenerateSuiteInstance(Dims dims, bool monotone, std::uint64_t master_seed,
                                 std::uint64_t index, std::uint64_t guard = DefaultGuard());

struct RatioRow {
  int k = 0;
  double monotone = 0.0;          // k/(2k-1)
  double nonmonotone_half = 0.5;  // prior nonmonotone guarantee
  double prior_sqrt = 0.0;        // 1/(1 + max(1, sqrt((k-1)/4)))
  double general = 0.0;           // (k²+1)/(2k²+1)
  double eps_max = 0.0;
  double general_eps_max = 0.0;   // (1+ε̂)/(2+ε̂)
  std::optional<double> k3;       // (√17-3)/2, on the k = 3 row only
  std::optional<double> measured_min;  // smallest exact ratio supplied for k
};

std::vector<RatioRow> RatioTable(int k_min, int k_max, double tol = kBisectTolerance);
// Fills measured_min with the smallest ratio among records with that k.
void AttachMeasured(std::vector<RatioRow>& rows, const std::vector<BenchRecord>& records);
std::string RatioTableToCsv(const std::vector<RatioRow>& rows);
nlohmann::json RatioTableToJson(const std::vector<RatioRow>& rows);

nlohmann::json SuiteResultToJson(const ResidualSuiteResult& result);
nlohmann::json TightnessToJson(const TightnessReport& report);

}  // namespace ksubmax

#endif  // KSUBMAX_BENCH_H_
