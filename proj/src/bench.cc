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

#include "ksubmax/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "ksubmax/epsilon.h"
#include "ksubmax/generator.h"
#include "ksubmax/rng.h"

namespace ksubmax {
namespace {

std::string Optional(const std::optional<double>& v) {
  return v ? FormatNumber(*v) : std::string();
}

nlohmann::json OptionalJson(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

EpsChoice EpsChoice::Parse(const std::string& text) {
  if (text == "default") return {EpsMode::kDefault, 0.0};
  if (text == "bisect") return {EpsMode::kBisect, 0.0};
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(value > 0.0)) {
    throw std::invalid_argument("--eps must be default, bisect or a positive number, got '" +
                                text + "'");
  }
  return {EpsMode::kExplicit, value};
}

double EpsChoice::Resolve(int k) const {
  switch (mode) {
    case EpsMode::kDefault:
      return EpsilonDefault(k);
    case EpsMode::kBisect:
      return EpsilonMax(k, kBisectTolerance);
    case EpsMode::kExplicit:
      return value;
  }
  return EpsilonDefault(k);
}

ProbabilityRule MakeRule(const std::string& name, int k, const EpsChoice& eps) {
  if (name == "monotone") return ProbabilityRule::Monotone();
  if (name == "k3") return ProbabilityRule::KThree();
  if (name == "uniform") return ProbabilityRule::Uniform();
  if (name == "general") {
    if (k < 3) throw RuleCompatibilityError("general rule requires k >= 3");
    return ProbabilityRule::GeneralK(eps.Resolve(k));
  }
  throw std::invalid_argument("unknown rule '" + name + "'");
}

std::string FormatNumber(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

BenchRecord Certify(const OracleSpec& spec, const std::string& instance_id,
                    const ProbabilityRule& rule, const ElementOrder& order,
                    std::uint64_t run_seed, std::uint64_t guard) {
  const auto start = std::chrono::steady_clock::now();
  const Dims dims = spec.dims();
  rule.CheckCompatible(dims.k);
  BenchRecord r;
  r.instance_id = instance_id;
  r.k = dims.k;
  r.n = dims.n;
  r.rule = rule.Name();
  if (rule.kind() == RuleKind::kGeneralK) r.eps = rule.epsilon();
  r.opt = BruteForceOpt(spec, guard).value;
  r.expectation = ExactExpectedValue(spec, rule, order, guard);
  if (r.opt > 0.0) r.ratio = r.expectation / r.opt;
  if (rule.kind() != RuleKind::kMonotone || IsMonotone(spec, guard)) {
    r.bound = rule.RatioBound(dims.k);
  }
  CountingOracle oracle(spec);
  r.queries = RunRandomized(oracle, rule, run_seed, order).queries;
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string RecordsToCsv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "instance_id,k,n,rule,eps,expectation,opt,ratio,bound,queries,wall_seconds,"
         "violation\n";
  for (const BenchRecord& r : records) {
    out << r.instance_id << ',' << r.k << ',' << r.n << ',' << r.rule << ','
        << Optional(r.eps) << ',' << FormatNumber(r.expectation) << ','
        << FormatNumber(r.opt) << ',' << Optional(r.ratio) << ',' << Optional(r.bound) << ','
        << r.queries << ',' << FormatNumber(r.wall_seconds) << ','
        << (r.violation() ? 1 : 0) << '\n';
  }
  return out.str();
}

nlohmann::json RecordsToJson(const std::vector<BenchRecord>& records) {
  nlohmann::json out = nlohmann::json::array();
  for (const BenchRecord& r : records) {
    out.push_back({{"instance_id", r.instance_id},
                   {"k", r.k},
                   {"n", r.n},
                   {"rule", r.rule},
                   {"eps", OptionalJson(r.eps)},
                   {"expectation", r.expectation},
                   {"opt", r.opt},
                   {"ratio", OptionalJson(r.ratio)},
                   {"bound", OptionalJson(r.bound)},
                   {"queries", r.queries},
                   {"wall_seconds", r.wall_seconds},
                   {"violation", r.violation()}});
  }
  return out;
}

OracleSpec GenerateSuiteInstance(Dims dims, bool monotone, std::uint64_t master_seed,
                                 std::uint64_t index, std::uint64_t guard) {
  const GeneratorConfig config =
      monotone ? GeneratorConfig::Monotone(dims) : GeneratorConfig::Nonmonotone(dims);
  return Generate(config, DeriveSeed(master_seed, index), guard);
}

std::vector<RatioRow> RatioTable(int k_min, int k_max, double tol) {
  if (k_min < 3 || k_max > 64 || k_min > k_max) {
    throw std::invalid_argument("ratio table needs 3 <= k_min <= k_max <= 64");
  }
  std::vector<RatioRow> rows;
  for (int k = k_min; k <= k_max; ++k) {
    RatioRow row;
    row.k = k;
    const double kk = static_cast<double>(k) * k;
    row.monotone = static_cast<double>(k) / (2.0 * k - 1.0);
    row.prior_sqrt = 1.0 / (1.0 + std::max(1.0, std::sqrt((k - 1) / 4.0)));
    row.general = (kk + 1.0) / (2.0 * kk + 1.0);
    row.eps_max = EpsilonMax(k, tol);
    row.general_eps_max = (1.0 + row.eps_max) / (2.0 + row.eps_max);
    if (k == 3) row.k3 = (std::sqrt(17.0) - 3.0) / 2.0;
    rows.push_back(row);
  }
  return rows;
}

void AttachMeasured(std::vector<RatioRow>& rows, const std::vector<BenchRecord>& records) {
  for (RatioRow& row : rows) {
    for (const BenchRecord& r : records) {
      if (r.k != row.k || !r.ratio) continue;
      row.measured_min = row.measured_min ? std::min(*row.measured_min, *r.ratio) : *r.ratio;
    }
  }
}

std::string RatioTableToCsv(const std::vector<RatioRow>& rows) {
  std::ostringstream out;
  out << "k,monotone,nonmonotone_half,prior_sqrt,general,eps_max,general_eps_max,k3,"
         "measured_min\n";
  for (const RatioRow& r : rows) {
    out << r.k << ',' << FormatNumber(r.monotone) << ',' << FormatNumber(r.nonmonotone_half)
        << ',' << FormatNumber(r.prior_sqrt) << ',' << FormatNumber(r.general) << ','
        << FormatNumber(r.eps_max) << ',' << FormatNumber(r.general_eps_max) << ','
        << Optional(r.k3) << ',' << Optional(r.measured_min) << '\n';
  }
  return out.str();
}

nlohmann::json RatioTableToJson(const std::vector<RatioRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const RatioRow& r : rows) {
    out.push_back({{"k", r.k},
                   {"monotone", r.monotone},
                   {"nonmonotone_half", r.nonmonotone_half},
                   {"prior_sqrt", r.prior_sqrt},
                   {"general", r.general},
                   {"eps_max", r.eps_max},
                   {"general_eps_max", r.general_eps_max},
                   {"k3", OptionalJson(r.k3)},
                   {"measured_min", OptionalJson(r.measured_min)}});
  }
  return out;
}

nlohmann::json SuiteResultToJson(const ResidualSuiteResult& result) {
  nlohmann::json branches = nlohmann::json::array();
  for (const BranchStats& b : result.branches) {
    branches.push_back(
        {{"branch", b.branch}, {"count", b.count}, {"min_residual", b.min_residual}});
  }
  nlohmann::json out = {{"name", result.name},
                        {"k", result.k},
                        {"c", result.c},
                        {"count", result.count},
                        {"min_residual", result.min_residual},
                        {"passed", result.passed()},
                        {"branches", branches}};
  if (result.worst) {
    const AdversaryScenario& s = result.worst->scenario;
    out["worst"] = {{"a", s.a},
                    {"y", s.y},
                    {"i_star", s.i_star},
                    {"i_minus", s.i_minus ? nlohmann::json(*s.i_minus) : nlohmann::json()},
                    {"p", result.worst->p},
                    {"branch", result.worst->branch.Name()}};
  }
  return out;
}

nlohmann::json TightnessToJson(const TightnessReport& r) {
  return {{"alpha", r.alpha},
          {"c_prime", r.c_prime},
          {"p", r.p},
          {"branch", r.branch.Name()},
          {"f1", r.f1},
          {"g1", r.g1},
          {"f2", r.f2},
          {"g2", r.g2},
          {"gap1", r.gap1},
          {"gap2", r.gap2},
          {"sum_gap", r.sum_gap},
          {"equality_holds", r.equality_holds()},
          {"search_c", r.search.c},
          {"search_step", r.search.step},
          {"search_points", r.search.points},
          {"search_best_violation", r.search.best_violation},
          {"search_best_p", r.search.best_p},
          {"search_satisfiable", r.search.satisfiable()}};
}

}  // namespace ksubmax
