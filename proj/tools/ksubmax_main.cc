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

// ksubmax: generate, validate and certify k-submodular instances, run the
// randomized rules, and check the per-step analysis.
//
// Exit status: 0 pass, 1 bound violation or failed check, 2 invalid input,
// 3 enumeration guard exceeded.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ksubmax/bench.h"
#include "ksubmax/epsilon.h"
#include "ksubmax/generator.h"
#include "ksubmax/instance_io.h"
#include "ksubmax/kernel.h"
#include "ksubmax/lemma_lab.h"
#include "ksubmax/oracle.h"
#include "ksubmax/solvers.h"

namespace ksubmax {
namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitGuard = 3;

struct Options {
  int k = 3;
  int n = 4;
  int count = 1;
  std::uint64_t seed = 1;
  std::vector<std::string> rules;
  std::string eps = "default";
  std::string order = "given";
  std::string out;
  std::string format = "csv";
  std::vector<std::string> inputs;
  bool monotone = false;
  std::string mode = "blocks";
  std::string method = "both";
  bool trace = false;
  std::int64_t scenarios = 100000;
  std::vector<int> ks = {3, 4, 5};
  int k_min = 3;
  int k_max = 64;
  double tol = kBisectTolerance;
};

void Emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + opt.out);
  file << text;
}

ElementOrder MakeElementOrder(const Options& opt) {
  if (opt.order == "given") return ElementOrder::Given();
  return ElementOrder::Shuffled(opt.seed);
}

std::string InstanceName(int index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "instance_%04d.json", index);
  return buffer;
}

int CmdGenerate(const Options& opt) {
  const Dims dims(opt.n, opt.k);
  std::filesystem::create_directories(opt.out);
  for (int i = 0; i < opt.count; ++i) {
    OracleSpec spec = GenerateSuiteInstance(dims, opt.monotone, opt.seed,
                                            static_cast<std::uint64_t>(i));
    if (opt.mode == "table") spec = spec.Materialize();
    const std::string path = (std::filesystem::path(opt.out) / InstanceName(i)).string();
    WriteInstanceFile(path, spec);
    std::cout << path << ": valid\n";
  }
  return kExitPass;
}

int CmdValidate(const Options& opt) {
  bool all_valid = true;
  for (const std::string& path : opt.inputs) {
    const OracleSpec spec = ReadInstanceFile(path);
    std::vector<ValidationMethod> methods;
    if (opt.method != "characterization") methods.push_back(ValidationMethod::kDirect);
    if (opt.method != "direct") methods.push_back(ValidationMethod::kCharacterization);
    for (ValidationMethod m : methods) {
      const ValidationReport report = Validate(spec, m);
      const char* name = m == ValidationMethod::kDirect ? "direct" : "characterization";
      if (report.ok) {
        std::cout << path << ": " << name << " ok\n";
      } else {
        all_valid = false;
        std::cout << path << ": " << name << " INVALID " << report.counterexample->Describe()
                  << '\n';
      }
    }
  }
  return all_valid ? kExitPass : kExitInvalid;
}

std::vector<std::pair<std::string, OracleSpec>> LoadOrGenerate(const Options& opt) {
  std::vector<std::pair<std::string, OracleSpec>> instances;
  if (!opt.inputs.empty()) {
    for (const std::string& path : opt.inputs) {
      instances.emplace_back(std::filesystem::path(path).stem().string(),
                             ReadInstanceFile(path));
    }
    return instances;
  }
  const Dims dims(opt.n, opt.k);
  for (int i = 0; i < opt.count; ++i) {
    instances.emplace_back("gen_" + std::to_string(i),
                           GenerateSuiteInstance(dims, opt.monotone, opt.seed,
                                                 static_cast<std::uint64_t>(i)));
  }
  return instances;
}

std::vector<BenchRecord> CertifyAll(const Options& opt) {
  const EpsChoice eps = EpsChoice::Parse(opt.eps);
  const ElementOrder order = MakeElementOrder(opt);
  std::vector<BenchRecord> records;
  for (const auto& [id, spec] : LoadOrGenerate(opt)) {
    for (const std::string& name : opt.rules) {
      const ProbabilityRule rule = MakeRule(name, spec.dims().k, eps);
      records.push_back(Certify(spec, id, rule, order, opt.seed));
    }
  }
  return records;
}

int CmdCertify(const Options& opt) {
  const std::vector<BenchRecord> records = CertifyAll(opt);
  Emit(opt, opt.format == "json" ? RecordsToJson(records).dump(2) + "\n"
                                 : RecordsToCsv(records));
  int violations = 0;
  for (const BenchRecord& r : records) violations += r.violation();
  std::cerr << records.size() << " records, " << violations << " below bound\n";
  return violations == 0 ? kExitPass : kExitViolation;
}

int CmdRun(const Options& opt) {
  if (opt.inputs.size() != 1) throw std::invalid_argument("run takes exactly one --in file");
  const OracleSpec spec = ReadInstanceFile(opt.inputs.front());
  const ProbabilityRule rule =
      MakeRule(opt.rules.front(), spec.dims().k, EpsChoice::Parse(opt.eps));
  CountingOracle oracle(spec);
  const RunReport report = RunRandomized(oracle, rule, opt.seed, MakeElementOrder(opt),
                                         opt.trace);
  nlohmann::json out = {{"rule", rule.Name()},
                        {"seed", opt.seed},
                        {"assignment", report.assignment.labels()},
                        {"value", report.value},
                        {"queries", report.queries}};
  if (opt.trace) {
    nlohmann::json steps = nlohmann::json::array();
    for (const TraceStep& s : report.trace) {
      steps.push_back({{"element", s.element},
                       {"y", s.y},
                       {"y_sorted", s.y_sorted},
                       {"branch", s.branch.Name()},
                       {"p", s.p},
                       {"label", s.label}});
    }
    out["trace"] = steps;
  }
  Emit(opt, out.dump(2) + "\n");
  return kExitPass;
}

int CmdLemmas(const Options& opt) {
  bool ok = true;
  nlohmann::json suites = nlohmann::json::array();
  for (const ResidualSuiteConfig& config :
       StandardResidualSuites(opt.scenarios, opt.seed, opt.ks)) {
    const ResidualSuiteResult result = RunResidualSuite(config);
    ok = ok && result.passed();
    suites.push_back(SuiteResultToJson(result));
  }
  const TightnessReport tight = TightnessWitnessK3();
  ok = ok && tight.equality_holds() && !tight.search.satisfiable();
  nlohmann::json eps = nlohmann::json::array();
  for (int k = 3; k <= 64; ++k) {
    const EpsilonResiduals q = ResidualsEps(k, EpsilonDefault(k));
    const double eps_max = EpsilonMax(k, opt.tol);
    const bool feasible = q.feasible() && eps_max >= EpsilonDefault(k);
    ok = ok && feasible;
    eps.push_back({{"k", k}, {"q1", q.q1}, {"q2", q.q2}, {"q3", q.q3},
                   {"eps_max", eps_max}, {"passed", feasible}});
  }
  if (opt.format == "json") {
    const nlohmann::json out = {{"suites", suites},
                                {"tightness", TightnessToJson(tight)},
                                {"epsilon", eps},
                                {"passed", ok}};
    Emit(opt, out.dump(2) + "\n");
  } else {
    std::string csv = "suite,k,c,count,branch,branch_count,min_residual,passed\n";
    for (const auto& s : suites) {
      for (const auto& b : s["branches"]) {
        csv += s["name"].get<std::string>() + "," + std::to_string(s["k"].get<int>()) + "," +
               FormatNumber(s["c"].get<double>()) + "," +
               std::to_string(s["count"].get<std::int64_t>()) + "," +
               b["branch"].get<std::string>() + "," +
               std::to_string(b["count"].get<std::int64_t>()) + "," +
               FormatNumber(b["min_residual"].get<double>()) + "," +
               (s["passed"].get<bool>() ? "1" : "0") + "\n";
      }
    }
    csv += "tightness,3," + FormatNumber(tight.c_prime) + ",2,equality,2," +
           FormatNumber(-std::max(tight.gap1, tight.gap2)) + "," +
           (tight.equality_holds() ? "1" : "0") + "\n";
    csv += "tightness_grid,3," + FormatNumber(tight.search.c) + "," +
           std::to_string(tight.search.points) + ",grid," +
           std::to_string(tight.search.points) + "," +
           FormatNumber(-tight.search.best_violation) + "," +
           (tight.search.satisfiable() ? "0" : "1") + "\n";
    Emit(opt, csv);
  }
  std::cerr << (ok ? "all lemma checks passed\n" : "lemma checks FAILED\n");
  return ok ? kExitPass : kExitViolation;
}

int CmdEpsilon(const Options& opt) {
  const int k_max = opt.k_max < opt.k ? opt.k : opt.k_max;
  nlohmann::json rows = nlohmann::json::array();
  std::string csv = "k,eps_default,q1,q2,q3,eps_max,ratio_default,ratio_eps_max\n";
  for (int k = opt.k; k <= k_max; ++k) {
    const double e0 = EpsilonDefault(k);
    const EpsilonResiduals q = ResidualsEps(k, e0);
    const double e1 = EpsilonMax(k, opt.tol);
    const double r0 = (1.0 + e0) / (2.0 + e0);
    const double r1 = (1.0 + e1) / (2.0 + e1);
    rows.push_back({{"k", k}, {"eps_default", e0}, {"q1", q.q1}, {"q2", q.q2},
                    {"q3", q.q3}, {"eps_max", e1}, {"ratio_default", r0},
                    {"ratio_eps_max", r1}});
    csv += std::to_string(k) + "," + FormatNumber(e0) + "," + FormatNumber(q.q1) + "," +
           FormatNumber(q.q2) + "," + FormatNumber(q.q3) + "," + FormatNumber(e1) + "," +
           FormatNumber(r0) + "," + FormatNumber(r1) + "\n";
  }
  Emit(opt, opt.format == "json" ? rows.dump(2) + "\n" : csv);
  return kExitPass;
}

int CmdRatioTable(const Options& opt) {
  std::vector<RatioRow> rows = RatioTable(opt.k_min, opt.k_max, opt.tol);
  bool ok = true;
  if (!opt.inputs.empty()) {
    const std::vector<BenchRecord> records = CertifyAll(opt);
    for (const BenchRecord& r : records) ok = ok && !r.violation();
    AttachMeasured(rows, records);
  }
  Emit(opt, opt.format == "json" ? RatioTableToJson(rows).dump(2) + "\n"
                                 : RatioTableToCsv(rows));
  return ok ? kExitPass : kExitViolation;
}

int Main(int argc, char** argv) {
  CLI::App app{"Randomized k-submodular maximization toolkit"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::string> rule_names = {"monotone", "k3", "general", "uniform"};
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opt.seed, "Master seed")->capture_default_str();
    cmd->add_option("--out", opt.out, "Output path (stdout when omitted)");
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };
  auto add_instances = [&](CLI::App* cmd) {
    cmd->add_option("--k", opt.k, "Number of labels")->check(CLI::Range(1, 64));
    cmd->add_option("--n", opt.n, "Number of elements")->check(CLI::Range(1, 64));
    cmd->add_option("--count", opt.count, "Number of generated instances")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--monotone", opt.monotone, "Generate monotone instances");
  };
  auto add_rules = [&](CLI::App* cmd, bool many) {
    auto* rule = many ? cmd->add_option("--rule", opt.rules, "Rules (repeatable)")
                      : cmd->add_option("--rule", opt.rules, "Rule");
    rule->check(CLI::IsMember(rule_names));
    if (!many) rule->expected(1);
    cmd->add_option("--eps", opt.eps, "default, bisect or a value")->capture_default_str();
    cmd->add_option("--order", opt.order, "Element order")
        ->check(CLI::IsMember({"given", "shuffle"}))
        ->capture_default_str();
  };

  auto* generate = app.add_subcommand("generate", "Write validated instance files");
  add_instances(generate);
  add_common(generate);
  generate->get_option("--out")->required()->description("Output directory");
  generate->add_option("--mode", opt.mode, "Instance body")
      ->check(CLI::IsMember({"blocks", "table"}))
      ->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Check instance files exhaustively");
  validate->add_option("files", opt.inputs, "Instance files")->required();
  validate->add_option("--method", opt.method, "Validator")
      ->check(CLI::IsMember({"direct", "characterization", "both"}))
      ->capture_default_str();

  auto* certify = app.add_subcommand("certify", "Exact ratios against the guarantees");
  add_instances(certify);
  add_common(certify);
  add_rules(certify, true);
  certify->add_option("--in", opt.inputs, "Instance files (otherwise generate)");

  auto* run = app.add_subcommand("run", "One sampled run");
  add_common(run);
  add_rules(run, false);
  run->add_option("--in", opt.inputs, "Instance file")->required()->expected(1);
  run->add_flag("--trace", opt.trace, "Include the per-step trace");

  auto* lemmas = app.add_subcommand("lemmas", "Per-step inequality suites");
  add_common(lemmas);
  lemmas->add_option("--count", opt.scenarios, "Scenarios per suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  lemmas->add_option("--k", opt.ks, "Label counts for the general suites")
      ->check(CLI::Range(3, 64));
  lemmas->add_option("--tol", opt.tol, "Bisection tolerance")->capture_default_str();

  auto* epsilon = app.add_subcommand("epsilon", "Residuals and largest feasible epsilon");
  add_common(epsilon);
  epsilon->add_option("--k", opt.k, "First k")->check(CLI::Range(3, 64));
  epsilon->add_option("--k-max", opt.k_max, "Last k (defaults to --k)");
  epsilon->add_option("--tol", opt.tol, "Bisection tolerance")->capture_default_str();

  auto* ratio = app.add_subcommand("ratio-table", "Guarantee versus k");
  add_common(ratio);
  add_rules(ratio, true);
  ratio->add_option("--k-min", opt.k_min, "First k")->check(CLI::Range(3, 64));
  ratio->add_option("--k-max", opt.k_max, "Last k")->check(CLI::Range(3, 64));
  ratio->add_option("--in", opt.inputs, "Instance files for measured ratios");
  ratio->add_option("--tol", opt.tol, "Bisection tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInvalid;
  }
  if (opt.rules.empty()) opt.rules = {"general"};
  if (epsilon->parsed() && epsilon->count("--k-max") == 0) opt.k_max = opt.k;

  try {
    if (generate->parsed()) return CmdGenerate(opt);
    if (validate->parsed()) return CmdValidate(opt);
    if (certify->parsed()) return CmdCertify(opt);
    if (run->parsed()) return CmdRun(opt);
    if (lemmas->parsed()) return CmdLemmas(opt);
    if (epsilon->parsed()) return CmdEpsilon(opt);
    if (ratio->parsed()) return CmdRatioTable(opt);
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace
}  // namespace ksubmax

int main(int argc, char** argv) { return ksubmax::Main(argc, argv); }
