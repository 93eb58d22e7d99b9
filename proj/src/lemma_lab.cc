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

#include "ksubmax/lemma_lab.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ksubmax/epsilon.h"
#include "ksubmax/rng.h"

namespace ksubmax {
namespace {

constexpr double kGrid = 1.0 / 64.0;
constexpr double kMagnitude = 2.0;
constexpr double kIdentitySlack = 1e-9;

class Drawer {
 public:
  Drawer(std::uint64_t seed, bool continuous)
      : rng_(Substream(seed, 0)), continuous_(continuous) {}

  // A value in [lo, hi]; on the grid unless continuous.
  double Draw(double lo, double hi) {
    if (hi <= lo) return lo;
    if (continuous_) return lo + UniformUnit(rng_) * (hi - lo);
    const auto first = static_cast<std::int64_t>(std::ceil(lo / kGrid));
    const auto last = static_cast<std::int64_t>(std::floor(hi / kGrid));
    if (first > last) return lo;
    return static_cast<double>(UniformInt(rng_, first, last)) * kGrid;
  }

  std::int64_t Int(std::int64_t lo, std::int64_t hi) { return UniformInt(rng_, lo, hi); }
  double Unit() { return UniformUnit(rng_); }
  bool Coin() { return Int(0, 1) == 1; }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[Int(0, static_cast<std::int64_t>(i) - 1)]);
    }
  }

 private:
  SplitMix64 rng_;
  bool continuous_;
};

// Nonnegative magnitudes for y in the requested shape; strictly positive
// when `positive`.
std::vector<double> DrawMagnitudes(Drawer& d, int k, YShape shape, bool positive,
                                   double chain_eps) {
  const double floor_value = positive ? kGrid : 0.0;
  if (shape == YShape::kMixed) {
    shape = static_cast<YShape>(d.Int(0, chain_eps > 0.0 ? 3 : 2));
  }
  std::vector<double> y(k);
  switch (shape) {
    case YShape::kIndependent:
      for (double& v : y) v = d.Draw(floor_value, kMagnitude);
      break;
    case YShape::kClustered: {
      const double top = d.Draw(0.25, kMagnitude);
      const double center = d.Draw(kGrid, top);
      y[0] = top;
      for (int i = 1; i < k; ++i) {
        y[i] = std::max(floor_value, center - d.Draw(0.0, 4 * kGrid));
      }
      break;
    }
    case YShape::kChain: {
      if (!(chain_eps > 0.0) || k < 3) {
        throw std::invalid_argument("chain shape needs chain_eps > 0 and k >= 3");
      }
      const double one_eps = 1.0 + chain_eps;
      y[0] = 0.5 + 1.5 * d.Unit();
      y[1] = y[0];
      double sum = 2.0 * y[0];
      for (int l = 2; l < k - 1; ++l) {
        y[l] = std::min(y[l - 1], sum / (l * one_eps) * (1.0 + 1e-4 * d.Unit()));
        sum += y[l];
      }
      const double lo = sum / ((k - 1) * one_eps);
      const double hi = (y[1] - chain_eps * y[0]) / one_eps;
      y[k - 1] = lo < hi ? hi - (hi - lo) * d.Unit()
                         : lo * (1.0 + chain_eps * (2.0 * d.Unit() - 1.0));
      y[k - 1] = std::min(y[k - 1], y[k - 2]);
      break;
    }
    case YShape::kTwoLevel:
    case YShape::kMixed: {
      const int group = static_cast<int>(d.Int(1, k));
      const double high = d.Draw(0.5, kMagnitude);
      for (int i = 0; i < k; ++i) {
        y[i] = i < group ? std::max(floor_value, high - d.Draw(0.0, 3 * kGrid))
                         : d.Draw(floor_value, 0.6 * high);
      }
      break;
    }
  }
  d.Shuffle(y);
  return y;
}

int ArgMin(const std::vector<double>& v, int skip = -1) {
  int best = -1;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    if (i == skip) continue;
    if (best < 0 || v[i] < v[best]) best = i;
  }
  return best;
}

void RequireDistribution(const AdversaryScenario& s, std::span<const double> p) {
  if (static_cast<int>(p.size()) != s.k) {
    throw std::invalid_argument("distribution has " + std::to_string(p.size()) +
                                " entries, expected " + std::to_string(s.k));
  }
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= -kScenarioSlack)) throw std::invalid_argument("negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("distribution sums to " + std::to_string(sum));
  }
}

std::string Vec(std::span<const double> v) {
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ')';
  return out.str();
}

bool Close(double x, double y) {
  return std::abs(x - y) <= kIdentitySlack * (1.0 + std::abs(x) + std::abs(y));
}

}  // namespace

std::string ToString(FgCase c) {
  switch (c) {
    case FgCase::kMinusIsStar:
      return "minus_is_star";
    case FgCase::kMinusNotStar:
      return "minus_not_star";
    case FgCase::kNoMinus:
      return "no_minus";
  }
  return "unknown";
}

FgCase CaseOf(const AdversaryScenario& s) {
  if (!s.i_minus) return FgCase::kNoMinus;
  return *s.i_minus == s.i_star ? FgCase::kMinusIsStar : FgCase::kMinusNotStar;
}

std::optional<std::string> CheckScenario(const AdversaryScenario& s) {
  const int k = s.k;
  if (k < 1 || static_cast<int>(s.a.size()) != k || static_cast<int>(s.y.size()) != k) {
    return "a and y must have k entries";
  }
  if (s.i_star < 1 || s.i_star > k) return "i_star out of range";
  for (int i = 0; i < k; ++i) {
    if (s.a[i] > s.y[i] + kScenarioSlack) {
      return "a_" + std::to_string(i + 1) + " > y_" + std::to_string(i + 1);
    }
    for (int j = i + 1; j < k; ++j) {
      if (s.a[i] + s.a[j] < -kScenarioSlack) {
        return "a_" + std::to_string(i + 1) + " + a_" + std::to_string(j + 1) + " < 0";
      }
      if (s.y[i] + s.y[j] < -kScenarioSlack) {
        return "y_" + std::to_string(i + 1) + " + y_" + std::to_string(j + 1) + " < 0";
      }
    }
  }
  std::optional<Label> negative;
  for (int i = 0; i < k; ++i) {
    if (s.a[i] < 0.0) {
      if (negative) return "more than one negative a_i";
      negative = i + 1;
    }
  }
  if (negative != s.i_minus) return "i_minus does not match the sign of a";
  return std::nullopt;
}

AdversaryScenario SampleScenario(const ScenarioOptions& options, std::uint64_t seed) {
  const int k = options.k;
  if (k < 2) throw std::invalid_argument("scenarios need k >= 2");
  Drawer d(seed, options.continuous);
  const bool nonnegative = options.category == ScenarioCategory::kNonnegative;
  const bool want_negative_a = options.category == ScenarioCategory::kNegative ||
                               (options.category == ScenarioCategory::kAny && d.Coin());
  YSign sign = nonnegative ? YSign::kPositive : options.y_sign;
  bool flip_y = sign == YSign::kNonpositiveMin || (sign == YSign::kAny && d.Coin());
  if (nonnegative) flip_y = false;
  const bool positive = nonnegative ? false : sign == YSign::kPositive;

  AdversaryScenario s;
  s.k = k;
  while (true) {
    s.y = DrawMagnitudes(d, k, options.y_shape, positive, options.chain_eps);
    int minus = -1;
    if (flip_y) {
      minus = ArgMin(s.y);
      const double bound = s.y[ArgMin(s.y, minus)];
      const double v = d.Draw(0.0, bound);
      s.y[minus] = v == 0.0 ? 0.0 : -v;
      if (s.y[minus] >= 0.0) minus = -1;
    }
    s.a.assign(k, 0.0);
    // A negative y forces a negative a at the same label.
    const bool negative_a = want_negative_a || minus >= 0;
    if (negative_a) {
      const int m = minus >= 0 ? minus : static_cast<int>(d.Int(0, k - 1));
      const double lower = minus >= 0 ? -s.y[m] : kGrid;
      const double upper = s.y[ArgMin(s.y, m)];
      if (lower > upper || upper <= 0.0) {
        if (options.category == ScenarioCategory::kNegative || minus >= 0) continue;
      } else {
        const double u = d.Draw(lower, upper);
        s.a[m] = -u;
        for (int j = 0; j < k; ++j) {
          if (j != m) s.a[j] = d.Int(0, 3) == 0 ? s.y[j] : d.Draw(u, s.y[j]);
        }
        s.i_minus = m + 1;
        break;
      }
    }
    for (int j = 0; j < k; ++j) {
      s.a[j] = d.Int(0, 3) == 0 ? s.y[j] : d.Draw(0.0, s.y[j]);
    }
    s.i_minus.reset();
    break;
  }
  s.i_star = static_cast<Label>(d.Int(1, k));
  return s;
}

AdversaryScenario SampleScenario(int k, std::uint64_t seed, ScenarioCategory category) {
  ScenarioOptions options;
  options.k = k;
  options.category = category;
  return SampleScenario(options, seed);
}

double FOfP(const AdversaryScenario& s, std::span<const double> p) {
  RequireDistribution(s, p);
  const int star = s.i_star - 1;
  switch (CaseOf(s)) {
    case FgCase::kMinusIsStar:
      return 0.0;
    case FgCase::kMinusNotStar: {
      const int minus = *s.i_minus - 1;
      return (1.0 - p[star]) * s.a[star] + (1.0 - p[star] - 2.0 * p[minus]) * s.a[minus];
    }
    case FgCase::kNoMinus:
      return (1.0 - p[star]) * s.a[star];
  }
  return 0.0;
}

double GOfP(const AdversaryScenario& s, std::span<const double> p) {
  RequireDistribution(s, p);
  double g = 0.0;
  for (int i = 0; i < s.k; ++i) g += s.y[i] * p[i];
  return g;
}

Residual CheckRule(const AdversaryScenario& s, const ProbabilityRule& rule, double c) {
  rule.CheckCompatible(s.k);
  StepDistribution dist = rule.Apply(s.y);
  Residual r;
  r.value = c * GOfP(s, dist.p) - FOfP(s, dist.p);
  r.branch = dist.branch;
  r.p = std::move(dist.p);
  r.scenario = s;
  return r;
}

bool ResidualSuiteResult::Covers(const std::string& branch) const {
  return std::any_of(branches.begin(), branches.end(),
                     [&](const BranchStats& b) { return b.branch == branch && b.count > 0; });
}

ResidualSuiteResult RunResidualSuite(const ResidualSuiteConfig& config) {
  ResidualSuiteResult result;
  result.name = config.name;
  result.k = config.options.k;
  result.c = config.c;
  result.min_residual = std::numeric_limits<double>::infinity();
  std::map<std::string, BranchStats> by_branch;
  for (std::int64_t i = 0; i < config.count; ++i) {
    const AdversaryScenario s =
        SampleScenario(config.options, DeriveSeed(config.seed, static_cast<std::uint64_t>(i)));
    Residual r = CheckRule(s, config.rule, config.c);
    BranchStats& stats = by_branch[r.branch.Name()];
    if (stats.count == 0) {
      stats.branch = r.branch.Name();
      stats.min_residual = r.value;
    }
    ++stats.count;
    stats.min_residual = std::min(stats.min_residual, r.value);
    ++result.count;
    if (r.value < result.min_residual) {
      result.min_residual = r.value;
      result.worst = std::move(r);
    }
  }
  for (auto& [name, stats] : by_branch) result.branches.push_back(stats);
  return result;
}

std::vector<ResidualSuiteConfig> StandardResidualSuites(std::int64_t count,
                                                        std::uint64_t master_seed,
                                                        const std::vector<int>& ks) {
  std::vector<ResidualSuiteConfig> suites;
  auto add = [&](std::string name, ScenarioOptions options, ProbabilityRule rule, double c) {
    const std::uint64_t seed = DeriveSeed(master_seed, suites.size());
    suites.push_back({std::move(name), options, rule, c, count, seed});
  };
  ScenarioOptions k3;
  k3.k = 3;
  add("k3", k3, ProbabilityRule::KThree(), *ProbabilityRule::KThree().AnalysisConstant(3));
  for (int k : ks) {
    const double eps = EpsilonDefault(k);
    ScenarioOptions options;
    options.k = k;
    options.y_sign = YSign::kNonpositiveMin;
    add("general_nonpositive_k" + std::to_string(k), options,
        ProbabilityRule::GeneralK(eps), 1.0 - 1.0 / (k - 1));
    options.y_sign = YSign::kPositive;
    options.chain_eps = eps;
    add("general_positive_k" + std::to_string(k), options, ProbabilityRule::GeneralK(eps),
        1.0 / (1.0 + eps));
  }
  {
    const int k = kLevelKWitness;
    const double eps = EpsilonDefault(k);
    ScenarioOptions options;
    options.k = k;
    options.y_sign = YSign::kPositive;
    options.chain_eps = eps;
    add("general_positive_k" + std::to_string(k), options, ProbabilityRule::GeneralK(eps),
        1.0 / (1.0 + eps));
  }
  for (int k : ks) {
    ScenarioOptions options;
    options.k = k;
    options.category = ScenarioCategory::kNonnegative;
    add("monotone_k" + std::to_string(k), options, ProbabilityRule::Monotone(),
        1.0 - 1.0 / k);
  }
  return suites;
}

SimplexSearch SearchSimplexK3(const AdversaryScenario& s1, const AdversaryScenario& s2,
                              double c, double step) {
  if (s1.k != 3 || s2.k != 3) throw std::invalid_argument("simplex search needs k = 3");
  if (!(step > 0.0) || step > 1.0) throw std::invalid_argument("step must be in (0, 1]");
  const auto steps = static_cast<std::int64_t>(std::llround(1.0 / step));
  SimplexSearch search;
  search.c = c;
  search.step = step;
  search.best_violation = std::numeric_limits<double>::infinity();
  std::vector<double> p(3);
  for (std::int64_t i = 0; i <= steps; ++i) {
    for (std::int64_t j = 0; i + j <= steps; ++j) {
      p[0] = static_cast<double>(i) / steps;
      p[1] = static_cast<double>(j) / steps;
      p[2] = static_cast<double>(steps - i - j) / steps;
      const double v = std::max(FOfP(s1, p) - c * GOfP(s1, p), FOfP(s2, p) - c * GOfP(s2, p));
      ++search.points;
      if (v < search.best_violation) {
        search.best_violation = v;
        search.best_p = p;
      }
    }
  }
  return search;
}

TightnessReport TightnessWitnessK3(double grid_step, double c_margin) {
  TightnessReport r;
  r.alpha = (std::sqrt(17.0) - 3.0) / 2.0;
  r.c_prime = (std::sqrt(17.0) - 1.0) / 4.0;
  const double alpha = r.alpha;
  const std::vector<double> y = {1.0, 1.0, alpha};
  r.first = {3, {1.0, -alpha, alpha}, y, 1, 2};
  r.second = {3, {-alpha, 1.0, alpha}, y, 2, 1};
  const StepDistribution dist = RuleK3(y);
  r.p = dist.p;
  r.branch = dist.branch;
  r.f1 = FOfP(r.first, r.p);
  r.g1 = GOfP(r.first, r.p);
  r.f2 = FOfP(r.second, r.p);
  r.g2 = GOfP(r.second, r.p);
  r.gap1 = std::abs(r.f1 - r.c_prime * r.g1);
  r.gap2 = std::abs(r.f2 - r.c_prime * r.g2);
  r.sum_gap = std::abs(r.f1 + r.f2 - (1.0 + alpha) / 2.0 * (r.g1 + r.g2));
  r.search = SearchSimplexK3(r.first, r.second, r.c_prime - c_margin, grid_step);
  return r;
}

bool TraceReport::ok() const {
  if (final_o != final_s) return false;
  return std::all_of(steps.begin(), steps.end(),
                     [](const TraceStepCheck& s) { return s.failures.empty(); });
}

std::string TraceReport::Describe() const {
  std::ostringstream out;
  for (const TraceStepCheck& s : steps) {
    for (const std::string& f : s.failures) {
      out << "step " << s.t << " (element " << s.element << "): " << f
          << "; s=" << s.s_prev.ToString() << " t=" << s.t_prev.ToString()
          << " a=" << Vec(s.scenario.a) << " y=" << Vec(s.scenario.y)
          << " i*=" << s.scenario.i_star << " p=" << Vec(s.p) << '\n';
    }
  }
  if (final_o != final_s) {
    out << "final o " << final_o.ToString() << " != s " << final_s.ToString() << '\n';
  }
  const std::string text = out.str();
  return text.empty() ? "ok" : text;
}

TraceReport TraceAgainstReference(const OracleSpec& spec, const ProbabilityRule& rule,
                                  const Assignment& reference, std::uint64_t seed,
                                  const ElementOrder& order, std::optional<double> c) {
  const Dims dims = spec.dims();
  if (reference.dims() != dims) throw std::invalid_argument("reference has wrong dims");
  if (!reference.full_support()) {
    throw std::invalid_argument("reference must assign every element");
  }
  rule.CheckCompatible(dims.k);
  TraceReport report;
  report.c = c ? c : rule.AnalysisConstant(dims.k);
  const std::vector<int> sequence = MakeOrder(dims.n, order);
  Assignment s(dims);
  Assignment o_prev = reference;
  for (std::size_t idx = 0; idx < sequence.size(); ++idx) {
    TraceStepCheck step;
    step.t = static_cast<int>(idx + 1);
    step.element = sequence[idx];
    const int e = step.element;
    step.s_prev = s;
    // Away from e, o^(t) agrees with o^(t-1).
    step.t_prev = o_prev.With(e, kUnassigned);
    const double fs = spec.Value(s);
    const double ft = spec.Value(step.t_prev);
    AdversaryScenario& sc = step.scenario;
    sc.k = dims.k;
    sc.a.resize(dims.k);
    sc.y.resize(dims.k);
    for (int i = 0; i < dims.k; ++i) {
      const auto label = static_cast<Label>(i + 1);
      sc.y[i] = spec.Value(s.With(e, label)) - fs;
      sc.a[i] = spec.Value(step.t_prev.With(e, label)) - ft;
    }
    sc.i_star = reference[e];
    for (int i = 0; i < dims.k; ++i) {
      if (sc.a[i] < 0.0 && !sc.i_minus) sc.i_minus = i + 1;
    }
    if (auto problem = CheckScenario(sc)) step.failures.push_back(*problem);

    const StepDistribution dist = rule.Apply(sc.y);
    step.p = dist.p;
    step.branch = dist.branch;
    SplitMix64 rng = Substream(seed, idx + 1);
    step.label = SampleLabel(dist.p, UniformUnit(rng));

    const Assignment s_next = s.With(e, step.label);
    step.o_t = Join(Join(reference, s_next), s_next);
    if (step.o_t != step.t_prev.With(e, step.label)) {
      step.failures.push_back("o^(t) " + step.o_t.ToString() +
                              " does not extend t^(t-1) by the sampled label");
    }
    const double loss = spec.Value(o_prev) - spec.Value(step.o_t);
    const double predicted = sc.a[sc.i_star - 1] - sc.a[step.label - 1];
    if (!Close(loss, predicted)) {
      step.failures.push_back("f(o^(t-1)) - f(o^(t)) = " + std::to_string(loss) +
                              " but a_i* - a_label = " + std::to_string(predicted));
    }
    // A broken scenario makes f(p) meaningless.
    if (step.failures.empty()) {
      step.f_of_p = FOfP(sc, step.p);
      double expected_loss = 0.0;
      for (int i = 0; i < dims.k; ++i) {
        expected_loss += (sc.a[sc.i_star - 1] - sc.a[i]) * step.p[i];
      }
      if (expected_loss > step.f_of_p + kIdentitySlack) {
        step.failures.push_back("expected loss " + std::to_string(expected_loss) +
                                " exceeds f(p) = " + std::to_string(step.f_of_p));
      }
      if (report.c) {
        step.c_g_of_p = *report.c * GOfP(sc, step.p);
        if (step.f_of_p > step.c_g_of_p + kResidualTolerance) {
          step.failures.push_back("f(p) = " + std::to_string(step.f_of_p) +
                                  " > c g(p) = " + std::to_string(step.c_g_of_p));
        }
      }
    }
    s = s_next;
    o_prev = step.o_t;
    report.steps.push_back(std::move(step));
  }
  report.final_s = s;
  report.final_o = o_prev;
  return report;
}

}  // namespace ksubmax
