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

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "ksubmax/epsilon.h"
#include "test_util.h"

namespace ksubmax {
namespace {

using testing::UnarySpec;

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

TEST(EpsChoiceTest, Parse) {
  EXPECT_EQ(EpsChoice::Parse("default").mode, EpsMode::kDefault);
  EXPECT_EQ(EpsChoice::Parse("bisect").mode, EpsMode::kBisect);
  const EpsChoice explicit_eps = EpsChoice::Parse("0.05");
  EXPECT_EQ(explicit_eps.mode, EpsMode::kExplicit);
  EXPECT_EQ(explicit_eps.Resolve(7), 0.05);
  EXPECT_EQ(EpsChoice::Parse("default").Resolve(4), 1.0 / 16);
  EXPECT_EQ(EpsChoice::Parse("bisect").Resolve(4), EpsilonMax(4, kBisectTolerance));
  for (const char* bad : {"", "abc", "0", "-1", "0.1x"}) {
    EXPECT_THROW(EpsChoice::Parse(bad), std::invalid_argument) << bad;
  }
}

TEST(MakeRuleTest, Names) {
  EXPECT_EQ(MakeRule("k3", 3).kind(), RuleKind::kKThree);
  EXPECT_EQ(MakeRule("monotone", 5).kind(), RuleKind::kMonotone);
  EXPECT_EQ(MakeRule("uniform", 5).kind(), RuleKind::kUniform);
  const ProbabilityRule general = MakeRule("general", 5);
  EXPECT_EQ(general.kind(), RuleKind::kGeneralK);
  EXPECT_EQ(general.epsilon(), 1.0 / 25);
  EXPECT_THROW(MakeRule("greedy", 3), std::invalid_argument);
}

TEST(FormatNumberTest, TwelveSignificantDigits) {
  EXPECT_EQ(FormatNumber(1.5), "1.5");
  EXPECT_EQ(FormatNumber(1.0 / 3), "0.333333333333");
}

TEST(CertifyTest, SingleElement) {
  const BenchRecord r = Certify(UnarySpec({2, 1, 1}), "u", ProbabilityRule::KThree());
  EXPECT_EQ(r.k, 3);
  EXPECT_EQ(r.n, 1);
  EXPECT_EQ(r.rule, "k3");
  EXPECT_FALSE(r.eps.has_value());
  EXPECT_DOUBLE_EQ(r.expectation, 1.5);
  EXPECT_DOUBLE_EQ(r.opt, 2.0);
  EXPECT_DOUBLE_EQ(*r.ratio, 0.75);
  EXPECT_NEAR(*r.bound, (std::sqrt(17.0) - 3) / 2, 1e-15);
  EXPECT_EQ(r.queries, 4);
  EXPECT_FALSE(r.violation());
}

TEST(CertifyTest, ZeroOptHasNoRatio) {
  const BenchRecord r = Certify(UnarySpec({0, 0, 0}), "z", ProbabilityRule::Uniform());
  EXPECT_FALSE(r.ratio.has_value());
  EXPECT_FALSE(r.bound.has_value());
  EXPECT_FALSE(r.violation());
}

TEST(CertifyTest, MonotoneBoundOnlyOnMonotoneInstances) {
  const BenchRecord mono = Certify(UnarySpec({2, 1, 1}), "m", ProbabilityRule::Monotone());
  EXPECT_NEAR(*mono.bound, 3.0 / 5, 1e-15);
  const BenchRecord non = Certify(UnarySpec({2, 1, -0.5}), "n", ProbabilityRule::Monotone());
  EXPECT_FALSE(non.bound.has_value());
}

TEST(CertifyTest, GeneratedSuiteHasNoViolations) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const int k = 3 + i % 3;
    const OracleSpec spec = GenerateSuiteInstance(Dims(3, k), false, 4, i);
    const BenchRecord r = Certify(spec, "g", MakeRule("general", k));
    EXPECT_FALSE(r.violation()) << *r.ratio << " < " << *r.bound;
    EXPECT_EQ(r.eps, 1.0 / (k * k));
  }
}

TEST(GenerateSuiteInstanceTest, MembersAreStable) {
  EXPECT_EQ(GenerateSuiteInstance(Dims(3, 3), false, 1, 5),
            GenerateSuiteInstance(Dims(3, 3), false, 1, 5));
  EXPECT_NE(GenerateSuiteInstance(Dims(3, 3), false, 1, 5),
            GenerateSuiteInstance(Dims(3, 3), false, 1, 6));
}

TEST(RecordsToCsvTest, Format) {
  BenchRecord r;
  r.instance_id = "instance_0001";
  r.k = 3;
  r.n = 2;
  r.rule = "general";
  r.eps = 1.0 / 9;
  r.expectation = 1.0;
  r.opt = 2.0;
  r.ratio = 0.5;
  r.bound = 0.6;
  r.queries = 7;
  const std::vector<std::string> lines = Lines(RecordsToCsv({r}));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0],
            "instance_id,k,n,rule,eps,expectation,opt,ratio,bound,queries,wall_seconds,"
            "violation");
  EXPECT_EQ(lines[1], "instance_0001,3,2,general,0.111111111111,1,2,0.5,0.6,7,0,1");
  const nlohmann::json j = RecordsToJson({r});
  EXPECT_EQ(j[0]["violation"], true);
  EXPECT_EQ(j[0]["queries"], 7);
}

TEST(RatioTableTest, RowsAgainstClosedForms) {
  const std::vector<RatioRow> rows = RatioTable(3, 64);
  ASSERT_EQ(rows.size(), 62u);
  for (const RatioRow& row : rows) {
    const int k = row.k;
    const double kk = static_cast<double>(k) * k;
    EXPECT_NEAR(row.monotone, k / (2.0 * k - 1), 1e-15);
    EXPECT_EQ(row.nonmonotone_half, 0.5);
    EXPECT_NEAR(row.prior_sqrt, 1 / (1 + std::max(1.0, std::sqrt((k - 1) / 4.0))), 1e-15);
    EXPECT_NEAR(row.general, (kk + 1) / (2 * kk + 1), 1e-15);
    EXPECT_GT(row.general, 0.5);
    EXPECT_GE(row.eps_max, 1.0 / kk);
    EXPECT_GE(row.general_eps_max, row.general);
    EXPECT_EQ(row.k3.has_value(), k == 3);
  }
  EXPECT_NEAR(rows[0].general, 10.0 / 19, 1e-15);
  EXPECT_NEAR(*rows[0].k3, 0.5615528128088303, 1e-15);
  EXPECT_EQ(rows[2].prior_sqrt, 0.5);  // k = 5
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].general, rows[i - 1].general);
}

TEST(RatioTableTest, AttachMeasuredTakesMinimumPerK) {
  std::vector<RatioRow> rows = RatioTable(3, 4);
  BenchRecord a, b, c;
  a.k = 3;
  a.ratio = 0.9;
  b.k = 3;
  b.ratio = 0.8;
  c.k = 5;
  c.ratio = 0.1;
  AttachMeasured(rows, {a, b, c});
  EXPECT_EQ(rows[0].measured_min, 0.8);
  EXPECT_FALSE(rows[1].measured_min.has_value());
  const std::vector<std::string> lines = Lines(RatioTableToCsv(rows));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0],
            "k,monotone,nonmonotone_half,prior_sqrt,general,eps_max,general_eps_max,k3,"
            "measured_min");
  EXPECT_EQ(lines[2].back(), ',');
  EXPECT_EQ(RatioTableToJson(rows)[1]["measured_min"], nullptr);
}

TEST(JsonTest, SuiteAndTightness) {
  const auto suites = StandardResidualSuites(100, 1);
  const nlohmann::json suite = SuiteResultToJson(RunResidualSuite(suites[0]));
  EXPECT_EQ(suite["name"], "k3");
  EXPECT_EQ(suite["passed"], true);
  const nlohmann::json tight = TightnessToJson(TightnessWitnessK3(0.01));
  EXPECT_EQ(tight["equality_holds"], true);
}

}  // namespace
}  // namespace ksubmax
