#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "symratio/error.hpp"
#include "symratio/harness.hpp"

using namespace symratio;

namespace {

std::vector<std::vector<double>> csv_rows(const std::string& text, std::string* header) {
  std::istringstream in(text);
  std::getline(in, *header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Report, WdUsesExactSolver) {
  const RatioReport r3 = cmd_report(load_input("wd:3"));
  EXPECT_EQ(r3.method, "exact_binary");
  EXPECT_NEAR(r3.ratio, 2.0 / 3.0, 1e-14);
  EXPECT_EQ(r3.maximizers.size(), 2u);
  const RatioReport r4 = cmd_report(load_input("wd:4"));
  EXPECT_NEAR(r4.ratio, 3.0 * std::sqrt(3.0) / 8.0, 1e-14);
  for (const RatioReport& r : {r3, r4}) {
    EXPECT_NEAR(r.ratio * r.ratio + r.relative_distance * r.relative_distance, 1.0, 1e-14);
    EXPECT_NEAR(r.spectral_norm / r.frob_norm, r.ratio, 1e-15);
  }
}

TEST(Report, DenseTensorUsesAls) {
  Input in{make_w3(), "w3"};
  const RatioReport r = cmd_report(in);
  EXPECT_EQ(r.method, "als");
  EXPECT_NEAR(r.ratio, 2.0 / 3.0, 1e-10);
  EXPECT_EQ(r.maximizers.size(), 3u);
  const Json j = to_json(r);
  EXPECT_TRUE(j.contains("factors"));
  EXPECT_EQ(to_csv(r).substr(0, to_csv(r).find(',')), "input");
}

TEST(Verify, UnknownSuiteThrows) {
  try {
    cmd_verify("no-such-suite");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
  }
}

TEST(Verify, AllSuitesPassWithSmallBudget) {
  for (const std::string& name : suite_names()) {
    VerifyConfig cfg;
    cfg.seed = 5;
    cfg.budget = name == "kkt-region" ? 20000 : 50;
    const SuiteResult r = cmd_verify(name, cfg);
    EXPECT_TRUE(r.passed()) << name << ": " << to_json(r).dump();
    EXPECT_GT(r.cases, 0u) << name;
  }
}

TEST(Verify, DeterministicAndExecutionIndependent) {
  for (const std::string name : {"thm1-bound", "prop-unique", "thm3-bound"}) {
    VerifyConfig s;
    s.seed = 17;
    s.budget = 40;
    s.exec = Execution::serial;
    VerifyConfig p = s;
    p.exec = Execution::parallel;
    const std::string a = to_json(cmd_verify(name, s)).dump();
    const std::string b = to_json(cmd_verify(name, p)).dump();
    const std::string c = to_json(cmd_verify(name, p)).dump();
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(b, c) << name;
    EXPECT_EQ(a.find("wall_seconds"), std::string::npos);
  }
}

TEST(Verify, TimingOnlyWhenRequested) {
  VerifyConfig cfg;
  cfg.budget = 10;
  const SuiteResult r = cmd_verify("prop-equal", cfg);
  EXPECT_TRUE(to_json(r, true).contains("wall_seconds"));
  EXPECT_EQ(to_csv(r).substr(0, to_csv(r).find('\n')), "suite,seed,cases,failures,passed");
}

TEST(Sweep, DiffTHeaderAndLimit) {
  SweepConfig cfg;
  cfg.d = 4;
  cfg.steps = 50;
  std::string header;
  const auto rows = csv_rows(cmd_sweep("diff_t", cfg), &header);
  EXPECT_EQ(header, "t,ratio_sq,diff_bound,limit");
  ASSERT_EQ(rows.size(), 50u);
  EXPECT_NEAR(rows.front()[0], 1e-4, 1e-16);
  EXPECT_NEAR(rows.back()[0], 1.0, 1e-12);
  // the bound approaches its t -> 0 limit
  EXPECT_NEAR(rows.front()[2], rows.front()[3], 1e-3 * rows.front()[3]);
}

TEST(Sweep, BorderAbLowerBoundsHold) {
  SweepConfig cfg;
  cfg.d = 5;
  cfg.steps = 101;
  std::string header;
  const auto rows = csv_rows(cmd_sweep("border_ab", cfg), &header);
  EXPECT_EQ(header, "a,b,ratio,lb_interior,lb_axis");
  ASSERT_FALSE(rows.empty());
  for (const auto& row : rows) {
    EXPECT_GE(row[2], row[3] - 1e-12);
    EXPECT_GE(row[2], row[4] - 1e-12);
  }
}

TEST(Sweep, LimitDDecreasesTowardLimit) {
  SweepConfig cfg;
  cfg.d_min = 3;
  cfg.d_max = 30;
  std::string header;
  const auto rows = csv_rows(cmd_sweep("limit_d", cfg), &header);
  EXPECT_EQ(header, "d,ratio,relative_distance,bound,limit_ratio,limit_distance");
  ASSERT_EQ(rows.size(), 28u);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_LT(rows[k][1], rows[k - 1][1]);
    EXPECT_GT(rows[k][1], rows[k][4]);
    EXPECT_NEAR(rows[k][1], rows[k][3], 1e-12);
  }
  EXPECT_THROW(cmd_sweep("nope"), Error);
}

TEST(Search, MinRatioStaysAboveBound) {
  SearchConfig cfg;
  cfg.starts = 4;
  cfg.budget = 800;
  cfg.seed = 2;
  std::vector<SearchTraceEntry> trace;
  const Json j = cmd_search("min-ratio-sym", 3, cfg, &trace);
  EXPECT_GE(j["best_ratio"].get<double>(), 2.0 / 3.0 - 1e-12);
  EXPECT_LE(j["evaluations"].get<int>(), 800);
  ASSERT_FALSE(trace.empty());
  EXPECT_EQ(to_json(trace.front())["mode"], "init");
}

TEST(Search, NonsymmetricSamplerIsDeterministic) {
  SearchConfig cfg;
  cfg.budget = 20;
  cfg.seed = 9;
  cfg.exec = Execution::serial;
  const Json a = cmd_search("counterexample-nonsym", 3, cfg);
  cfg.exec = Execution::parallel;
  const Json b = cmd_search("counterexample-nonsym", 3, cfg);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["below_bound"], 0);
  EXPECT_THROW(cmd_search("nope", 3, cfg), Error);
  EXPECT_THROW(cmd_search("min-ratio-sym", 2, cfg), Error);
}
