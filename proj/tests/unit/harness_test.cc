// Copyright 2026 The lbrelax Authors
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

#include "lbrelax/harness.h"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

namespace lbrelax {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lbrelax_harness_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(PresetTest, MiniFamilies) {
  const Preset p = paper_mini_preset();
  EXPECT_EQ(p.name, "paper-mini");
  EXPECT_EQ(p.horizon, 120.0);
  EXPECT_EQ(p.family("mvc").k0, 30);
  EXPECT_EQ(p.family("mis").k0, 20);
  EXPECT_EQ(p.family("sc").k0, 15);
  EXPECT_EQ(p.family("mk").k0, 30);
  EXPECT_EQ(p.repair_budget.time_limit * 5, p.lb_budget.time_limit);
  EXPECT_EQ(find_preset("paper-full").family("mvc").k0, 400);
  EXPECT_THROW(find_preset("huge"), std::invalid_argument);
}

TEST(GenerateTest, NamesAndFiles) {
  FamilySpec mvc = paper_mini_preset().family("mvc");
  EXPECT_EQ(instance_file_name(mvc, 7), "mvc_n500_d2_7.ilp.json");
  const fs::path dir = scratch_dir("gen");
  const auto paths = cmd_generate(mvc, 5, 7, dir);
  ASSERT_EQ(paths.size(), 5u);
  EXPECT_EQ(paths.back().filename(), "mvc_n500_d2_11.ilp.json");
  const std::string first = slurp(paths[0]);
  cmd_generate(mvc, 5, 7, dir);
  EXPECT_EQ(slurp(paths[0]), first);
  EXPECT_EQ(read_instance_file(paths[2]).name(), "mvc_n500_d2_9");
  EXPECT_THROW(cmd_generate(mvc, 0, 7, dir), std::invalid_argument);
  EXPECT_EQ(family_of("mvc_n500_d2_9"), "mvc");
}

TEST(SeedTest, StableAcrossRuns) {
  // Published FNV-1a test vectors.
  EXPECT_EQ(stable_hash(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(stable_hash("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(run_seed(10, 3, Heuristic::kRandom),
            13 + stable_hash("RANDOM"));
  EXPECT_NE(run_seed(0, 0, Heuristic::kRandom), run_seed(0, 0, Heuristic::kLb));
}

ExperimentSpec small_spec(TimeAxis axis) {
  ExperimentSpec spec;
  for (uint64_t s = 0; s < 3; ++s) spec.instances.push_back(generate_mk(10, 2, s));
  spec.heuristics = {Heuristic::kRandom, Heuristic::kLbRelax};
  spec.base.k0 = 4;
  spec.base.repair_budget.node_limit = 100;
  spec.base.lb_repair_budget.node_limit = 500;
  spec.base.initial_budget.node_limit = 1000;
  spec.axis = axis;
  spec.horizon = axis == TimeAxis::kIterations ? 10 : 0.5;
  spec.checkpoints = even_checkpoints(spec.horizon, 2);
  spec.seed = 5;
  return spec;
}

TEST(RunConfigTest, IterationAxisDropsTimeLimits) {
  ExperimentSpec spec = small_spec(TimeAxis::kIterations);
  spec.base.repair_budget.time_limit = 5;
  spec.k0_by_family["mk"] = 9;
  const LnsConfig c = run_config(spec, spec.instances[1], 1, Heuristic::kLb);
  EXPECT_EQ(c.heuristic, Heuristic::kLb);
  EXPECT_EQ(c.k0, 9);
  EXPECT_EQ(c.iteration_limit, 10);
  EXPECT_TRUE(std::isinf(c.time_limit));
  EXPECT_TRUE(std::isinf(c.repair_budget.time_limit));
  EXPECT_EQ(c.repair_budget.node_limit, 100);
  EXPECT_EQ(c.seed, run_seed(5, 1, Heuristic::kLb));
  const LnsConfig w = run_config(small_spec(TimeAxis::kWall), spec.instances[0], 0,
                                 Heuristic::kRandom);
  EXPECT_EQ(w.time_limit, 0.5);
}

TEST(RunExperimentTest, PortfolioGivesOneRecordPerPair) {
  const fs::path dir = scratch_dir("run");
  cmd_run(small_spec(TimeAxis::kIterations), dir);
  const auto records = read_results(dir / "results.jsonl");
  ASSERT_EQ(records.size(), 6u);
  EXPECT_EQ(records[0].heuristic, "RANDOM");
  EXPECT_EQ(records[1].heuristic, "LBRELAX");
  EXPECT_EQ(records[0].instance, records[1].instance);
  for (const ResultRecord& r : records) {
    EXPECT_EQ(r.status, "ok");
    EXPECT_EQ(r.time_axis, "iterations");
    EXPECT_TRUE(r.maximization);
    ASSERT_FALSE(r.events.empty());
    EXPECT_EQ(r.events[0].wall_time, 0.0);
  }
  // Identical initial solutions across the portfolio.
  EXPECT_EQ(records[0].events[0].objective, records[1].events[0].objective);
  EXPECT_EQ(parse_csv(slurp(dir / "results.csv")).size(), 7u);
}

TEST(RunExperimentTest, IterationAxisIsReproducible) {
  const fs::path a = scratch_dir("rep_a");
  const fs::path b = scratch_dir("rep_b");
  ExperimentSpec spec = small_spec(TimeAxis::kIterations);
  cmd_run(spec, a);
  spec.jobs = 3;
  cmd_run(spec, b);
  EXPECT_EQ(slurp(a / "results.jsonl"), slurp(b / "results.jsonl"));
  EXPECT_EQ(slurp(a / "results.csv"), slurp(b / "results.csv"));
}

TEST(RunExperimentTest, ValidatesSpec) {
  ExperimentSpec spec = small_spec(TimeAxis::kWall);
  spec.checkpoints = {1.0};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = small_spec(TimeAxis::kWall);
  spec.jobs = 0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = small_spec(TimeAxis::kWall);
  spec.heuristics.clear();
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TraceEvent ev(double t, double obj) {
  return {.wall_time = t, .iteration = 0, .objective = obj, .heuristic = "",
          .k = 0, .improved = true, .note = ""};
}

ResultRecord record(const std::string& inst, const std::string& h,
                    std::vector<TraceEvent> events) {
  ResultRecord r;
  r.instance = inst;
  r.heuristic = h;
  r.horizon = 10;
  r.events = std::move(events);
  r.final_objective = r.events.back().objective;
  return r;
}

// B finds the best value 100 immediately on every instance; A does not.
std::vector<ResultRecord> fixture() {
  return {record("i1", "A", {ev(0, 110), ev(5, 100)}),
          record("i1", "B", {ev(0, 100)}),
          record("i2", "A", {ev(0, 125)}),
          record("i2", "B", {ev(0, 100)}),
          record("i3", "A", {ev(2, 100)}),
          record("i3", "B", {ev(0, 100)})};
}

TEST(ReportTest, HandComputedTable) {
  const std::vector<double> at{10.0};
  const auto rows = parse_csv(report_table(fixture(), at));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"heuristic", "time", "runs",
                                                "pg_pct_mean", "pg_pct_std",
                                                "pi_mean", "pi_std"}));
  const auto& a = rows[1];
  EXPECT_EQ(a[0], "A");
  EXPECT_EQ(std::stod(a[1]), 10.0);
  EXPECT_EQ(a[2], "3");
  // Gaps at 10: 0, 25/125 = 20%, 0.
  EXPECT_NEAR(std::stod(a[3]), 20.0 / 3, 1e-12);
  EXPECT_NEAR(std::stod(a[4]), std::sqrt((2 * (20.0 / 3) * (20.0 / 3) +
                                          (40.0 / 3) * (40.0 / 3)) / 3),
              1e-12);
  // Integrals: 5 * 10/110, 10 * 0.2, 2 * 1.
  const double pi[] = {50.0 / 110, 2.0, 2.0};
  const double mean = (pi[0] + pi[1] + pi[2]) / 3;
  double var = 0;
  for (double p : pi) var += (p - mean) * (p - mean) / 3;
  EXPECT_NEAR(std::stod(a[5]), mean, 1e-12);
  EXPECT_NEAR(std::stod(a[6]), std::sqrt(var), 1e-12);
  const auto& b = rows[2];
  EXPECT_EQ(b[0], "B");
  EXPECT_EQ(std::stod(b[3]), 0.0);
  EXPECT_EQ(std::stod(b[5]), 0.0);
}

TEST(ReportTest, SurvivalBestRateAndVirtualBest) {
  const std::vector<double> at{1.0, 10.0};
  const auto surv = parse_csv(report_survival(fixture(), at, 0.1));
  // heuristic,time,threshold,rate; A at t=1 has gaps 10/110, 0.2, 1.
  ASSERT_EQ(surv.size(), 5u);
  EXPECT_EQ(surv[1][0], "A");
  EXPECT_NEAR(std::stod(surv[1][3]), 1.0 / 3, 1e-12);
  EXPECT_NEAR(std::stod(surv[2][3]), 2.0 / 3, 1e-12);
  EXPECT_EQ(std::stod(surv[3][3]), 1.0);

  const auto best = parse_csv(report_best_rate(fixture(), at));
  ASSERT_EQ(best.size(), 5u);
  EXPECT_NEAR(std::stod(best[2][2]), 2.0 / 3, 1e-12);  // A at 10
  EXPECT_EQ(std::stod(best[4][2]), 1.0);

  const auto vb = parse_csv(report_vbest(fixture(), at));
  ASSERT_EQ(vb.size(), 5u);
  EXPECT_NEAR(std::stod(vb[2][2]), 20.0 / 3, 1e-12);
  EXPECT_EQ(std::stod(vb[4][2]), 0.0);
}

TEST(ReportTest, DefaultThresholdAndDuplicates) {
  const std::vector<double> at{10.0};
  const auto surv = parse_csv(report_survival(fixture(), at));
  // Mean gaps at 10: A 0.0667, B 0; median 0.0333 rounds to 0.0335.
  EXPECT_NEAR(std::stod(surv[1][2]), 0.0335, 1e-12);
  auto dup = fixture();
  dup.push_back(dup[0]);
  EXPECT_THROW(report_table(dup, at), std::invalid_argument);
}

TEST(ReportTest, WritesIdenticalBytesTwice) {
  const fs::path dir = scratch_dir("report");
  const std::vector<ReportKind> kinds{ReportKind::kTable, ReportKind::kSurvival,
                                      ReportKind::kBestRate,
                                      ReportKind::kVirtualBest};
  const std::vector<double> at{5.0, 10.0};
  cmd_report(fixture(), kinds, at, std::nullopt, dir);
  const std::string first = slurp(dir / "table.csv");
  cmd_report(fixture(), kinds, at, std::nullopt, dir);
  EXPECT_EQ(slurp(dir / "table.csv"), first);
  for (ReportKind k : kinds) {
    EXPECT_EQ(ParseReportKind(ReportKindName(k)), k);
    EXPECT_TRUE(fs::exists(dir / (std::string(ReportKindName(k)) + ".csv")));
  }
  EXPECT_FALSE(ParseReportKind("chart"));
}

TEST(CheckpointTest, EvenSpacing) {
  EXPECT_EQ(even_checkpoints(120, 4), (std::vector<double>{30, 60, 90, 120}));
}

}  // namespace
}  // namespace lbrelax
