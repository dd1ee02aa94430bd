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

// Benchmark harness behind the `lbrelax` command: instance generation,
// heuristic portfolios over instance sets, and metric reports.

#ifndef LBRELAX_HARNESS_H_
#define LBRELAX_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lbrelax/gen.h"
#include "lbrelax/io.h"
#include "lbrelax/lns.h"

namespace lbrelax {

// Generator parameters of one family plus its default initial k.
struct FamilySpec {
  std::string family;  // "mvc", "mis", "sc" or "mk"
  int nodes = 500;     // mvc / mis
  int degree = 2;
  ScParams sc;
  int items = 40;  // mk
  int knapsacks = 4;
  int k0 = 30;
};

struct Preset {
  std::string name;
  double horizon = 120.0;  // seconds
  SolveBudget repair_budget;
  SolveBudget lb_budget;
  SolveBudget initial_budget;
  std::map<std::string, FamilySpec> families;

  const FamilySpec& family(const std::string& name) const;
};

// "paper-mini" (desk scale) and "paper-full".
Preset paper_mini_preset();
Preset paper_full_preset();
// Throws std::invalid_argument for unknown names.
Preset find_preset(const std::string& name);

IlpInstance generate_family(const FamilySpec& spec, uint64_t seed);
// "<family>_<params>_<seed>.ilp.json"
std::string instance_file_name(const FamilySpec& spec, uint64_t seed);

// Writes `count` instances with seeds seed..seed+count-1 into `out_dir` and
// returns their paths. Throws std::invalid_argument when count < 1.
std::vector<std::filesystem::path> cmd_generate(
    const FamilySpec& spec, int count, uint64_t seed,
    const std::filesystem::path& out_dir);

// Family prefix of a generated instance name ("mvc_n500_d2_7" -> "mvc").
std::string family_of(const std::string& instance_name);

enum class TimeAxis { kWall, kIterations };

struct ExperimentSpec {
  std::vector<IlpInstance> instances;
  std::vector<Heuristic> heuristics;
  LnsConfig base;
  // Replaces `base` for the given heuristic.
  std::map<Heuristic, LnsConfig> overrides;
  // k0 per instance family; families not listed use the config's k0.
  std::map<std::string, int> k0_by_family;
  TimeAxis axis = TimeAxis::kWall;
  // Seconds on the wall axis, iterations on the iteration axis.
  double horizon = 120.0;
  std::vector<double> checkpoints;
  uint64_t seed = 0;
  int jobs = 1;
  // End runs whose incumbent meets the instance's proven lower bound.
  bool stop_at_proven_optimum = true;

  // Throws std::invalid_argument unless there is an instance, a heuristic,
  // a positive horizon, jobs >= 1 and every checkpoint in [0, horizon].
  void validate() const;
};

// 64-bit FNV-1a, stable across platforms.
uint64_t stable_hash(std::string_view s);
uint64_t run_seed(uint64_t base, size_t instance_index, Heuristic h);

// The configuration an (instance, heuristic) run uses. On the iteration axis
// every time limit is dropped so node limits alone bound the work.
LnsConfig run_config(const ExperimentSpec& spec, const IlpInstance& inst,
                     size_t instance_index, Heuristic h);

// Runs every (instance, heuristic) pair and returns records ordered by
// instance, then heuristic. The initial solution of an instance is computed
// once and shared by all heuristics. A failing run yields a record whose
// status starts with "error".
std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec);

// Writes results.jsonl and results.csv into `out_dir`.
void cmd_run(const ExperimentSpec& spec, const std::filesystem::path& out_dir);

// CSV reports. Approaches and instances keep their order of first appearance.
// Each (instance, heuristic) pair may occur once.
//
// table: heuristic, time, runs, pg_pct_mean, pg_pct_std, pi_mean, pi_std
std::string report_table(std::span<const ResultRecord> records,
                         std::span<const double> checkpoints);
// survival: heuristic, time, threshold, rate. Without `threshold` the default
// rule is applied to mean gaps at the last checkpoint.
std::string report_survival(std::span<const ResultRecord> records,
                            std::span<const double> times,
                            std::optional<double> threshold = std::nullopt);
// best-rate: heuristic, time, rate
std::string report_best_rate(std::span<const ResultRecord> records,
                             std::span<const double> times);
// vbest: heuristic, time, gap_pct_mean
std::string report_vbest(std::span<const ResultRecord> records,
                         std::span<const double> times);

enum class ReportKind { kTable, kSurvival, kBestRate, kVirtualBest };
const char* ReportKindName(ReportKind kind);  // "table", "survival", ...
std::optional<ReportKind> ParseReportKind(std::string_view name);

// Writes `<kind>.csv` into `out_dir` for each requested kind.
void cmd_report(std::span<const ResultRecord> records,
                std::span<const ReportKind> kinds,
                std::span<const double> checkpoints,
                std::optional<double> threshold,
                const std::filesystem::path& out_dir);

// n evenly spaced points on (0, horizon], ending at the horizon.
std::vector<double> even_checkpoints(double horizon, int n);

}  // namespace lbrelax

#endif  // LBRELAX_HARNESS_H_
