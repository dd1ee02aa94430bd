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

// lbrelax generate | run | report

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lbrelax/harness.h"

namespace fs = std::filesystem;
using namespace lbrelax;

namespace {

struct GenerateArgs {
  std::string preset = "paper-mini";
  std::string family;
  std::optional<int> nodes, degree, vars, rows, cost_lo, cost_hi, items,
      knapsacks;
  std::optional<double> density;
  int count = 1;
  uint64_t seed = 0;
  std::string out = "instances";
};

struct RunArgs {
  std::string preset = "paper-mini";
  std::vector<std::string> inputs;
  std::string family;
  int count = 0;
  uint64_t seed = 0;
  std::vector<std::string> heuristics{"RANDOM", "LBRELAX"};
  std::optional<int> k0;
  double alpha = 1.02;
  double beta = 0.5;
  double gamma = 30.0;
  std::optional<double> horizon;
  std::optional<int64_t> iterations;
  std::optional<int64_t> repair_node_limit;
  std::optional<double> repair_time_limit;
  std::optional<double> lb_time_limit;
  std::optional<double> initial_time_limit;
  int64_t lp_iteration_limit = 0;
  bool fixed_k = false;
  int jobs = 1;
  int num_checkpoints = 4;
  std::string out = "results";
};

struct ReportArgs {
  std::string results;
  std::vector<std::string> kinds{"table", "survival", "best-rate", "vbest"};
  std::vector<double> checkpoints;
  int num_checkpoints = 4;
  std::optional<double> threshold;
  std::string out = "report";
};

FamilySpec family_from(const GenerateArgs& a) {
  FamilySpec f = find_preset(a.preset).family(a.family);
  if (a.nodes) f.nodes = *a.nodes;
  if (a.degree) f.degree = *a.degree;
  if (a.vars) f.sc.num_vars = *a.vars;
  if (a.rows) f.sc.num_rows = *a.rows;
  if (a.density) f.sc.density = *a.density;
  if (a.cost_lo) f.sc.cost_lo = *a.cost_lo;
  if (a.cost_hi) f.sc.cost_hi = *a.cost_hi;
  if (a.items) f.items = *a.items;
  if (a.knapsacks) f.knapsacks = *a.knapsacks;
  return f;
}

std::vector<IlpInstance> load_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const std::string& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(in)) {
        const std::string name = entry.path().filename().string();
        if (name.ends_with(".ilp.json") || name.ends_with(".mps")) {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.emplace_back(in);
    }
  }
  std::vector<IlpInstance> out;
  for (const fs::path& f : files) out.push_back(read_instance_file(f));
  return out;
}

ExperimentSpec spec_from(const RunArgs& a) {
  const Preset preset = find_preset(a.preset);
  ExperimentSpec spec;
  if (!a.inputs.empty()) spec.instances = load_inputs(a.inputs);
  if (!a.family.empty()) {
    if (a.count < 1) throw std::invalid_argument("--count must be at least 1");
    const FamilySpec& f = preset.family(a.family);
    for (int i = 0; i < a.count; ++i) {
      spec.instances.push_back(generate_family(f, a.seed + i));
    }
  }
  for (const std::string& h : a.heuristics) {
    const auto parsed = ParseHeuristic(h);
    if (!parsed) throw std::invalid_argument("unknown heuristic '" + h + "'");
    spec.heuristics.push_back(*parsed);
  }
  LnsConfig& c = spec.base;
  c.alpha = a.alpha;
  c.beta = a.beta;
  c.gamma = a.gamma;
  c.adaptive_k = !a.fixed_k;
  c.lp_iteration_limit = a.lp_iteration_limit;
  c.repair_budget = preset.repair_budget;
  c.lb_repair_budget = preset.lb_budget;
  c.initial_budget = preset.initial_budget;
  if (a.repair_node_limit) c.repair_budget.node_limit = *a.repair_node_limit;
  if (a.repair_time_limit) c.repair_budget.time_limit = *a.repair_time_limit;
  if (a.lb_time_limit) c.lb_repair_budget.time_limit = *a.lb_time_limit;
  if (a.initial_time_limit) c.initial_budget.time_limit = *a.initial_time_limit;
  if (a.k0) {
    c.k0 = *a.k0;
  } else {
    for (const auto& [name, f] : preset.families) spec.k0_by_family[name] = f.k0;
  }
  if (a.iterations) {
    spec.axis = TimeAxis::kIterations;
    spec.horizon = static_cast<double>(*a.iterations);
  } else {
    spec.horizon = a.horizon.value_or(preset.horizon);
  }
  spec.checkpoints = even_checkpoints(spec.horizon, a.num_checkpoints);
  spec.seed = a.seed;
  spec.jobs = a.jobs;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Large neighborhood search for binary ILPs"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* g = app.add_subcommand("generate", "Write generated instances");
  g->add_option("--family", gen.family, "mvc, mis, sc or mk")->required();
  g->add_option("--preset", gen.preset, "Default sizes: paper-mini or paper-full");
  g->add_option("--nodes", gen.nodes, "Graph nodes (mvc, mis)");
  g->add_option("--degree-param", gen.degree, "Edges per new node (mvc, mis)");
  g->add_option("--vars", gen.vars, "Columns (sc)");
  g->add_option("--rows", gen.rows, "Rows (sc)");
  g->add_option("--density", gen.density, "Column density (sc)");
  g->add_option("--cost-lo", gen.cost_lo, "Smallest cost (sc)");
  g->add_option("--cost-hi", gen.cost_hi, "Largest cost (sc)");
  g->add_option("--items", gen.items, "Items (mk)");
  g->add_option("--knapsacks", gen.knapsacks, "Knapsacks (mk)");
  g->add_option("--count", gen.count, "Number of instances");
  g->add_option("--seed", gen.seed, "Seed of the first instance");
  g->add_option("--out", gen.out, "Output directory");

  RunArgs run;
  CLI::App* r = app.add_subcommand("run", "Run a heuristic portfolio");
  r->add_option("inputs", run.inputs, "Instance files or directories");
  r->add_option("--family", run.family, "Generate instances in memory instead");
  r->add_option("--count", run.count, "Instances to generate with --family");
  r->add_option("--preset", run.preset, "paper-mini or paper-full");
  r->add_option("--heuristics", run.heuristics,
                "RANDOM GRAPH LB LBRELAX LBRELAX_S LBRELAX_RR")
      ->delimiter(',');
  r->add_option("--k0", run.k0, "Initial neighborhood size (default per family)");
  r->add_option("--alpha", run.alpha, "Neighborhood growth factor");
  r->add_option("--beta", run.beta, "Neighborhood cap as a fraction of n");
  r->add_option("--gamma", run.gamma, "Randomized phase length (LBRELAX_RR)");
  r->add_option("--horizon", run.horizon, "Wall seconds per run");
  r->add_option("--iterations", run.iterations,
                "Iterations per run; times become iteration counts and time "
                "limits are dropped")
      ->excludes("--horizon");
  r->add_option("--repair-node-limit", run.repair_node_limit);
  r->add_option("--repair-time-limit", run.repair_time_limit);
  r->add_option("--lb-time-limit", run.lb_time_limit);
  r->add_option("--initial-time-limit", run.initial_time_limit);
  r->add_option("--lp-iteration-limit", run.lp_iteration_limit);
  r->add_flag("--fixed-k", run.fixed_k, "Keep k at k0");
  r->add_option("--seed", run.seed, "Base seed");
  r->add_option("--jobs", run.jobs, "Parallel runs");
  r->add_option("--checkpoints", run.num_checkpoints,
                "Evenly spaced checkpoints in the CSV summary");
  r->add_option("--out", run.out, "Output directory");

  ReportArgs rep;
  CLI::App* p = app.add_subcommand("report", "Compute metric tables");
  p->add_option("results", rep.results, "results.jsonl")->required();
  p->add_option("--kind", rep.kinds, "table, survival, best-rate, vbest")
      ->delimiter(',');
  p->add_option("--at", rep.checkpoints, "Checkpoint times")->delimiter(',');
  p->add_option("--checkpoints", rep.num_checkpoints,
                "Evenly spaced checkpoints when --at is absent");
  p->add_option("--threshold", rep.threshold, "Survival gap threshold (fraction)");
  p->add_option("--out", rep.out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (g->parsed()) {
      for (const fs::path& f : cmd_generate(family_from(gen), gen.count,
                                            gen.seed, gen.out)) {
        std::cout << f.string() << "\n";
      }
    } else if (r->parsed()) {
      const ExperimentSpec spec = spec_from(run);
      cmd_run(spec, run.out);
      std::cout << "wrote " << (fs::path(run.out) / "results.jsonl").string()
                << "\n";
    } else if (p->parsed()) {
      const std::vector<ResultRecord> records = read_results(rep.results);
      if (records.empty()) throw std::invalid_argument("no records in " + rep.results);
      std::vector<ReportKind> kinds;
      for (const std::string& k : rep.kinds) {
        const auto kind = ParseReportKind(k);
        if (!kind) throw std::invalid_argument("unknown report kind '" + k + "'");
        kinds.push_back(*kind);
      }
      std::vector<double> times = rep.checkpoints;
      if (times.empty()) {
        double horizon = records.front().horizon;
        for (const ResultRecord& rec : records) horizon = std::min(horizon, rec.horizon);
        times = even_checkpoints(horizon, rep.num_checkpoints);
      }
      cmd_report(records, kinds, times, rep.threshold, rep.out);
      std::cout << "wrote " << kinds.size() << " report(s) to " << rep.out << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
