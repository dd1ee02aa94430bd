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

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include "lbrelax/metrics.h"

namespace lbrelax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SolveBudget budget(double seconds, int64_t nodes) {
  SolveBudget b;
  b.time_limit = seconds;
  b.node_limit = nodes;
  return b;
}

FamilySpec graph_family(const char* name, int nodes, int degree, int k0) {
  FamilySpec f;
  f.family = name;
  f.nodes = nodes;
  f.degree = degree;
  f.k0 = k0;
  return f;
}

}  // namespace

const FamilySpec& Preset::family(const std::string& name) const {
  auto it = families.find(name);
  if (it == families.end()) {
    throw std::invalid_argument("preset " + this->name + " has no family '" +
                                name + "'");
  }
  return it->second;
}

Preset paper_mini_preset() {
  Preset p;
  p.name = "paper-mini";
  p.horizon = 120.0;
  p.repair_budget = budget(5.0, 50000);
  p.lb_budget = budget(25.0, std::numeric_limits<int64_t>::max());
  // Stops at the first incumbent anyway.
  p.initial_budget = budget(2.0, std::numeric_limits<int64_t>::max());
  p.families["mvc"] = graph_family("mvc", 500, 2, 30);
  p.families["mis"] = graph_family("mis", 500, 2, 20);
  FamilySpec sc;
  sc.family = "sc";
  sc.sc = ScParams{.num_vars = 200, .num_rows = 250, .density = 0.05,
                   .cost_lo = 1, .cost_hi = 100};
  sc.k0 = 15;
  p.families["sc"] = sc;
  FamilySpec mk;
  mk.family = "mk";
  mk.items = 40;
  mk.knapsacks = 4;
  mk.k0 = 30;
  p.families["mk"] = mk;
  return p;
}

Preset paper_full_preset() {
  Preset p;
  p.name = "paper-full";
  p.horizon = 3600.0;
  p.repair_budget = budget(120.0, std::numeric_limits<int64_t>::max());
  p.lb_budget = budget(600.0, std::numeric_limits<int64_t>::max());
  p.initial_budget = budget(10.0, std::numeric_limits<int64_t>::max());
  p.families["mvc"] = graph_family("mvc", 9000, 3, 400);
  p.families["mis"] = graph_family("mis", 9000, 3, 200);
  FamilySpec sc;
  sc.family = "sc";
  sc.sc = ScParams{.num_vars = 4000, .num_rows = 5000, .density = 0.05,
                   .cost_lo = 1, .cost_hi = 100};
  sc.k0 = 150;
  p.families["sc"] = sc;
  FamilySpec mk;
  mk.family = "mk";
  mk.items = 400;
  mk.knapsacks = 40;
  mk.k0 = 400;
  p.families["mk"] = mk;
  return p;
}

Preset find_preset(const std::string& name) {
  if (name == "paper-mini") return paper_mini_preset();
  if (name == "paper-full") return paper_full_preset();
  throw std::invalid_argument("unknown preset '" + name +
                              "' (expected paper-mini or paper-full)");
}

IlpInstance generate_family(const FamilySpec& spec, uint64_t seed) {
  if (spec.family == "mvc") return generate_mvc(spec.nodes, spec.degree, seed);
  if (spec.family == "mis") return generate_mis(spec.nodes, spec.degree, seed);
  if (spec.family == "sc") return generate_sc(spec.sc, seed);
  if (spec.family == "mk") return generate_mk(spec.items, spec.knapsacks, seed);
  throw std::invalid_argument("unknown family '" + spec.family +
                              "' (expected mvc, mis, sc or mk)");
}

std::string instance_file_name(const FamilySpec& spec, uint64_t seed) {
  std::string params;
  if (spec.family == "mvc" || spec.family == "mis") {
    params = fmt::format("n{}_d{}", spec.nodes, spec.degree);
  } else if (spec.family == "sc") {
    params = fmt::format("v{}_r{}", spec.sc.num_vars, spec.sc.num_rows);
  } else if (spec.family == "mk") {
    params = fmt::format("i{}_k{}", spec.items, spec.knapsacks);
  } else {
    throw std::invalid_argument("unknown family '" + spec.family + "'");
  }
  return fmt::format("{}_{}_{}.ilp.json", spec.family, params, seed);
}

std::vector<std::filesystem::path> cmd_generate(
    const FamilySpec& spec, int count, uint64_t seed,
    const std::filesystem::path& out_dir) {
  if (count < 1) {
    throw std::invalid_argument("--count must be at least 1, got " +
                                std::to_string(count));
  }
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> paths;
  for (int i = 0; i < count; ++i) {
    const uint64_t s = seed + static_cast<uint64_t>(i);
    const IlpInstance inst = generate_family(spec, s);
    paths.push_back(out_dir / instance_file_name(spec, s));
    write_instance_file(inst, paths.back());
  }
  return paths;
}

std::string family_of(const std::string& instance_name) {
  return instance_name.substr(0, instance_name.find('_'));
}

void ExperimentSpec::validate() const {
  if (instances.empty()) throw std::invalid_argument("experiment has no instances");
  if (heuristics.empty()) throw std::invalid_argument("experiment has no heuristics");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("horizon must be positive and finite");
  }
  if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  for (double q : checkpoints) {
    if (!(q >= 0.0 && q <= horizon)) {
      throw std::invalid_argument("checkpoint " + format_double(q) +
                                  " outside [0, horizon]");
    }
  }
}

uint64_t stable_hash(std::string_view s) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

uint64_t run_seed(uint64_t base, size_t instance_index, Heuristic h) {
  return base + instance_index + stable_hash(HeuristicName(h));
}

LnsConfig run_config(const ExperimentSpec& spec, const IlpInstance& inst,
                     size_t instance_index, Heuristic h) {
  auto it = spec.overrides.find(h);
  LnsConfig c = it != spec.overrides.end() ? it->second : spec.base;
  c.heuristic = h;
  auto k0 = spec.k0_by_family.find(family_of(inst.name()));
  if (k0 != spec.k0_by_family.end()) c.k0 = k0->second;
  c.seed = run_seed(spec.seed, instance_index, h);
  if (spec.axis == TimeAxis::kIterations) {
    c.time_limit = kInf;
    c.iteration_limit = static_cast<int64_t>(spec.horizon);
    c.repair_budget.time_limit = kInf;
    c.lb_repair_budget.time_limit = kInf;
    c.initial_budget.time_limit = kInf;
  } else {
    c.time_limit = spec.horizon;
  }
  return c;
}

namespace {

struct InitialSolution {
  std::optional<Assignment> solution;
  double time = 0.0;
  std::string error;
  std::optional<double> bound;
};

InitialSolution initial_for(const ExperimentSpec& spec, const IlpInstance& inst) {
  LnsConfig c = run_config(spec, inst, 0, spec.heuristics.front());
  InitialSolution out;
  const auto start = std::chrono::steady_clock::now();
  try {
    out.solution = find_initial_solution(inst, c.initial_budget);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  if (spec.axis == TimeAxis::kWall) {
    out.time = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
                   .count();
  }
  if (spec.stop_at_proven_optimum) out.bound = proven_lower_bound(inst);
  return out;
}

ResultRecord run_one(const ExperimentSpec& spec, const IlpInstance& inst,
                     size_t index, Heuristic h, const InitialSolution& initial) {
  ResultRecord r;
  r.instance = inst.name();
  r.heuristic = HeuristicName(h);
  r.maximization = inst.is_maximization();
  r.time_axis = spec.axis == TimeAxis::kWall ? "wall" : "iterations";
  r.horizon = spec.horizon;
  r.config = run_config(spec, inst, index, h);
  r.config.stop_bound = initial.bound;
  r.seed = r.config.seed;
  if (!initial.solution) {
    r.status = "error: no initial solution: " + initial.error;
    return r;
  }
  try {
    LnsResult res;
    if (spec.axis == TimeAxis::kWall) {
      WallClock clock(initial.time);
      res = run_lns(inst, r.config, *initial.solution, clock, initial.time);
    } else {
      IterationClock clock;
      res = run_lns(inst, r.config, *initial.solution, clock, 0.0);
    }
    r.events = std::move(res.trace.events);
    r.final_objective = inst.original_objective(res.best.objective());
  } catch (const std::exception& e) {
    r.status = std::string("error: ") + e.what();
    r.final_objective = inst.original_objective(initial.solution->objective());
  }
  return r;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const size_t num_instances = spec.instances.size();
  const size_t num_heuristics = spec.heuristics.size();

  std::vector<InitialSolution> initial(num_instances);
  std::vector<ResultRecord> records(num_instances * num_heuristics);
  // Initial solutions first, then the runs; each slot has a single writer.
  auto parallel_for = [&](size_t count, const auto& body) {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t t = next++; t < count; t = next++) body(t);
    };
    const int threads = std::min<int>(spec.jobs, static_cast<int>(count));
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  };
  parallel_for(num_instances, [&](size_t i) {
    initial[i] = initial_for(spec, spec.instances[i]);
  });
  parallel_for(records.size(), [&](size_t t) {
    const size_t i = t / num_heuristics;
    records[t] = run_one(spec, spec.instances[i], i,
                         spec.heuristics[t % num_heuristics], initial[i]);
  });
  return records;
}

void cmd_run(const ExperimentSpec& spec, const std::filesystem::path& out_dir) {
  const std::vector<ResultRecord> records = run_experiment(spec);
  std::filesystem::create_directories(out_dir);
  std::vector<double> checkpoints = spec.checkpoints;
  if (checkpoints.empty()) checkpoints.push_back(spec.horizon);
  write_results(records, checkpoints, out_dir / "results.jsonl",
                out_dir / "results.csv");
}

namespace {

// Records arranged as grid[instance][approach].
struct Portfolio {
  std::vector<std::string> approaches;
  std::vector<std::string> instances;
  std::vector<bool> maximization;
  std::vector<std::optional<double>> v_star;
  std::vector<std::vector<const ResultRecord*>> grid;
};

Portfolio arrange(std::span<const ResultRecord> records) {
  Portfolio p;
  std::map<std::string, size_t> approach_index, instance_index;
  for (const ResultRecord& r : records) {
    if (approach_index.emplace(r.heuristic, p.approaches.size()).second) {
      p.approaches.push_back(r.heuristic);
    }
    if (instance_index.emplace(r.instance, p.instances.size()).second) {
      p.instances.push_back(r.instance);
      p.maximization.push_back(r.maximization);
    }
  }
  p.grid.assign(p.instances.size(),
                std::vector<const ResultRecord*>(p.approaches.size(), nullptr));
  for (const ResultRecord& r : records) {
    auto& slot = p.grid[instance_index[r.instance]][approach_index[r.heuristic]];
    if (slot) {
      throw std::invalid_argument("duplicate run for instance " + r.instance +
                                  " and heuristic " + r.heuristic);
    }
    slot = &r;
  }
  for (const BestKnown& b : best_known_values(records)) {
    p.v_star.push_back(b.value);
  }
  return p;
}

GapSeries series_of(const Portfolio& p, size_t i, size_t a) {
  const ResultRecord* r = p.grid[i][a];
  if (!r || !p.v_star[i]) return GapSeries{{}, r ? r->horizon : kInf};
  return gap_series(r->events, r->maximization, *p.v_star[i], r->horizon);
}

// Mean gap of every approach at time q over the instances it ran on.
std::vector<std::vector<double>> gaps_at(const Portfolio& p, double q) {
  std::vector<std::vector<double>> gaps(p.approaches.size());
  for (size_t i = 0; i < p.instances.size(); ++i) {
    for (size_t a = 0; a < p.approaches.size(); ++a) {
      if (!p.grid[i][a]) continue;
      gaps[a].push_back(series_of(p, i, a).at(q));
    }
  }
  return gaps;
}

ObjectiveTable objectives_at(const Portfolio& p, double q) {
  ObjectiveTable t(p.instances.size(),
                   std::vector<std::optional<double>>(p.approaches.size()));
  for (size_t i = 0; i < p.instances.size(); ++i) {
    for (size_t a = 0; a < p.approaches.size(); ++a) {
      const ResultRecord* r = p.grid[i][a];
      if (r) t[i][a] = objective_at(r->events, r->maximization, q);
    }
  }
  return t;
}

}  // namespace

std::string report_table(std::span<const ResultRecord> records,
                         std::span<const double> checkpoints) {
  const Portfolio p = arrange(records);
  std::string out = "heuristic,time,runs,pg_pct_mean,pg_pct_std,pi_mean,pi_std\n";
  for (size_t a = 0; a < p.approaches.size(); ++a) {
    for (double q : checkpoints) {
      std::vector<double> pg, pi;
      for (size_t i = 0; i < p.instances.size(); ++i) {
        if (!p.grid[i][a]) continue;
        const GapSeries s = series_of(p, i, a);
        pg.push_back(100.0 * s.at(q));
        pi.push_back(primal_integral(s, q));
      }
      const MeanStd g = mean_std(pg);
      const MeanStd in = mean_std(pi);
      out += fmt::format("{},{},{},{},{},{},{}\n", p.approaches[a],
                         format_double(q), pg.size(), format_double(g.mean),
                         format_double(g.std), format_double(in.mean),
                         format_double(in.std));
    }
  }
  return out;
}

std::string report_survival(std::span<const ResultRecord> records,
                            std::span<const double> times,
                            std::optional<double> threshold) {
  const Portfolio p = arrange(records);
  if (times.empty()) throw std::invalid_argument("survival report needs times");
  if (!threshold) {
    std::vector<double> means;
    for (const auto& g : gaps_at(p, times.back())) {
      means.push_back(mean_std(g).mean);
    }
    threshold = default_survival_threshold(means);
  }
  std::string out = "heuristic,time,threshold,rate\n";
  for (size_t a = 0; a < p.approaches.size(); ++a) {
    for (double q : times) {
      const auto gaps = gaps_at(p, q);
      out += fmt::format("{},{},{},{}\n", p.approaches[a], format_double(q),
                         format_double(*threshold),
                         format_double(survival_rate(gaps[a], *threshold)));
    }
  }
  return out;
}

std::string report_best_rate(std::span<const ResultRecord> records,
                             std::span<const double> times) {
  const Portfolio p = arrange(records);
  std::vector<std::vector<double>> rates;
  for (double q : times) {
    rates.push_back(best_performing_rate(objectives_at(p, q), p.maximization));
  }
  std::string out = "heuristic,time,rate\n";
  for (size_t a = 0; a < p.approaches.size(); ++a) {
    for (size_t t = 0; t < times.size(); ++t) {
      out += fmt::format("{},{},{}\n", p.approaches[a], format_double(times[t]),
                         format_double(rates[t][a]));
    }
  }
  return out;
}

std::string report_vbest(std::span<const ResultRecord> records,
                         std::span<const double> times) {
  const Portfolio p = arrange(records);
  std::vector<std::vector<double>> means(times.size());
  for (size_t t = 0; t < times.size(); ++t) {
    const auto gaps = gap_to_virtual_best(objectives_at(p, times[t]), p.maximization);
    for (size_t a = 0; a < p.approaches.size(); ++a) {
      std::vector<double> col;
      for (size_t i = 0; i < p.instances.size(); ++i) {
        if (p.grid[i][a]) col.push_back(100.0 * gaps[i][a]);
      }
      means[t].push_back(mean_std(col).mean);
    }
  }
  std::string out = "heuristic,time,gap_pct_mean\n";
  for (size_t a = 0; a < p.approaches.size(); ++a) {
    for (size_t t = 0; t < times.size(); ++t) {
      out += fmt::format("{},{},{}\n", p.approaches[a], format_double(times[t]),
                         format_double(means[t][a]));
    }
  }
  return out;
}

const char* ReportKindName(ReportKind kind) {
  switch (kind) {
    case ReportKind::kTable:
      return "table";
    case ReportKind::kSurvival:
      return "survival";
    case ReportKind::kBestRate:
      return "best-rate";
    case ReportKind::kVirtualBest:
      return "vbest";
  }
  return "?";
}

std::optional<ReportKind> ParseReportKind(std::string_view name) {
  for (ReportKind k : {ReportKind::kTable, ReportKind::kSurvival,
                       ReportKind::kBestRate, ReportKind::kVirtualBest}) {
    if (name == ReportKindName(k)) return k;
  }
  return std::nullopt;
}

void cmd_report(std::span<const ResultRecord> records,
                std::span<const ReportKind> kinds,
                std::span<const double> checkpoints,
                std::optional<double> threshold,
                const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (ReportKind kind : kinds) {
    std::string text;
    switch (kind) {
      case ReportKind::kTable:
        text = report_table(records, checkpoints);
        break;
      case ReportKind::kSurvival:
        text = report_survival(records, checkpoints, threshold);
        break;
      case ReportKind::kBestRate:
        text = report_best_rate(records, checkpoints);
        break;
      case ReportKind::kVirtualBest:
        text = report_vbest(records, checkpoints);
        break;
    }
    write_text(out_dir / (std::string(ReportKindName(kind)) + ".csv"), text);
  }
}

std::vector<double> even_checkpoints(double horizon, int n) {
  std::vector<double> out;
  for (int i = 1; i <= n; ++i) out.push_back(horizon * i / n);
  return out;
}

}  // namespace lbrelax
