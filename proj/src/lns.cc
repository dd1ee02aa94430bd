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

#include "lbrelax/lns.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "lbrelax/simplex.h"

namespace lbrelax {

const char* HeuristicName(Heuristic h) {
  switch (h) {
    case Heuristic::kRandom:
      return "RANDOM";
    case Heuristic::kGraph:
      return "GRAPH";
    case Heuristic::kLb:
      return "LB";
    case Heuristic::kLbRelax:
      return "LBRELAX";
    case Heuristic::kLbRelaxS:
      return "LBRELAX_S";
    case Heuristic::kLbRelaxRr:
      return "LBRELAX_RR";
  }
  return "?";
}

std::optional<Heuristic> ParseHeuristic(std::string_view name) {
  std::string canon;
  for (char ch : name) {
    if (ch == '-') ch = '_';
    canon.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  }
  for (Heuristic h : kAllHeuristics) {
    if (canon == HeuristicName(h)) return h;
  }
  return std::nullopt;
}

void LnsConfig::validate() const {
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("beta must lie in (0, 1]");
  }
  if (k0 < 1) throw std::invalid_argument("k0 must be at least 1");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  repair_budget.validate();
  lb_repair_budget.validate();
  initial_budget.validate();
  if (std::isinf(time_limit) &&
      iteration_limit == std::numeric_limits<int64_t>::max()) {
    throw std::invalid_argument("LNS run needs a time or iteration limit");
  }
}

WallClock::WallClock(double offset)
    : start_(std::chrono::steady_clock::now()), offset_(offset) {}

double WallClock::now() const {
  return offset_ + std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
}

int next_neighborhood_size(int k, bool improved, double alpha, double beta,
                           int n) {
  if (improved) return k;
  // The small offset absorbs rounding in alpha*k (1.02*50 is not exact).
  const double grown = std::ceil(alpha * k - 1e-9);
  const double cap = std::floor(beta * n + 1e-9);
  return std::max(1, static_cast<int>(std::min(grown, cap)));
}

int update_neighborhood_size(const LnsState& state, bool improved,
                             const LnsConfig& config) {
  return next_neighborhood_size(state.k, improved, config.alpha, config.beta,
                                state.incumbent.size());
}

std::vector<int> sample_without_replacement(std::span<const int> pool,
                                            int count, std::mt19937_64& rng) {
  std::vector<int> items(pool.begin(), pool.end());
  const int size = static_cast<int>(items.size());
  count = std::clamp(count, 0, size);
  for (int i = 0; i < count; ++i) {
    std::uniform_int_distribution<int> pick(i, size - 1);
    std::swap(items[i], items[pick(rng)]);
  }
  items.resize(count);
  std::sort(items.begin(), items.end());
  return items;
}

Neighborhood destroy_random(LnsState& state, int n, int k) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  const int size = std::min(k, n);
  return {sample_without_replacement(all, size, state.rng), size};
}

IncidenceGraph::IncidenceGraph(const IlpInstance& inst)
    : var_rows_(inst.num_vars()), row_vars_(inst.num_rows()) {
  for (int i = 0; i < inst.num_rows(); ++i) {
    for (const Term& t : inst.row(i).terms) {
      if (t.coef == 0.0) continue;
      var_rows_[t.var].push_back(i);
      row_vars_[i].push_back(t.var);
    }
  }
}

Neighborhood destroy_graph(const IncidenceGraph& graph, LnsState& state,
                           int k) {
  const int n = graph.num_vars();
  const int size = std::min(k, n);
  std::vector<uint8_t> var_seen(n, 0);
  std::vector<uint8_t> row_seen(graph.num_rows(), 0);
  std::vector<int> picked;
  picked.reserve(size);
  // Queue entries are variables (>= 0) or rows encoded as ~row.
  std::deque<int> queue;
  while (static_cast<int>(picked.size()) < size) {
    std::vector<int> unvisited;
    for (int j = 0; j < n; ++j) {
      if (!var_seen[j]) unvisited.push_back(j);
    }
    std::uniform_int_distribution<size_t> pick(0, unvisited.size() - 1);
    const int root = unvisited[pick(state.rng)];
    var_seen[root] = 1;
    queue.push_back(root);
    while (!queue.empty() && static_cast<int>(picked.size()) < size) {
      const int node = queue.front();
      queue.pop_front();
      if (node >= 0) {
        picked.push_back(node);
        for (int r : graph.rows_of(node)) {
          if (!row_seen[r]) {
            row_seen[r] = 1;
            queue.push_back(~r);
          }
        }
      } else {
        for (int v : graph.vars_of(~node)) {
          if (!var_seen[v]) {
            var_seen[v] = 1;
            queue.push_back(v);
          }
        }
      }
    }
    queue.clear();
  }
  std::sort(picked.begin(), picked.end());
  return {std::move(picked), size};
}

namespace {

// Pads `chosen` with uniformly random indices from outside it up to `size`.
std::vector<int> pad_uniformly(std::vector<int> chosen, int n, int size,
                               std::mt19937_64& rng) {
  std::vector<uint8_t> in(n, 0);
  for (int i : chosen) in[i] = 1;
  std::vector<int> rest;
  for (int j = 0; j < n; ++j) {
    if (!in[j]) rest.push_back(j);
  }
  const int missing = size - static_cast<int>(chosen.size());
  std::vector<int> extra = sample_without_replacement(rest, missing, rng);
  chosen.insert(chosen.end(), extra.begin(), extra.end());
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

DestroyResult destroy_from_relaxation(const IlpInstance& inst, LnsState& state,
                                      int k, bool greedy,
                                      int64_t lp_iteration_limit) {
  const int n = inst.num_vars();
  const int size = std::min(k, n);
  DestroyResult out;
  if (size == 0) {
    out.neighborhood.k = 0;
    return out;
  }
  const IlpInstance lb = build_lb_ilp(inst, state.incumbent, size);
  LpOptions options;
  options.iteration_limit = lp_iteration_limit;
  options.start = state.incumbent.values();
  const LpSolution lp = solve_lp(lb, options);
  if (lp.status == LpStatus::kInfeasible) {
    throw std::logic_error("LB relaxation infeasible around a feasible incumbent");
  }
  if (lp.status == LpStatus::kIterationLimit) out.note = "lp-iteration-limit";
  out.deltas = relaxation_deltas(lp.values.values(), state.incumbent.values());
  out.neighborhood = select_by_deltas(out.deltas, size, greedy, state.rng);
  return out;
}

}  // namespace

DestroyResult destroy_lb(const IlpInstance& inst, LnsState& state, int k,
                         const SolveBudget& budget) {
  const int n = inst.num_vars();
  const int size = std::min(k, n);
  DestroyResult out;
  out.neighborhood.k = size;
  if (size == 0) return out;
  const IlpInstance lb = build_lb_ilp(inst, state.incumbent, size);
  const BnbResult r = branch_and_bound(
      lb, budget, Assignment(lb, state.incumbent.values()));
  if (!r.best) {
    out.neighborhood = destroy_random(state, n, size);
    out.note = "lb-no-solution";
    return out;
  }
  std::vector<int> changed;
  for (int j = 0; j < n; ++j) {
    if ((*r.best)[j] != state.incumbent[j]) changed.push_back(j);
  }
  if (r.best->objective() < state.incumbent.objective() - kImprovementTolerance) {
    out.adopted = Assignment(inst, r.best->values());
  }
  out.neighborhood.indices = pad_uniformly(std::move(changed), n, size, state.rng);
  return out;
}

std::vector<double> relaxation_deltas(std::span<const double> relaxed,
                                      std::span<const uint8_t> incumbent) {
  std::vector<double> deltas(relaxed.size());
  for (size_t i = 0; i < relaxed.size(); ++i) {
    const double d = std::abs(relaxed[i] - static_cast<double>(incumbent[i]));
    deltas[i] = std::round(d * 1e9) / 1e9;
  }
  return deltas;
}

Neighborhood select_by_deltas(std::span<const double> deltas, int k,
                              bool greedy, std::mt19937_64& rng) {
  const int n = static_cast<int>(deltas.size());
  const int size = std::min(k, n);
  std::vector<int> moved;
  std::vector<int> unmoved;
  for (int i = 0; i < n; ++i) {
    (deltas[i] > kDeltaThreshold ? moved : unmoved).push_back(i);
  }
  std::vector<int> chosen;
  if (static_cast<int>(moved.size()) >= size) {
    if (greedy) {
      std::shuffle(moved.begin(), moved.end(), rng);
      std::stable_sort(moved.begin(), moved.end(),
                       [&](int a, int b) { return deltas[a] > deltas[b]; });
      chosen.assign(moved.begin(), moved.begin() + size);
      std::sort(chosen.begin(), chosen.end());
    } else {
      chosen = sample_without_replacement(moved, size, rng);
    }
  } else {
    std::vector<int> extra =
        sample_without_replacement(unmoved, size - moved.size(), rng);
    chosen = std::move(moved);
    chosen.insert(chosen.end(), extra.begin(), extra.end());
    std::sort(chosen.begin(), chosen.end());
  }
  return {std::move(chosen), size};
}

DestroyResult destroy_lb_relax(const IlpInstance& inst, LnsState& state, int k,
                               int64_t lp_iteration_limit) {
  return destroy_from_relaxation(inst, state, k, true, lp_iteration_limit);
}

DestroyResult destroy_lb_relax_s(const IlpInstance& inst, LnsState& state,
                                 int k, int64_t lp_iteration_limit) {
  return destroy_from_relaxation(inst, state, k, false, lp_iteration_limit);
}

DestroyResult step_lb_relax_rr(const IlpInstance& inst, LnsState& state,
                               const LnsConfig& config) {
  const int n = inst.num_vars();
  if (state.rr_mode == RrMode::kRelax) {
    return destroy_lb_relax(inst, state, state.k, config.lp_iteration_limit);
  }
  DestroyResult out;
  out.neighborhood = destroy_random(state, n, state.k);
  return out;
}

void record_rr_outcome(LnsState& state, bool improved, double now,
                       double gamma) {
  if (state.rr_mode == RrMode::kRelax) {
    if (improved) {
      state.rr_failures = 0;
    } else if (++state.rr_failures >= 2) {
      state.rr_mode = RrMode::kRandomized;
      state.rr_phase_started = now;
      state.rr_failures = 0;
      state.rr_improved_in_phase = false;
    }
    return;
  }
  if (improved) state.rr_improved_in_phase = true;
  if (state.rr_improved_in_phase && now - state.rr_phase_started >= gamma) {
    state.rr_mode = RrMode::kRelax;
    state.rr_failures = 0;
  }
}

namespace {

std::string iteration_tag(const LnsConfig& config, const LnsState& state) {
  if (config.heuristic != Heuristic::kLbRelaxRr) {
    return HeuristicName(config.heuristic);
  }
  return state.rr_mode == RrMode::kRelax ? "LBRELAX_RR:RELAX"
                                         : "LBRELAX_RR:RANDOM";
}

SolveBudget cap_to_remaining(SolveBudget budget, const RunClock& clock,
                             double time_limit) {
  if (clock.measures_seconds() && std::isfinite(time_limit)) {
    const double remaining = std::max(1e-3, time_limit - clock.now());
    budget.time_limit = std::min(budget.time_limit, remaining);
  }
  return budget;
}

}  // namespace

LnsResult run_lns(const IlpInstance& inst, const LnsConfig& config,
                  const Assignment& initial, RunClock& clock,
                  double initial_time, const LnsObserver& observer) {
  config.validate();
  const int n = inst.num_vars();
  if (initial.size() != n || !is_feasible(inst, initial)) {
    throw std::invalid_argument("run_lns: initial solution is infeasible");
  }
  LnsState state;
  state.incumbent = initial;
  state.k = config.k0;
  state.rng.seed(config.seed);
  state.trace.instance = inst.name();
  state.trace.maximization = inst.is_maximization();
  state.trace.config = config;
  state.trace.events.push_back({.wall_time = initial_time,
                                .iteration = -1,
                                .objective = initial.objective(),
                                .heuristic = HeuristicName(config.heuristic),
                                .k = 0,
                                .improved = true,
                                .note = "initial"});

  std::optional<IncidenceGraph> graph;
  if (config.heuristic == Heuristic::kGraph) graph.emplace(inst);

  auto proven_optimal = [&] {
    return config.stop_bound &&
           state.incumbent.objective() <= *config.stop_bound + kImprovementTolerance;
  };
  while (n > 0 && state.t < config.iteration_limit &&
         clock.now() < config.time_limit && !proven_optimal()) {
    const std::string tag = iteration_tag(config, state);
    DestroyResult d;
    switch (config.heuristic) {
      case Heuristic::kRandom:
        d.neighborhood = destroy_random(state, n, state.k);
        break;
      case Heuristic::kGraph:
        d.neighborhood = destroy_graph(*graph, state, state.k);
        break;
      case Heuristic::kLb:
        d = destroy_lb(inst, state, state.k,
                       cap_to_remaining(config.lb_repair_budget, clock,
                                        config.time_limit));
        break;
      case Heuristic::kLbRelax:
        d = destroy_lb_relax(inst, state, state.k, config.lp_iteration_limit);
        break;
      case Heuristic::kLbRelaxS:
        d = destroy_lb_relax_s(inst, state, state.k, config.lp_iteration_limit);
        break;
      case Heuristic::kLbRelaxRr:
        d = step_lb_relax_rr(inst, state, config);
        break;
    }

    std::optional<Assignment> candidate = d.adopted;
    if (!candidate) {
      const Projection proj =
          fix_and_project(inst, state.incumbent, d.neighborhood.indices);
      const BnbResult r = branch_and_bound(
          proj.sub,
          cap_to_remaining(config.repair_budget, clock, config.time_limit),
          Assignment(proj.sub, proj.restrict_values(state.incumbent.values())));
      if (r.best) candidate = proj.lift(inst, r.best->values());
    }
    const bool improved =
        candidate &&
        candidate->objective() <
            state.incumbent.objective() - kImprovementTolerance &&
        is_feasible(inst, *candidate);
    if (improved) state.incumbent = std::move(*candidate);

    clock.tick();
    const double now = clock.now();
    state.trace.events.push_back(
        {.wall_time = now,
         .iteration = state.t,
         .objective = state.incumbent.objective(),
         .heuristic = tag,
         .k = static_cast<int>(d.neighborhood.indices.size()),
         .improved = improved,
         .note = d.note});
    if (config.heuristic == Heuristic::kLbRelaxRr) {
      record_rr_outcome(state, improved, now, config.gamma);
    }
    if (observer.on_iteration) observer.on_iteration(state, d, improved);
    if (config.adaptive_k) {
      state.k = update_neighborhood_size(state, improved, config);
    }
    ++state.t;
  }
  return {state.incumbent, std::move(state.trace)};
}

std::optional<double> proven_lower_bound(const IlpInstance& inst) {
  const LpSolution lp = solve_lp(inst);
  if (lp.status != LpStatus::kOptimal) return std::nullopt;
  for (double c : inst.objective()) {
    if (c != std::floor(c)) return lp.objective;
  }
  return std::ceil(lp.objective - 1e-6);
}

LnsResult run_lns(const IlpInstance& inst, const LnsConfig& config) {
  config.validate();
  WallClock clock;
  const Assignment initial = find_initial_solution(inst, config.initial_budget);
  const double initial_time = clock.now();
  return run_lns(inst, config, initial, clock, initial_time);
}

}  // namespace lbrelax
