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

// Large Neighborhood Search for binary ILPs.
//
// Each iteration picks a set of variables to destroy, re-optimizes them with
// branch-and-bound while every other variable keeps its incumbent value, and
// accepts the result only if it strictly improves the incumbent. The destroy
// heuristics are:
//
//   RANDOM      uniform sample of k variables.
//   GRAPH       breadth-first search over the variable/constraint incidence
//               graph from a random variable.
//   LB          solve the Local Branching ILP (Hamming ball of radius k around
//               the incumbent) and destroy the variables that changed.
//   LBRELAX     solve the LP relaxation of the Local Branching ILP and destroy
//               the k variables whose relaxed value moved the most.
//   LBRELAX_S   as LBRELAX but sample uniformly among the moved variables.
//   LBRELAX_RR  LBRELAX that falls back to RANDOM after two consecutive
//               failures, and returns once it has spent gamma time units in the
//               random phase and improved there.
//
// The neighborhood size k grows by a factor alpha after every non-improving
// iteration and is capped at floor(beta * n).

#ifndef LBRELAX_LNS_H_
#define LBRELAX_LNS_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lbrelax/exact.h"
#include "lbrelax/model.h"

namespace lbrelax {

enum class Heuristic { kRandom, kGraph, kLb, kLbRelax, kLbRelaxS, kLbRelaxRr };

inline constexpr Heuristic kAllHeuristics[] = {
    Heuristic::kRandom,  Heuristic::kGraph,    Heuristic::kLb,
    Heuristic::kLbRelax, Heuristic::kLbRelaxS, Heuristic::kLbRelaxRr};

const char* HeuristicName(Heuristic h);
// Accepts the names above, case-insensitively, with '-' or '_'.
std::optional<Heuristic> ParseHeuristic(std::string_view name);

// Membership threshold for the moved-variable set of the LB relaxation.
inline constexpr double kDeltaThreshold = 1e-9;
// Minimum objective decrease for a candidate to replace the incumbent.
inline constexpr double kImprovementTolerance = 1e-9;

struct Neighborhood {
  std::vector<int> indices;  // sorted, deduplicated
  int k = 0;                 // size requested, min(k_t, n)
};

struct LnsConfig {
  int k0 = 30;
  double alpha = 1.02;
  double beta = 0.5;
  SolveBudget repair_budget;
  SolveBudget lb_repair_budget;
  SolveBudget initial_budget;
  double gamma = 30.0;
  // Run length, in units of the run clock, and in iterations.
  double time_limit = std::numeric_limits<double>::infinity();
  int64_t iteration_limit = std::numeric_limits<int64_t>::max();
  uint64_t seed = 0;
  Heuristic heuristic = Heuristic::kLbRelax;
  // false keeps k_t = k0 throughout.
  bool adaptive_k = true;
  // Simplex iteration cap for the LB relaxation; 0 uses the solver default.
  int64_t lp_iteration_limit = 0;
  // Proven lower bound on the internal objective. The run ends once the
  // incumbent reaches it, since no later iteration could improve.
  std::optional<double> stop_bound;

  // Throws std::invalid_argument unless alpha > 1, 0 < beta <= 1, k0 >= 1,
  // gamma > 0, budgets valid and at least one run limit finite.
  void validate() const;
};

enum class RrMode { kRelax, kRandomized };

struct TraceEvent {
  double wall_time = 0.0;
  int64_t iteration = 0;  // -1 for the initial solution
  double objective = 0.0;  // internal (minimization) sense
  std::string heuristic;
  int k = 0;  // neighborhood size used
  bool improved = false;
  std::string note;
};

struct RunTrace {
  std::string instance;
  bool maximization = false;
  LnsConfig config;
  std::vector<TraceEvent> events;
};

struct LnsState {
  Assignment incumbent;
  int64_t t = 0;
  int k = 1;
  RrMode rr_mode = RrMode::kRelax;
  int rr_failures = 0;
  double rr_phase_started = 0.0;
  bool rr_improved_in_phase = false;
  std::mt19937_64 rng;
  RunTrace trace;
};

// Time source of a run. Wall clocks measure seconds since construction;
// iteration clocks count completed iterations, which makes every decision of
// a run reproducible.
class RunClock {
 public:
  virtual ~RunClock() = default;
  virtual double now() const = 0;
  // Called by the engine after every iteration.
  virtual void tick() {}
  virtual bool measures_seconds() const { return true; }
};

class WallClock : public RunClock {
 public:
  // Starts reading `offset` seconds, e.g. the time already spent on the
  // initial solution.
  explicit WallClock(double offset = 0.0);
  double now() const override;

 private:
  std::chrono::steady_clock::time_point start_;
  double offset_;
};

class IterationClock : public RunClock {
 public:
  double now() const override { return static_cast<double>(count_); }
  void tick() override { ++count_; }
  bool measures_seconds() const override { return false; }

 private:
  int64_t count_ = 0;
};

class ManualClock : public RunClock {
 public:
  double now() const override { return time_; }
  void set(double t) { time_ = t; }
  void advance(double dt) { time_ += dt; }
  bool measures_seconds() const override { return false; }

 private:
  double time_ = 0.0;
};

// k unchanged on improvement; otherwise min(ceil(alpha*k), floor(beta*n)),
// never below 1.
int next_neighborhood_size(int k, bool improved, double alpha, double beta,
                           int n);
int update_neighborhood_size(const LnsState& state, bool improved,
                             const LnsConfig& config);

// Uniform sample of `count` distinct members of `pool`, returned sorted.
std::vector<int> sample_without_replacement(std::span<const int> pool,
                                            int count, std::mt19937_64& rng);

Neighborhood destroy_random(LnsState& state, int n, int k);

// Variable/constraint incidence graph used by GRAPH.
class IncidenceGraph {
 public:
  explicit IncidenceGraph(const IlpInstance& inst);

  int num_vars() const { return static_cast<int>(var_rows_.size()); }
  const std::vector<int>& rows_of(int var) const { return var_rows_[var]; }
  const std::vector<int>& vars_of(int row) const { return row_vars_[row]; }
  int num_rows() const { return static_cast<int>(row_vars_.size()); }

 private:
  std::vector<std::vector<int>> var_rows_;
  std::vector<std::vector<int>> row_vars_;
};

// BFS from a random variable; when a component runs out before k variables
// are collected, restarts from a uniformly random unvisited variable.
Neighborhood destroy_graph(const IncidenceGraph& graph, LnsState& state,
                           int k);

struct DestroyResult {
  Neighborhood neighborhood;
  // Improving solution found while selecting the neighborhood (LB only).
  std::optional<Assignment> adopted;
  // |xbar_i - x_i| of the LB relaxation, rounded to 1e-9 (LBRELAX family).
  std::vector<double> deltas;
  std::string note;
};

DestroyResult destroy_lb(const IlpInstance& inst, LnsState& state, int k,
                         const SolveBudget& budget);

// Deltas rounded to a 1e-9 grid so that exact comparisons are meaningful.
std::vector<double> relaxation_deltas(std::span<const double> relaxed,
                                      std::span<const uint8_t> incumbent);

// Neighborhood from deltas: greedy top-k with random tie-breaking, or a
// uniform sample of the moved set; padded uniformly from the unmoved variables
// when fewer than k moved.
Neighborhood select_by_deltas(std::span<const double> deltas, int k,
                              bool greedy, std::mt19937_64& rng);

DestroyResult destroy_lb_relax(const IlpInstance& inst, LnsState& state, int k,
                               int64_t lp_iteration_limit = 0);
DestroyResult destroy_lb_relax_s(const IlpInstance& inst, LnsState& state,
                                 int k, int64_t lp_iteration_limit = 0);

// LBRELAX_RR destroy step: LBRELAX in Relax mode, RANDOM in Randomized mode.
DestroyResult step_lb_relax_rr(const IlpInstance& inst, LnsState& state,
                               const LnsConfig& config);

// Mode transition after an LBRELAX_RR iteration that finished at `now`.
void record_rr_outcome(LnsState& state, bool improved, double now,
                       double gamma);

struct LnsObserver {
  std::function<void(const LnsState&, const DestroyResult&, bool improved)>
      on_iteration;
};

struct LnsResult {
  Assignment best;
  RunTrace trace;
};

// Root LP bound, rounded up when every objective coefficient is integral.
// nullopt if the LP is not solved to optimality.
std::optional<double> proven_lower_bound(const IlpInstance& inst);

// Runs LNS from a feasible `initial` solution. The initial event is stamped
// `initial_time` (time already spent finding `initial`).
LnsResult run_lns(const IlpInstance& inst, const LnsConfig& config,
                  const Assignment& initial, RunClock& clock,
                  double initial_time = 0.0, const LnsObserver& observer = {});

// Finds the initial solution with config.initial_budget, then runs on a wall
// clock. Throws NoSolutionError if no initial solution is found.
LnsResult run_lns(const IlpInstance& inst, const LnsConfig& config);

}  // namespace lbrelax

#endif  // LBRELAX_LNS_H_
