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

#include "lbrelax/exact.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "lbrelax/simplex.h"

namespace lbrelax {

const char* BnbStatusName(BnbStatus status) {
  switch (status) {
    case BnbStatus::kOptimal:
      return "Optimal";
    case BnbStatus::kFeasibleTimeout:
      return "FeasibleTimeout";
    case BnbStatus::kInfeasibleProven:
      return "InfeasibleProven";
    case BnbStatus::kNoSolutionTimeout:
      return "NoSolutionTimeout";
  }
  return "?";
}

void SolveBudget::validate(bool require_finite) const {
  if (!(time_limit > 0.0) || node_limit <= 0 || !(gap_limit >= 0.0)) {
    throw std::invalid_argument("solve budget limits must be positive");
  }
  if (require_finite && std::isinf(time_limit) &&
      node_limit == std::numeric_limits<int64_t>::max()) {
    throw std::invalid_argument(
        "solve budget needs a finite time or node limit");
  }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntegralityTolerance = 1e-6;
constexpr int kTimeCheckInterval = 64;

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Node {
  double bound = -kInf;  // LP bound of the parent
  int depth = 0;
  int64_t id = 0;
  std::vector<std::pair<int, int8_t>> fixes;
};

// Best bound first; deeper, then older, nodes win ties.
struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const IlpInstance& inst, const SolveBudget& budget,
                 const BnbObserver& observer)
      : inst_(inst), budget_(budget), observer_(observer) {
    integral_objective_ = std::all_of(
        inst.objective().begin(), inst.objective().end(),
        [](double c) { return c == std::floor(c); });
  }

  BnbResult Run(const std::optional<Assignment>& warm_start);

 private:
  bool HasIncumbent() const { return incumbent_.has_value(); }
  double IncumbentValue() const {
    return incumbent_ ? incumbent_->objective() : kInf;
  }
  // True when no node with this bound can hold a better solution.
  bool Prunable(double bound) const;
  void Offer(std::vector<uint8_t> values);
  double OpenBound() const;
  Node PopNext();
  void Push(Node node);
  void ProcessNode(const Node& node);

  const IlpInstance& inst_;
  SolveBudget budget_;
  const BnbObserver& observer_;
  bool integral_objective_ = false;
  bool best_first_ = false;
  bool found_new_ = false;
  std::optional<Assignment> incumbent_;
  std::vector<Node> open_;
  int64_t next_id_ = 0;
};

bool BranchAndBound::Prunable(double bound) const {
  if (!HasIncumbent()) return false;
  const double inc = IncumbentValue();
  if (integral_objective_ && bound > inc - 1.0 + kIntegralityTolerance) {
    return true;
  }
  const double slack =
      std::max(1e-9, budget_.gap_limit * std::max(1.0, std::abs(inc)));
  return bound >= inc - slack;
}

void BranchAndBound::Offer(std::vector<uint8_t> values) {
  if (!is_feasible(inst_, values)) return;
  Assignment candidate(inst_, std::move(values));
  if (candidate.objective() < IncumbentValue() - 1e-9) {
    incumbent_ = std::move(candidate);
    found_new_ = true;
    if (observer_.on_incumbent) observer_.on_incumbent(*incumbent_);
  }
}

double BranchAndBound::OpenBound() const {
  double b = kInf;
  for (const Node& n : open_) b = std::min(b, n.bound);
  return b;
}

void BranchAndBound::Push(Node node) {
  node.id = next_id_++;
  open_.push_back(std::move(node));
  if (best_first_) std::push_heap(open_.begin(), open_.end(), WorseNode{});
}

Node BranchAndBound::PopNext() {
  if (!best_first_ && HasIncumbent()) {
    best_first_ = true;
    std::make_heap(open_.begin(), open_.end(), WorseNode{});
  }
  if (best_first_) {
    std::pop_heap(open_.begin(), open_.end(), WorseNode{});
  }
  Node node = std::move(open_.back());
  open_.pop_back();
  return node;
}

void BranchAndBound::ProcessNode(const Node& node) {
  const int n = inst_.num_vars();
  std::vector<int8_t> fixed(n, -1);
  for (const auto& [var, value] : node.fixes) fixed[var] = value;

  LpOptions options;
  options.fixed = fixed;
  if (incumbent_) options.start = incumbent_->values();
  const LpSolution lp = solve_lp(inst_, options);
  if (lp.status == LpStatus::kInfeasible) return;

  double bound = node.bound;
  if (lp.status == LpStatus::kOptimal) bound = std::max(bound, lp.objective);
  if (observer_.on_node) {
    observer_.on_node(bound, std::min(OpenBound(), node.bound));
  }
  if (Prunable(bound)) return;

  const auto& x = lp.values.values();
  int branch_var = -1;
  double best_dist = kInf;
  bool integral = true;
  std::vector<uint8_t> rounded(n);
  for (int j = 0; j < n; ++j) {
    rounded[j] = x[j] >= 0.5 ? 1 : 0;
    const double frac = std::abs(x[j] - rounded[j]);
    if (frac > kIntegralityTolerance) {
      integral = false;
      const double dist = std::abs(x[j] - 0.5);
      if (dist < best_dist) {
        best_dist = dist;
        branch_var = j;
      }
    }
  }
  if (!lp.phase1_unresolved) Offer(rounded);
  if (lp.status == LpStatus::kOptimal && integral) {
    if (is_feasible(inst_, rounded)) return;
    // LP point within tolerance of an infeasible rounding; keep branching.
  }
  if (branch_var < 0) {
    for (int j = 0; j < n; ++j) {
      if (fixed[j] < 0) {
        branch_var = j;
        break;
      }
    }
  }
  if (branch_var < 0) return;
  if (Prunable(bound)) return;

  const int8_t preferred = x[branch_var] >= 0.5 ? 1 : 0;
  for (int8_t value : {static_cast<int8_t>(1 - preferred), preferred}) {
    Node child;
    child.bound = bound;
    child.depth = node.depth + 1;
    child.fixes = node.fixes;
    child.fixes.emplace_back(branch_var, value);
    Push(std::move(child));
  }
}

BnbResult BranchAndBound::Run(const std::optional<Assignment>& warm_start) {
  const auto start = Clock::now();
  BnbResult result;
  if (warm_start) {
    if (warm_start->size() != inst_.num_vars() ||
        !is_feasible(inst_, *warm_start)) {
      throw std::invalid_argument("branch_and_bound: infeasible warm start");
    }
    incumbent_ = *warm_start;
  }
  Push(Node{});

  bool limit_hit = false;
  bool gap_closed = false;
  while (!open_.empty()) {
    if (observer_.stop_at_first_incumbent && found_new_) {
      limit_hit = true;
      break;
    }
    if (result.nodes_explored >= budget_.node_limit) {
      limit_hit = true;
      break;
    }
    if (result.nodes_explored % kTimeCheckInterval == 0 &&
        result.nodes_explored > 0 && SecondsSince(start) >= budget_.time_limit) {
      limit_hit = true;
      break;
    }
    if (best_first_ && HasIncumbent() && Prunable(open_.front().bound)) {
      gap_closed = true;
      break;
    }
    Node node = PopNext();
    ++result.nodes_explored;
    if (Prunable(node.bound)) continue;
    ProcessNode(node);
  }

  result.best = incumbent_;
  if (!limit_hit) {
    if (incumbent_) {
      result.status = BnbStatus::kOptimal;
      double open = OpenBound();
      if (integral_objective_) open = std::ceil(open - kIntegralityTolerance);
      result.bound = gap_closed ? std::min(IncumbentValue(), open)
                                : IncumbentValue();
    } else {
      result.status = BnbStatus::kInfeasibleProven;
      result.bound = kInf;
    }
  } else {
    result.status = incumbent_ ? BnbStatus::kFeasibleTimeout
                               : BnbStatus::kNoSolutionTimeout;
    result.bound = std::min(IncumbentValue(), OpenBound());
  }
  result.wall_time = SecondsSince(start);
  return result;
}

}  // namespace

BnbResult branch_and_bound(const IlpInstance& inst, const SolveBudget& budget,
                           const std::optional<Assignment>& warm_start,
                           const BnbObserver& observer) {
  budget.validate();
  BranchAndBound solver(inst, budget, observer);
  return solver.Run(warm_start);
}

BnbResult brute_force(const IlpInstance& inst) {
  const int n = inst.num_vars();
  if (n > 24) {
    throw std::invalid_argument("brute_force: " + std::to_string(n) +
                                " variables exceed the limit of 24");
  }
  const auto start = Clock::now();
  const auto columns = build_columns(inst);
  const auto c = inst.objective();
  const int m = inst.num_rows();

  std::vector<uint8_t> values(n, 0);
  std::vector<double> activity(m, 0.0);
  std::vector<uint8_t> violated(m, 0);
  int num_violated = 0;
  for (int i = 0; i < m; ++i) {
    violated[i] = row_violation(inst.row(i), 0.0) > kFeasibilityTolerance;
    num_violated += violated[i];
  }
  double objective = 0.0;

  BnbResult result;
  auto consider = [&] {
    if (num_violated != 0) return;
    if (result.best && objective >= result.best->objective() + 1e-9) return;
    Assignment candidate(inst, values);
    if (!result.best || candidate.objective() < result.best->objective()) {
      result.best = std::move(candidate);
    }
  };
  consider();
  const uint64_t total = uint64_t{1} << n;
  for (uint64_t step = 1; step < total; ++step) {
    const int j = std::countr_zero(step);
    values[j] ^= 1;
    const double sign = values[j] ? 1.0 : -1.0;
    objective += sign * c[j];
    for (const ColumnEntry& e : columns[j]) {
      activity[e.row] += sign * e.coef;
      const bool v =
          row_violation(inst.row(e.row), activity[e.row]) >
          kFeasibilityTolerance;
      num_violated += static_cast<int>(v) - static_cast<int>(violated[e.row]);
      violated[e.row] = v;
    }
    consider();
  }
  result.nodes_explored = static_cast<int64_t>(total);
  if (result.best) {
    result.status = BnbStatus::kOptimal;
    result.bound = result.best->objective();
  } else {
    result.status = BnbStatus::kInfeasibleProven;
    result.bound = kInf;
  }
  result.wall_time = SecondsSince(start);
  return result;
}

Assignment find_initial_solution(const IlpInstance& inst,
                                 const SolveBudget& budget) {
  BnbObserver observer;
  observer.stop_at_first_incumbent = true;
  BnbResult r = branch_and_bound(inst, budget, std::nullopt, observer);
  if (!r.best) {
    throw NoSolutionError("no initial solution for '" + inst.name() + "' (" +
                          BnbStatusName(r.status) + ")");
  }
  return *r.best;
}

}  // namespace lbrelax
