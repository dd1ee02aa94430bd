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

// Exact solvers for binary ILPs: an LP-based branch-and-bound used for LNS
// repairs, initial solutions and the Local Branching baseline, and an
// exhaustive enumerator used as a test oracle.

#ifndef LBRELAX_EXACT_H_
#define LBRELAX_EXACT_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>

#include "lbrelax/model.h"

namespace lbrelax {

enum class BnbStatus {
  kOptimal,
  kFeasibleTimeout,
  kInfeasibleProven,
  kNoSolutionTimeout,
};

const char* BnbStatusName(BnbStatus status);

struct SolveBudget {
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
  int64_t node_limit = std::numeric_limits<int64_t>::max();
  double gap_limit = 1e-6;  // relative

  // Throws std::invalid_argument on non-positive limits, and with
  // `require_finite` also when neither the time nor the node limit is finite.
  void validate(bool require_finite = false) const;
};

struct BnbResult {
  std::optional<Assignment> best;
  double bound = -std::numeric_limits<double>::infinity();
  BnbStatus status = BnbStatus::kNoSolutionTimeout;
  int64_t nodes_explored = 0;
  double wall_time = 0.0;
};

// Optional hooks into a branch-and-bound solve.
struct BnbObserver {
  // Called for each new incumbent, in order of discovery.
  std::function<void(const Assignment&)> on_incumbent;
  // Called after each node LP with (node bound, global bound before the node).
  std::function<void(double, double)> on_node;
  // Stop as soon as any incumbent that is not the warm start exists.
  bool stop_at_first_incumbent = false;
};

// Best-bound branch-and-bound over LP relaxations, plunging depth-first until
// the first incumbent. Branches on the most fractional variable (lowest index
// on ties), 1-branch first when the LP value is >= 0.5. Every node tries the
// nearest rounding of its LP point. `warm_start`, when given, must be feasible.
// Time limits are checked every 64 nodes; node limits make the result fully
// deterministic.
BnbResult branch_and_bound(const IlpInstance& inst, const SolveBudget& budget,
                           const std::optional<Assignment>& warm_start = {},
                           const BnbObserver& observer = {});

// Exhaustive enumeration in Gray-code order; throws std::invalid_argument for
// n > 24. Among equal optima the first one in enumeration order is returned.
BnbResult brute_force(const IlpInstance& inst);

// First incumbent of branch_and_bound under `budget`. Throws
// NoSolutionError when no incumbent was found.
Assignment find_initial_solution(const IlpInstance& inst,
                                 const SolveBudget& budget);

class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lbrelax

#endif  // LBRELAX_EXACT_H_
