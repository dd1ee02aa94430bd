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

// Two-phase bounded-variable primal simplex on a dense tableau.
//
// Solves the LP relaxation min c^T x s.t. rows, 0 <= x <= 1 of an IlpInstance.
// Every row gets a slack (LE, GE) and, where the starting point does not
// satisfy it, an artificial variable that phase 1 drives to zero. EQ rows always
// carry an artificial; it stays in the tableau, fixed at zero, so that row duals
// can be read off the objective row after phase 2.
//
// Pricing is Dantzig (largest reduced cost). After 5*(n+m) consecutive
// degenerate iterations the solver switches to Bland's rule until it makes
// progress again. There is no randomization: identical inputs give identical
// pivot sequences.

#ifndef LBRELAX_SIMPLEX_H_
#define LBRELAX_SIMPLEX_H_

#include <cstdint>
#include <span>
#include <vector>

#include "lbrelax/model.h"

namespace lbrelax {

inline constexpr double kLpPivotTolerance = 1e-9;
inline constexpr double kLpFeasibilityTolerance = 1e-7;
inline constexpr double kLpReducedCostTolerance = 1e-9;

enum class LpStatus { kOptimal, kInfeasible, kIterationLimit };

const char* LpStatusName(LpStatus status);

struct LpOptions {
  // 0 selects the default of 50*(n+m).
  int64_t iteration_limit = 0;
  // Per-variable fixing: -1 free, 0 or 1 fixed. Empty means all free.
  std::span<const int8_t> fixed;
  // Bound each free variable starts at (0 lower, 1 upper). Empty lets the
  // solver pick whichever of all-lower / all-upper violates the rows less.
  std::span<const uint8_t> start;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  FractionalAssignment values;
  double objective = 0.0;
  // Row duals y with reduced costs d = c - A^T y. Filled on kOptimal.
  std::vector<double> duals;
  // True when the iteration limit hit during phase 1; `values` is then not
  // primal feasible.
  bool phase1_unresolved = false;
  int64_t iterations = 0;
};

LpSolution solve_lp(const IlpInstance& inst, int64_t iteration_limit = 0);
LpSolution solve_lp(const IlpInstance& inst, const LpOptions& options);

// Independent KKT check at 1e-7: primal feasibility, dual sign conditions,
// complementary slackness and reduced-cost signs against the [0,1] box.
// Only meaningful for unfixed solves with status kOptimal.
bool check_optimality_certificate(const IlpInstance& inst,
                                  const LpSolution& solution);

}  // namespace lbrelax

#endif  // LBRELAX_SIMPLEX_H_
