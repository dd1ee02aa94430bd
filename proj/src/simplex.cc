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

#include "lbrelax/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lbrelax {

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "Optimal";
    case LpStatus::kInfeasible:
      return "Infeasible";
    case LpStatus::kIterationLimit:
      return "IterationLimit";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Tableau entries below this magnitude are flushed to zero after a pivot.
constexpr double kDropTolerance = 1e-12;
constexpr double kRatioTieTolerance = 1e-11;
constexpr double kDegenerateStep = 1e-12;

class Tableau {
 public:
  Tableau(const IlpInstance& inst, const LpOptions& options);

  LpSolution Solve();

 private:
  enum class PhaseResult { kOptimal, kLimit, kUnbounded };

  double* RowPtr(int i) { return tab_.data() + static_cast<size_t>(i) * cols_; }
  double At(int i, int j) const {
    return tab_[static_cast<size_t>(i) * cols_ + j];
  }

  void ComputeReducedCosts();
  PhaseResult Iterate();
  void Pivot(int row, int col);
  LpSolution Finish(LpStatus status, bool phase1_unresolved);

  const IlpInstance& inst_;
  int n_ = 0;
  int m_ = 0;
  int cols_ = 0;
  int64_t limit_ = 0;
  int64_t iterations_ = 0;

  std::vector<double> tab_;  // m_ x cols_, row-major, equals B^{-1} [A S R]
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> x_;
  std::vector<uint8_t> at_upper_;
  std::vector<int> basis_;     // column basic in each row
  std::vector<int> position_;  // row a column is basic in, or -1
  std::vector<double> cost_;
  std::vector<double> d_;
  std::vector<int> slack_col_;  // per row, -1 if none
  std::vector<double> slack_coef_;
  std::vector<int> art_col_;  // per row, -1 if none
  std::vector<double> art_sign_;
  std::vector<int> pivot_nz_;
};

Tableau::Tableau(const IlpInstance& inst, const LpOptions& options)
    : inst_(inst), n_(inst.num_vars()), m_(inst.num_rows()) {
  if (!options.fixed.empty() &&
      static_cast<int>(options.fixed.size()) != n_) {
    throw std::invalid_argument("solve_lp: fixing vector length mismatch");
  }
  if (!options.start.empty() &&
      static_cast<int>(options.start.size()) != n_) {
    throw std::invalid_argument("solve_lp: start vector length mismatch");
  }
  limit_ = options.iteration_limit > 0 ? options.iteration_limit
                                       : 50 * static_cast<int64_t>(n_ + m_);
  if (limit_ == 0) limit_ = 1;

  // Starting point of the structural columns.
  std::vector<double> start(n_, 0.0);
  std::vector<uint8_t> start_upper(n_, 0);
  auto is_fixed = [&](int j) {
    return !options.fixed.empty() && options.fixed[j] >= 0;
  };
  if (!options.start.empty()) {
    for (int j = 0; j < n_; ++j) start_upper[j] = options.start[j] ? 1 : 0;
  } else {
    // Crash: whichever uniform bound leaves less total row violation.
    std::vector<double> lo(n_), hi(n_);
    for (int j = 0; j < n_; ++j) {
      lo[j] = is_fixed(j) ? options.fixed[j] : 0.0;
      hi[j] = is_fixed(j) ? options.fixed[j] : 1.0;
    }
    double viol_lo = 0.0, viol_hi = 0.0;
    for (const Row& row : inst.rows()) {
      viol_lo += row_violation(row, row_activity(row, lo));
      viol_hi += row_violation(row, row_activity(row, hi));
    }
    if (viol_hi < viol_lo) std::fill(start_upper.begin(), start_upper.end(), 1);
  }
  for (int j = 0; j < n_; ++j) {
    if (is_fixed(j)) {
      start[j] = options.fixed[j];
      start_upper[j] = options.fixed[j] ? 1 : 0;
    } else {
      start[j] = start_upper[j] ? 1.0 : 0.0;
    }
  }

  // Column layout: structurals, then slacks, then artificials.
  slack_col_.assign(m_, -1);
  slack_coef_.assign(m_, 0.0);
  art_col_.assign(m_, -1);
  art_sign_.assign(m_, 0.0);
  std::vector<double> residual(m_);
  int next = n_;
  for (int i = 0; i < m_; ++i) {
    const Row& row = inst.row(i);
    residual[i] = row.rhs - row_activity(row, start);
    if (row.sense != Sense::kEq) {
      slack_col_[i] = next++;
      slack_coef_[i] = row.sense == Sense::kLe ? 1.0 : -1.0;
    }
  }
  for (int i = 0; i < m_; ++i) {
    const Row& row = inst.row(i);
    const bool slack_ok =
        (row.sense == Sense::kLe && residual[i] >= 0.0) ||
        (row.sense == Sense::kGe && residual[i] <= 0.0);
    if (!slack_ok) {
      art_col_[i] = next++;
      art_sign_[i] = residual[i] >= 0.0 ? 1.0 : -1.0;
    }
  }
  cols_ = next;

  lower_.assign(cols_, 0.0);
  upper_.assign(cols_, kInf);
  x_.assign(cols_, 0.0);
  at_upper_.assign(cols_, 0);
  position_.assign(cols_, -1);
  basis_.assign(m_, -1);
  for (int j = 0; j < n_; ++j) {
    if (is_fixed(j)) {
      lower_[j] = upper_[j] = options.fixed[j];
    } else {
      upper_[j] = 1.0;
    }
    x_[j] = start[j];
    at_upper_[j] = start_upper[j];
  }

  tab_.assign(static_cast<size_t>(m_) * cols_, 0.0);
  for (int i = 0; i < m_; ++i) {
    const Row& row = inst.row(i);
    double* r = RowPtr(i);
    int basic;
    double diag;
    if (art_col_[i] >= 0) {
      basic = art_col_[i];
      diag = art_sign_[i];
      upper_[basic] = kInf;
      x_[basic] = std::abs(residual[i]);
    } else {
      basic = slack_col_[i];
      diag = slack_coef_[i];
      x_[basic] = residual[i] * diag;
    }
    // Rows are scaled by 1/diag = diag since |diag| = 1.
    for (const Term& t : row.terms) r[t.var] = t.coef * diag;
    if (slack_col_[i] >= 0) r[slack_col_[i]] = slack_coef_[i] * diag;
    if (art_col_[i] >= 0) r[art_col_[i]] = art_sign_[i] * diag;
    basis_[i] = basic;
    position_[basic] = i;
  }
  cost_.assign(cols_, 0.0);
  d_.assign(cols_, 0.0);
}

void Tableau::ComputeReducedCosts() {
  d_ = cost_;
  for (int i = 0; i < m_; ++i) {
    const double cb = cost_[basis_[i]];
    if (cb == 0.0) continue;
    const double* r = RowPtr(i);
    for (int j = 0; j < cols_; ++j) {
      if (r[j] != 0.0) d_[j] -= cb * r[j];
    }
  }
  for (int i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
}

void Tableau::Pivot(int row, int col) {
  double* pr = RowPtr(row);
  const double inv = 1.0 / pr[col];
  pivot_nz_.clear();
  for (int c = 0; c < cols_; ++c) {
    if (pr[c] == 0.0) continue;
    pr[c] *= inv;
    if (std::abs(pr[c]) < kDropTolerance) {
      pr[c] = 0.0;
    } else {
      pivot_nz_.push_back(c);
    }
  }
  pr[col] = 1.0;
  for (int i = 0; i < m_; ++i) {
    if (i == row) continue;
    double* r = RowPtr(i);
    const double f = r[col];
    if (f == 0.0) continue;
    for (int c : pivot_nz_) {
      double v = r[c] - f * pr[c];
      if (std::abs(v) < kDropTolerance) v = 0.0;
      r[c] = v;
    }
    r[col] = 0.0;
  }
  const double f = d_[col];
  if (f != 0.0) {
    for (int c : pivot_nz_) d_[c] -= f * pr[c];
  }
  d_[col] = 0.0;
}

Tableau::PhaseResult Tableau::Iterate() {
  const int64_t degenerate_cap = 5 * static_cast<int64_t>(n_ + m_);
  int64_t degenerate_run = 0;
  bool bland = false;
  while (true) {
    int enter = -1;
    double best = kLpReducedCostTolerance;
    for (int j = 0; j < cols_; ++j) {
      if (position_[j] >= 0 || lower_[j] == upper_[j]) continue;
      const double score = at_upper_[j] ? d_[j] : -d_[j];
      if (score > best) {
        enter = j;
        if (bland) break;
        best = score;
      }
    }
    if (enter < 0) return PhaseResult::kOptimal;
    if (iterations_ >= limit_) return PhaseResult::kLimit;
    ++iterations_;

    const double sigma = at_upper_[enter] ? -1.0 : 1.0;
    double theta = upper_[enter] - lower_[enter];
    int leave = -1;
    bool leave_to_upper = false;
    double leave_alpha = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double a = At(i, enter);
      if (std::abs(a) <= kLpPivotTolerance) continue;
      const int b = basis_[i];
      const double rate = -sigma * a;
      double limit;
      bool to_upper;
      if (rate < 0.0) {
        limit = (x_[b] - lower_[b]) / -rate;
        to_upper = false;
      } else {
        if (upper_[b] == kInf) continue;
        limit = (upper_[b] - x_[b]) / rate;
        to_upper = true;
      }
      if (limit < 0.0) limit = 0.0;
      bool take = false;
      if (limit < theta - kRatioTieTolerance) {
        take = true;
      } else if (leave >= 0 && limit <= theta + kRatioTieTolerance) {
        take = bland ? b < basis_[leave] : std::abs(a) > std::abs(leave_alpha);
      }
      if (take) {
        theta = std::min(theta, limit);
        leave = i;
        leave_to_upper = to_upper;
        leave_alpha = a;
      }
    }
    if (leave < 0 && theta == kInf) return PhaseResult::kUnbounded;
    if (leave >= 0) {
      // The accepted ratio may sit inside the tie window above theta.
      const int b = basis_[leave];
      const double rate = -sigma * leave_alpha;
      theta = rate < 0.0 ? (x_[b] - lower_[b]) / -rate
                         : (upper_[b] - x_[b]) / rate;
      if (theta < 0.0) theta = 0.0;
    }

    const double step = sigma * theta;
    if (step != 0.0) {
      for (int i = 0; i < m_; ++i) {
        const double a = At(i, enter);
        if (a != 0.0) x_[basis_[i]] -= step * a;
      }
      x_[enter] += step;
    }
    if (leave < 0) {
      at_upper_[enter] = !at_upper_[enter];
      x_[enter] = at_upper_[enter] ? upper_[enter] : lower_[enter];
    } else {
      const int b = basis_[leave];
      x_[b] = leave_to_upper ? upper_[b] : lower_[b];
      at_upper_[b] = leave_to_upper;
      position_[b] = -1;
      basis_[leave] = enter;
      position_[enter] = leave;
      Pivot(leave, enter);
    }

    if (theta <= kDegenerateStep) {
      if (++degenerate_run > degenerate_cap) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }
}

LpSolution Tableau::Finish(LpStatus status, bool phase1_unresolved) {
  LpSolution sol;
  sol.status = status;
  sol.phase1_unresolved = phase1_unresolved;
  sol.iterations = iterations_;
  std::vector<double> values(x_.begin(), x_.begin() + n_);
  sol.values = FractionalAssignment(inst_, std::move(values));
  sol.objective = sol.values.objective();
  if (status == LpStatus::kOptimal) {
    sol.duals.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (slack_col_[i] >= 0) {
        sol.duals[i] = -d_[slack_col_[i]] / slack_coef_[i];
      } else {
        sol.duals[i] = -d_[art_col_[i]] / art_sign_[i];
      }
    }
  }
  return sol;
}

LpSolution Tableau::Solve() {
  bool need_phase1 = false;
  for (int i = 0; i < m_; ++i) {
    if (art_col_[i] >= 0 && x_[art_col_[i]] > 0.0) need_phase1 = true;
  }
  if (need_phase1) {
    for (int i = 0; i < m_; ++i) {
      if (art_col_[i] >= 0) cost_[art_col_[i]] = 1.0;
    }
    ComputeReducedCosts();
    const PhaseResult r = Iterate();
    double infeasibility = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (art_col_[i] >= 0) infeasibility += std::max(0.0, x_[art_col_[i]]);
    }
    if (r != PhaseResult::kOptimal) {
      return Finish(LpStatus::kIterationLimit, true);
    }
    if (infeasibility > kLpFeasibilityTolerance) {
      return Finish(LpStatus::kInfeasible, false);
    }
  }
  // Artificials are pinned at zero for phase 2 but kept for dual recovery.
  for (int i = 0; i < m_; ++i) {
    if (art_col_[i] >= 0) {
      upper_[art_col_[i]] = 0.0;
      cost_[art_col_[i]] = 0.0;
    }
  }
  const auto c = inst_.objective();
  for (int j = 0; j < n_; ++j) cost_[j] = c[j];
  ComputeReducedCosts();
  const PhaseResult r = Iterate();
  if (r == PhaseResult::kOptimal) return Finish(LpStatus::kOptimal, false);
  return Finish(LpStatus::kIterationLimit, false);
}

}  // namespace

LpSolution solve_lp(const IlpInstance& inst, int64_t iteration_limit) {
  LpOptions options;
  options.iteration_limit = iteration_limit;
  return solve_lp(inst, options);
}

LpSolution solve_lp(const IlpInstance& inst, const LpOptions& options) {
  Tableau tableau(inst, options);
  return tableau.Solve();
}

bool check_optimality_certificate(const IlpInstance& inst,
                                  const LpSolution& solution) {
  constexpr double tol = 1e-7;
  if (solution.status != LpStatus::kOptimal) return false;
  const int n = inst.num_vars();
  const int m = inst.num_rows();
  const auto& x = solution.values.values();
  if (static_cast<int>(x.size()) != n ||
      static_cast<int>(solution.duals.size()) != m) {
    return false;
  }
  for (double v : x) {
    if (v < -tol || v > 1.0 + tol) return false;
  }
  std::vector<double> d(inst.objective().begin(), inst.objective().end());
  for (int i = 0; i < m; ++i) {
    const Row& row = inst.row(i);
    const double activity = row_activity(row, x);
    if (row_violation(row, activity) > tol) return false;
    const double y = solution.duals[i];
    if (row.sense == Sense::kLe && y > tol) return false;
    if (row.sense == Sense::kGe && y < -tol) return false;
    if (std::abs(activity - row.rhs) > tol && std::abs(y) > tol) return false;
    for (const Term& t : row.terms) d[t.var] -= y * t.coef;
  }
  for (int j = 0; j < n; ++j) {
    if (x[j] <= tol) {
      if (d[j] < -tol) return false;
    } else if (x[j] >= 1.0 - tol) {
      if (d[j] > tol) return false;
    } else if (std::abs(d[j]) > tol) {
      return false;
    }
  }
  return true;
}

}  // namespace lbrelax
