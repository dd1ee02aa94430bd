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

#include "lbrelax/model.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace lbrelax {

const char* SenseName(Sense sense) {
  switch (sense) {
    case Sense::kLe:
      return "LE";
    case Sense::kGe:
      return "GE";
    case Sense::kEq:
      return "EQ";
  }
  return "?";
}

IlpInstance::IlpInstance(std::string name, std::vector<double> objective,
                         std::vector<Row> rows, bool maximization)
    : name_(std::move(name)),
      objective_(std::move(objective)),
      rows_(std::move(rows)),
      maximization_(maximization) {
  const int n = num_vars();
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(objective_[j])) {
      throw std::invalid_argument("objective coefficient of variable " +
                                  std::to_string(j) + " is not finite");
    }
  }
  std::vector<int> seen(n, -1);
  for (int i = 0; i < num_rows(); ++i) {
    const Row& r = rows_[i];
    if (!std::isfinite(r.rhs)) {
      throw std::invalid_argument("rhs of row " + std::to_string(i) +
                                  " is not finite");
    }
    for (const Term& t : r.terms) {
      if (t.var < 0 || t.var >= n) {
        throw std::invalid_argument("row " + std::to_string(i) +
                                    " references variable " +
                                    std::to_string(t.var) + " outside [0, " +
                                    std::to_string(n) + ")");
      }
      if (seen[t.var] == i) {
        throw std::invalid_argument("row " + std::to_string(i) +
                                    " holds variable " + std::to_string(t.var) +
                                    " twice");
      }
      seen[t.var] = i;
      if (!std::isfinite(t.coef)) {
        throw std::invalid_argument("row " + std::to_string(i) +
                                    " has a non-finite coefficient");
      }
    }
  }
}

double IlpInstance::evaluate(std::span<const uint8_t> values) const {
  double obj = 0.0;
  for (int j = 0; j < num_vars(); ++j) {
    if (values[j]) obj += objective_[j];
  }
  return obj;
}

IlpInstance normalize(const RawProblem& raw) {
  const int n = static_cast<int>(raw.objective.size());
  if (!raw.var_is_binary.empty()) {
    for (int j = 0; j < n; ++j) {
      if (!raw.var_is_binary[j]) {
        const std::string name = j < static_cast<int>(raw.var_names.size())
                                     ? raw.var_names[j]
                                     : "x" + std::to_string(j);
        throw std::invalid_argument("variable '" + name + "' is not binary");
      }
    }
  }
  std::vector<double> objective = raw.objective;
  if (raw.maximize) {
    for (double& c : objective) c = -c;
  }
  std::vector<Row> rows;
  rows.reserve(raw.rows.size());
  for (const RawProblem::RawRow& raw_row : raw.rows) {
    std::map<int, double> merged;
    for (const Term& t : raw_row.terms) merged[t.var] += t.coef;
    Row row{.terms = {}, .sense = raw_row.sense, .rhs = raw_row.rhs};
    for (const auto& [var, coef] : merged) {
      if (coef != 0.0) row.terms.push_back({var, coef});
    }
    rows.push_back(std::move(row));
  }
  return IlpInstance(raw.name, std::move(objective), std::move(rows),
                     raw.maximize);
}

Assignment::Assignment(const IlpInstance& inst, std::vector<uint8_t> values)
    : values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != inst.num_vars()) {
    throw std::invalid_argument("assignment has " +
                                std::to_string(values_.size()) +
                                " entries, instance has " +
                                std::to_string(inst.num_vars()) + " variables");
  }
  for (uint8_t v : values_) {
    if (v > 1) throw std::invalid_argument("assignment entry is not 0/1");
  }
  objective_ = inst.evaluate(values_);
}

FractionalAssignment::FractionalAssignment(const IlpInstance& inst,
                                           std::vector<double> values)
    : values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != inst.num_vars()) {
    throw std::invalid_argument("fractional assignment length mismatch");
  }
  const auto c = inst.objective();
  for (size_t j = 0; j < values_.size(); ++j) {
    values_[j] = std::clamp(values_[j], 0.0, 1.0);
    objective_ += c[j] * values_[j];
  }
}

double row_activity(const Row& row, std::span<const double> values) {
  double a = 0.0;
  for (const Term& t : row.terms) a += t.coef * values[t.var];
  return a;
}

double row_activity(const Row& row, std::span<const uint8_t> values) {
  double a = 0.0;
  for (const Term& t : row.terms) {
    if (values[t.var]) a += t.coef;
  }
  return a;
}

double row_violation(const Row& row, double activity) {
  switch (row.sense) {
    case Sense::kLe:
      return std::max(0.0, activity - row.rhs);
    case Sense::kGe:
      return std::max(0.0, row.rhs - activity);
    case Sense::kEq:
      return std::abs(activity - row.rhs);
  }
  return 0.0;
}

FeasibilityReport is_feasible(const IlpInstance& inst,
                              std::span<const uint8_t> values) {
  if (static_cast<int>(values.size()) != inst.num_vars()) {
    throw std::invalid_argument("feasibility check: length mismatch");
  }
  for (int i = 0; i < inst.num_rows(); ++i) {
    const Row& row = inst.row(i);
    const double v = row_violation(row, row_activity(row, values));
    if (v > kFeasibilityTolerance) return {false, i, v};
  }
  return {};
}

FeasibilityReport is_feasible(const IlpInstance& inst, const Assignment& x) {
  return is_feasible(inst, std::span<const uint8_t>(x.values()));
}

int hamming_distance(std::span<const uint8_t> a, std::span<const uint8_t> b) {
  int d = 0;
  for (size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

IlpInstance build_lb_ilp(const IlpInstance& inst, const Assignment& incumbent,
                         int k) {
  const int n = inst.num_vars();
  if (k < 1 || k > n) {
    throw std::invalid_argument("local branching radius " + std::to_string(k) +
                                " outside [1, " + std::to_string(n) + "]");
  }
  if (!is_feasible(inst, incumbent)) {
    throw std::invalid_argument("local branching incumbent is infeasible");
  }
  std::vector<Row> rows = inst.rows();
  Row ball{.terms = {}, .sense = Sense::kLe, .rhs = 0.0};
  int ones = 0;
  ball.terms.reserve(n);
  for (int j = 0; j < n; ++j) {
    if (incumbent[j]) {
      ball.terms.push_back({j, -1.0});
      ++ones;
    } else {
      ball.terms.push_back({j, 1.0});
    }
  }
  ball.rhs = static_cast<double>(k - ones);
  rows.push_back(std::move(ball));
  return IlpInstance(inst.name() + "/lb", std::vector<double>(
                         inst.objective().begin(), inst.objective().end()),
                     std::move(rows), inst.is_maximization());
}

std::vector<uint8_t> Projection::restrict_values(
    std::span<const uint8_t> full) const {
  std::vector<uint8_t> out(to_original.size());
  for (size_t j = 0; j < to_original.size(); ++j) {
    out[j] = full[to_original[j]];
  }
  return out;
}

Assignment Projection::lift(const IlpInstance& inst,
                            std::span<const uint8_t> sub_values) const {
  if (sub_values.size() != to_original.size()) {
    throw std::invalid_argument("lift: sub-solution length mismatch");
  }
  std::vector<uint8_t> values = base;
  for (size_t j = 0; j < to_original.size(); ++j) {
    values[to_original[j]] = sub_values[j];
  }
  return Assignment(inst, std::move(values));
}

Projection fix_and_project(const IlpInstance& inst, const Assignment& incumbent,
                           std::span<const int> destroy) {
  const int n = inst.num_vars();
  if (incumbent.size() != n) {
    throw std::invalid_argument("fix_and_project: incumbent length mismatch");
  }
  std::vector<int> sub_index(n, -1);
  Projection p;
  p.base = incumbent.values();
  p.to_original.reserve(destroy.size());
  for (int v : destroy) {
    if (v < 0 || v >= n) {
      throw std::invalid_argument("destroy index " + std::to_string(v) +
                                  " out of range");
    }
    if (sub_index[v] >= 0) {
      throw std::invalid_argument("destroy index " + std::to_string(v) +
                                  " repeated");
    }
    sub_index[v] = static_cast<int>(p.to_original.size());
    p.to_original.push_back(v);
  }

  const auto c = inst.objective();
  std::vector<double> objective(p.to_original.size());
  for (int j = 0; j < n; ++j) {
    if (sub_index[j] >= 0) {
      objective[sub_index[j]] = c[j];
    } else if (incumbent[j]) {
      p.offset += c[j];
    }
  }

  std::vector<Row> rows;
  for (int i = 0; i < inst.num_rows(); ++i) {
    const Row& row = inst.row(i);
    Row sub_row{.terms = {}, .sense = row.sense, .rhs = row.rhs};
    double fixed = 0.0;
    for (const Term& t : row.terms) {
      if (sub_index[t.var] >= 0) {
        sub_row.terms.push_back({sub_index[t.var], t.coef});
      } else if (incumbent[t.var]) {
        fixed += t.coef;
      }
    }
    sub_row.rhs -= fixed;
    if (sub_row.terms.empty()) {
      const double v = row_violation(sub_row, 0.0);
      if (v > kFeasibilityTolerance) {
        throw std::logic_error("fix_and_project: fixed row " +
                               std::to_string(i) + " is violated by " +
                               std::to_string(v));
      }
      continue;
    }
    rows.push_back(std::move(sub_row));
  }
  p.sub = IlpInstance(inst.name() + "/sub", std::move(objective),
                      std::move(rows));
  return p;
}

std::vector<std::vector<ColumnEntry>> build_columns(const IlpInstance& inst) {
  std::vector<std::vector<ColumnEntry>> cols(inst.num_vars());
  for (int i = 0; i < inst.num_rows(); ++i) {
    for (const Term& t : inst.row(i).terms) cols[t.var].push_back({i, t.coef});
  }
  return cols;
}

}  // namespace lbrelax
