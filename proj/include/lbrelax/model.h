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

// Data model for pure-binary integer linear programs.
//
// An IlpInstance is always stored in minimization form. Problems that were
// maximizations at the source have their objective negated on construction and
// remember that fact in `is_maximization()`, so that values can be reported in
// the original sense. Rows keep their native sense (<=, >=, =); the LP and
// branch-and-bound engines understand all three.

#ifndef LBRELAX_MODEL_H_
#define LBRELAX_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lbrelax {

// Absolute tolerance used when checking a row against its right-hand side.
inline constexpr double kFeasibilityTolerance = 1e-6;

enum class Sense : uint8_t { kLe, kGe, kEq };

const char* SenseName(Sense sense);

struct Term {
  int var = 0;
  double coef = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Row {
  std::vector<Term> terms;
  Sense sense = Sense::kLe;
  double rhs = 0.0;

  friend bool operator==(const Row&, const Row&) = default;
};

// Immutable binary ILP: min c^T x s.t. rows, x in {0,1}^n.
class IlpInstance {
 public:
  IlpInstance() = default;

  // `objective` is the internal (minimization) objective. Throws
  // std::invalid_argument if a row references a variable outside [0, n), holds
  // a duplicate index, or any number is not finite.
  IlpInstance(std::string name, std::vector<double> objective,
              std::vector<Row> rows, bool maximization = false);

  const std::string& name() const { return name_; }
  int num_vars() const { return static_cast<int>(objective_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  std::span<const double> objective() const { return objective_; }
  const std::vector<Row>& rows() const { return rows_; }
  const Row& row(int i) const { return rows_[i]; }
  bool is_maximization() const { return maximization_; }

  // Maps an internal objective value to the sense of the source problem.
  double original_objective(double internal) const {
    return maximization_ ? -internal : internal;
  }
  double internal_objective(double original) const {
    return maximization_ ? -original : original;
  }

  double evaluate(std::span<const uint8_t> values) const;

  friend bool operator==(const IlpInstance&, const IlpInstance&) = default;

 private:
  std::string name_;
  std::vector<double> objective_;
  std::vector<Row> rows_;
  bool maximization_ = false;
};

// A problem as read from a file or built by hand, before normalization.
struct RawProblem {
  struct RawRow {
    std::vector<Term> terms;
    Sense sense = Sense::kLe;
    double rhs = 0.0;
  };

  std::string name;
  bool maximize = false;
  std::vector<std::string> var_names;  // optional; used in diagnostics
  std::vector<bool> var_is_binary;     // optional; empty means all binary
  std::vector<double> objective;       // in the source sense
  std::vector<RawRow> rows;
};

// Negates maximization objectives, merges duplicate row entries by summing
// their coefficients (dropping entries that cancel to zero) and sorts row
// entries by variable index. Throws std::invalid_argument naming the first
// variable that is not binary.
IlpInstance normalize(const RawProblem& raw);

// Full 0/1 assignment with its cached internal objective.
class Assignment {
 public:
  Assignment() = default;
  // Throws std::invalid_argument on a length mismatch or a non-0/1 entry.
  Assignment(const IlpInstance& inst, std::vector<uint8_t> values);

  const std::vector<uint8_t>& values() const { return values_; }
  uint8_t operator[](int i) const { return values_[i]; }
  int size() const { return static_cast<int>(values_.size()); }
  double objective() const { return objective_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<uint8_t> values_;
  double objective_ = 0.0;
};

// Point of the LP relaxation. Entries are clamped to [0,1] on construction.
class FractionalAssignment {
 public:
  FractionalAssignment() = default;
  FractionalAssignment(const IlpInstance& inst, std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  double operator[](int i) const { return values_[i]; }
  int size() const { return static_cast<int>(values_.size()); }
  double objective() const { return objective_; }

 private:
  std::vector<double> values_;
  double objective_ = 0.0;
};

struct FeasibilityReport {
  bool feasible = true;
  int violated_row = -1;  // smallest violated row index
  double violation = 0.0;

  explicit operator bool() const { return feasible; }
};

double row_activity(const Row& row, std::span<const double> values);
double row_activity(const Row& row, std::span<const uint8_t> values);

// Amount by which `activity` fails the row; 0 when satisfied exactly.
double row_violation(const Row& row, double activity);

// Throws std::invalid_argument on a length mismatch.
FeasibilityReport is_feasible(const IlpInstance& inst,
                              std::span<const uint8_t> values);
FeasibilityReport is_feasible(const IlpInstance& inst, const Assignment& x);

int hamming_distance(std::span<const uint8_t> a, std::span<const uint8_t> b);

// Local Branching ILP: `inst` plus the Hamming-ball row
//   sum_{i: x_i=0} x_i - sum_{i: x_i=1} x_i <= k - |{i: x_i=1}|.
// Throws std::invalid_argument unless 1 <= k <= n and `incumbent` is feasible.
IlpInstance build_lb_ilp(const IlpInstance& inst, const Assignment& incumbent,
                         int k);

// Sub-problem over the destroyed variables with everything else fixed at the
// incumbent. `to_original[j]` is the original index of sub variable j.
struct Projection {
  IlpInstance sub;
  std::vector<int> to_original;
  double offset = 0.0;
  std::vector<uint8_t> base;

  // Incumbent values of the destroyed variables, in sub-instance order.
  std::vector<uint8_t> restrict_values(std::span<const uint8_t> full) const;

  // Writes `sub_values` over the fixed incumbent values.
  Assignment lift(const IlpInstance& inst,
                  std::span<const uint8_t> sub_values) const;
};

// `destroy` must be deduplicated indices in [0, n). Throws
// std::invalid_argument on bad indices and std::logic_error when a row left
// without free variables is violated (the incumbent was infeasible).
Projection fix_and_project(const IlpInstance& inst, const Assignment& incumbent,
                           std::span<const int> destroy);

// Column-wise view: for every variable, the (row, coefficient) pairs that
// reference it, in increasing row order.
struct ColumnEntry {
  int row = 0;
  double coef = 0.0;
};
std::vector<std::vector<ColumnEntry>> build_columns(const IlpInstance& inst);

}  // namespace lbrelax

#endif  // LBRELAX_MODEL_H_
