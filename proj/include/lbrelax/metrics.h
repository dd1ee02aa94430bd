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

// Anytime-performance metrics over LNS traces. Objective values passed in
// here are in the original sense of the instance unless noted otherwise.

#ifndef LBRELAX_METRICS_H_
#define LBRELAX_METRICS_H_

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lbrelax/lns.h"

namespace lbrelax {

inline constexpr double kGapEpsilon = 1e-8;
inline constexpr double kTieTolerance = 1e-9;

// |v - v*| / max(v, v*, eps), 1 when v is missing or v and v* have opposite
// signs, clamped to [0, 1].
double primal_gap(std::optional<double> v, double v_star,
                  double epsilon = kGapEpsilon);

// Right-continuous step function of the primal gap over [0, horizon]. The gap
// is 1 before the first breakpoint.
struct GapSeries {
  std::vector<std::pair<double, double>> points;  // (time, gap), times increasing
  double horizon = 0.0;

  double at(double q) const;
};

// Best objective (original sense) reached by time q, if any.
std::optional<double> objective_at(std::span<const TraceEvent> events,
                                   bool maximization, double q);

// Breakpoints at every improving event; events sharing a timestamp collapse to
// the last one.
GapSeries gap_series(std::span<const TraceEvent> events, bool maximization,
                     double v_star, double horizon);

// Exact integral of the step function on [0, q]. Throws std::invalid_argument
// for q < 0 or q beyond the horizon.
double primal_integral(const GapSeries& series, double q);

// Fraction of gaps strictly below `threshold`. Throws on an empty input.
double survival_rate(std::span<const double> gaps, double threshold);

// values[i][a]: objective of approach a on instance i (original sense),
// nullopt when the approach has no solution.
using ObjectiveTable = std::vector<std::vector<std::optional<double>>>;

// Per approach, the fraction of instances where it attains the best value
// within kTieTolerance. Tying approaches all get credit.
std::vector<double> best_performing_rate(const ObjectiveTable& values,
                                         const std::vector<bool>& maximization);

// gaps[i][a] = primal_gap(values[i][a], best value on instance i).
std::vector<std::vector<double>> gap_to_virtual_best(
    const ObjectiveTable& values, const std::vector<bool>& maximization);

// Median of `mean_gaps`, rounded to the nearest 0.0005 (0.05 percent).
double default_survival_threshold(std::vector<double> mean_gaps);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};
MeanStd mean_std(std::span<const double> xs);

}  // namespace lbrelax

#endif  // LBRELAX_METRICS_H_
