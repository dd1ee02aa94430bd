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

#include "lbrelax/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lbrelax {

double primal_gap(std::optional<double> v, double v_star, double epsilon) {
  if (!v || *v * v_star < 0.0) return 1.0;
  const double denom = std::max({*v, v_star, epsilon});
  return std::clamp(std::abs(*v - v_star) / denom, 0.0, 1.0);
}

double GapSeries::at(double q) const {
  // First breakpoint strictly after q; the one before it is in effect.
  auto it = std::upper_bound(
      points.begin(), points.end(), q,
      [](double t, const std::pair<double, double>& p) { return t < p.first; });
  if (it == points.begin()) return 1.0;
  return std::prev(it)->second;
}

std::optional<double> objective_at(std::span<const TraceEvent> events,
                                   bool maximization, double q) {
  std::optional<double> best;
  for (const TraceEvent& e : events) {
    if (e.wall_time > q) break;
    if (!best || e.objective < *best) best = e.objective;
  }
  if (best && maximization) best = -*best;
  return best;
}

GapSeries gap_series(std::span<const TraceEvent> events, bool maximization,
                     double v_star, double horizon) {
  GapSeries s;
  s.horizon = horizon;
  std::optional<double> best;
  for (const TraceEvent& e : events) {
    if (best && e.objective >= *best) continue;
    best = e.objective;
    const double gap = primal_gap(maximization ? -e.objective : e.objective,
                                  v_star);
    if (!s.points.empty() && s.points.back().first >= e.wall_time) {
      s.points.back().second = gap;
    } else {
      s.points.emplace_back(e.wall_time, gap);
    }
  }
  return s;
}

double primal_integral(const GapSeries& series, double q) {
  if (!(q >= 0.0)) {
    throw std::invalid_argument("primal integral needs q >= 0, got " +
                                std::to_string(q));
  }
  if (q > series.horizon) {
    throw std::invalid_argument("primal integral at q=" + std::to_string(q) +
                                " beyond horizon " +
                                std::to_string(series.horizon));
  }
  double total = 0.0;
  double t = 0.0;
  double gap = 1.0;
  for (const auto& [time, g] : series.points) {
    if (time >= q) break;
    if (time > t) {
      total += gap * (time - t);
      t = time;
    }
    gap = g;
  }
  return total + gap * (q - t);
}

double survival_rate(std::span<const double> gaps, double threshold) {
  if (gaps.empty()) throw std::invalid_argument("survival rate of no instances");
  const auto below = std::count_if(gaps.begin(), gaps.end(),
                                   [&](double g) { return g < threshold; });
  return static_cast<double>(below) / static_cast<double>(gaps.size());
}

namespace {

// Best internal (minimization) value per instance, if any approach has one.
std::optional<double> virtual_best(const std::vector<std::optional<double>>& row,
                                   bool maximization) {
  std::optional<double> best;
  for (const auto& v : row) {
    if (!v) continue;
    const double internal = maximization ? -*v : *v;
    if (!best || internal < *best) best = internal;
  }
  return best;
}

void check_shape(const ObjectiveTable& values, const std::vector<bool>& maximization) {
  if (values.size() != maximization.size()) {
    throw std::invalid_argument("objective table and sense flags differ in size");
  }
  for (const auto& row : values) {
    if (row.size() != values.front().size()) {
      throw std::invalid_argument("objective table rows differ in width");
    }
  }
}

}  // namespace

std::vector<double> best_performing_rate(const ObjectiveTable& values,
                                         const std::vector<bool>& maximization) {
  check_shape(values, maximization);
  if (values.empty()) return {};
  const size_t approaches = values.front().size();
  std::vector<double> wins(approaches, 0.0);
  for (size_t i = 0; i < values.size(); ++i) {
    const auto best = virtual_best(values[i], maximization[i]);
    if (!best) continue;
    for (size_t a = 0; a < approaches; ++a) {
      const auto& v = values[i][a];
      if (!v) continue;
      const double internal = maximization[i] ? -*v : *v;
      if (internal <= *best + kTieTolerance) wins[a] += 1.0;
    }
  }
  for (double& w : wins) w /= static_cast<double>(values.size());
  return wins;
}

std::vector<std::vector<double>> gap_to_virtual_best(
    const ObjectiveTable& values, const std::vector<bool>& maximization) {
  check_shape(values, maximization);
  std::vector<std::vector<double>> gaps(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    const auto best = virtual_best(values[i], maximization[i]);
    for (const auto& v : values[i]) {
      gaps[i].push_back(best ? primal_gap(v, maximization[i] ? -*best : *best)
                             : 1.0);
    }
  }
  return gaps;
}

double default_survival_threshold(std::vector<double> mean_gaps) {
  if (mean_gaps.empty()) {
    throw std::invalid_argument("survival threshold from no approaches");
  }
  std::sort(mean_gaps.begin(), mean_gaps.end());
  const size_t m = mean_gaps.size();
  const double median = m % 2 == 1
                            ? mean_gaps[m / 2]
                            : 0.5 * (mean_gaps[m / 2 - 1] + mean_gaps[m / 2]);
  return std::round(median / 0.0005) * 0.0005;
}

MeanStd mean_std(std::span<const double> xs) {
  if (xs.empty()) return {};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double sq = 0.0;
  for (double x : xs) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / static_cast<double>(xs.size()))};
}

}  // namespace lbrelax
