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

#include "oracles.h"

#include <Eigen/Dense>
#include <bit>
#include <stdexcept>

#include "lbrelax/gen.h"

namespace lbrelax::testing {

IlpInstance random_instance(std::mt19937_64& rng, int n, int m, bool maximize) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> sense(0, 5);
  std::vector<uint8_t> hidden(n);
  for (auto& v : hidden) v = static_cast<uint8_t>(bit(rng));
  RawProblem raw;
  raw.name = "random";
  raw.maximize = maximize;
  for (int j = 0; j < n; ++j) raw.objective.push_back(coef(rng));
  for (int i = 0; i < m; ++i) {
    RawProblem::RawRow row{.terms = {}, .sense = Sense::kLe, .rhs = 0.0};
    double at_hidden = 0.0;
    for (int j = 0; j < n; ++j) {
      if (bit(rng) == 0) continue;
      const int a = coef(rng);
      if (a == 0) continue;
      row.terms.push_back({j, static_cast<double>(a)});
      at_hidden += a * hidden[j];
    }
    const int s = sense(rng);
    const int slack = std::uniform_int_distribution<int>(0, 2)(rng);
    if (s == 0) {
      row.sense = Sense::kEq;
      row.rhs = at_hidden;
    } else if (s <= 3) {
      row.sense = Sense::kLe;
      row.rhs = at_hidden + slack;
    } else {
      row.sense = Sense::kGe;
      row.rhs = at_hidden - slack;
    }
    raw.rows.push_back(std::move(row));
  }
  return normalize(raw);
}

IlpInstance small_family_instance(const std::string& family, uint64_t seed) {
  std::mt19937_64 rng(seed);
  if (family == "mvc" || family == "mis") {
    const int d = std::uniform_int_distribution<int>(1, 3)(rng);
    const int nodes = std::uniform_int_distribution<int>(d + 1, 12)(rng);
    return family == "mvc" ? generate_mvc(nodes, d, seed)
                           : generate_mis(nodes, d, seed);
  }
  if (family == "sc") {
    ScParams p;
    p.num_vars = std::uniform_int_distribution<int>(4, 12)(rng);
    p.num_rows = std::uniform_int_distribution<int>(3, 10)(rng);
    p.density = 0.3;
    return generate_sc(p, seed);
  }
  if (family == "mk") {
    static constexpr int kShapes[][2] = {{12, 1}, {6, 2}, {4, 3}, {3, 3}, {5, 2}};
    const auto& shape = kShapes[std::uniform_int_distribution<int>(0, 4)(rng)];
    return generate_mk(shape[0], shape[1], seed);
  }
  throw std::invalid_argument("unknown family " + family);
}

namespace {

template <typename Filter>
EnumResult enumerate(const IlpInstance& inst, Filter keep) {
  const int n = inst.num_vars();
  if (n > 20) throw std::invalid_argument("enumeration limited to n <= 20");
  EnumResult out;
  std::vector<uint8_t> x(n);
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    for (int j = 0; j < n; ++j) x[j] = (mask >> j) & 1;
    if (!keep(x) || !is_feasible(inst, x)) continue;
    const double obj = inst.evaluate(x);
    if (!out.best || obj < *out.best) {
      out.best = obj;
      out.argmin = x;
    }
  }
  return out;
}

}  // namespace

EnumResult enumerate_optimum(const IlpInstance& inst) {
  return enumerate(inst, [](const std::vector<uint8_t>&) { return true; });
}

EnumResult enumerate_ball_optimum(const IlpInstance& inst,
                                  const std::vector<uint8_t>& center, int k) {
  return enumerate(inst, [&](const std::vector<uint8_t>& x) {
    return hamming_distance(x, center) <= k;
  });
}

std::optional<double> vertex_enumeration_lp(const IlpInstance& inst) {
  const int n = inst.num_vars();
  const int m = inst.num_rows();
  if (n > 10 || m > 10) throw std::invalid_argument("vertex oracle too large");
  std::optional<double> best;
  // Each variable sits at 0, at 1, or is free (state 2); the free ones are
  // determined by an equal number of rows held at equality.
  std::vector<int> state(n, 0);
  int64_t combos = 1;
  for (int j = 0; j < n; ++j) combos *= 3;
  for (int64_t code = 0; code < combos; ++code) {
    int64_t c = code;
    std::vector<int> free_vars;
    for (int j = 0; j < n; ++j) {
      state[j] = static_cast<int>(c % 3);
      c /= 3;
      if (state[j] == 2) free_vars.push_back(j);
    }
    const int f = static_cast<int>(free_vars.size());
    if (f > m) continue;
    for (uint32_t rows = 0; rows < (1u << m); ++rows) {
      if (std::popcount(rows) != f) continue;
      std::vector<double> x(n, 0.0);
      for (int j = 0; j < n; ++j) x[j] = state[j] == 1 ? 1.0 : 0.0;
      if (f > 0) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(f, f);
        Eigen::VectorXd b(f);
        int r = 0;
        for (int i = 0; i < m; ++i) {
          if (!((rows >> i) & 1)) continue;
          double fixed = 0.0;
          for (const Term& t : inst.row(i).terms) {
            auto it = std::find(free_vars.begin(), free_vars.end(), t.var);
            if (it != free_vars.end()) {
              a(r, it - free_vars.begin()) = t.coef;
            } else {
              fixed += t.coef * x[t.var];
            }
          }
          b(r) = inst.row(i).rhs - fixed;
          ++r;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        if (!lu.isInvertible()) continue;
        const Eigen::VectorXd sol = lu.solve(b);
        bool in_box = true;
        for (int q = 0; q < f; ++q) {
          if (sol(q) < -1e-9 || sol(q) > 1 + 1e-9) in_box = false;
          x[free_vars[q]] = sol(q);
        }
        if (!in_box) continue;
      }
      bool feasible = true;
      for (const Row& row : inst.rows()) {
        if (row_violation(row, row_activity(row, x)) > 1e-9) feasible = false;
      }
      if (!feasible) continue;
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += inst.objective()[j] * x[j];
      if (!best || obj < *best) best = obj;
    }
  }
  return best;
}

std::optional<std::vector<uint8_t>> random_feasible_point(
    const IlpInstance& inst, std::mt19937_64& rng) {
  const int n = inst.num_vars();
  std::vector<std::vector<uint8_t>> points;
  std::vector<uint8_t> x(n);
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    for (int j = 0; j < n; ++j) x[j] = (mask >> j) & 1;
    if (is_feasible(inst, x)) points.push_back(x);
  }
  if (points.empty()) return std::nullopt;
  return points[std::uniform_int_distribution<size_t>(0, points.size() - 1)(rng)];
}

LnsState make_state(const IlpInstance& inst, std::vector<uint8_t> incumbent,
                    uint64_t seed, int k) {
  LnsState s;
  s.incumbent = Assignment(inst, std::move(incumbent));
  s.k = k;
  s.rng.seed(seed);
  return s;
}

}  // namespace lbrelax::testing
