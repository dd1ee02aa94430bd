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

#include "lbrelax/gen.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace lbrelax {

BaGraph generate_ba_graph(int num_nodes, int d, uint64_t seed) {
  if (d < 1 || num_nodes <= d) {
    throw std::invalid_argument("Barabasi-Albert graph needs N > d >= 1 (N=" +
                                std::to_string(num_nodes) +
                                ", d=" + std::to_string(d) + ")");
  }
  std::mt19937_64 rng(seed);
  BaGraph g{.num_nodes = num_nodes, .attachment = d, .edges = {}};
  // One entry per edge endpoint: sampling from it is degree-proportional.
  std::vector<int> endpoints;
  for (int u = 0; u < d; ++u) {
    for (int v = u + 1; v < d; ++v) {
      g.edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<int> targets;
  for (int v = d; v < num_nodes; ++v) {
    targets.clear();
    if (v == d) {
      for (int u = 0; u < d; ++u) targets.push_back(u);
    } else {
      while (static_cast<int>(targets.size()) < d) {
        int u;
        if (endpoints.empty()) {
          u = std::uniform_int_distribution<int>(0, v - 1)(rng);
        } else {
          u = endpoints[std::uniform_int_distribution<size_t>(
              0, endpoints.size() - 1)(rng)];
        }
        if (std::find(targets.begin(), targets.end(), u) == targets.end()) {
          targets.push_back(u);
        }
      }
    }
    for (int u : targets) {
      g.edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return g;
}

namespace {

IlpInstance edge_instance(const BaGraph& graph, std::string name, Sense sense,
                          bool maximize) {
  RawProblem raw;
  raw.name = std::move(name);
  raw.maximize = maximize;
  raw.objective.assign(graph.num_nodes, 1.0);
  raw.rows.reserve(graph.edges.size());
  for (const auto& [u, v] : graph.edges) {
    raw.rows.push_back({.terms = {{u, 1.0}, {v, 1.0}}, .sense = sense, .rhs = 1.0});
  }
  return normalize(raw);
}

std::string graph_name(const char* family, int n, int d, uint64_t seed) {
  return std::string(family) + "_n" + std::to_string(n) + "_d" +
         std::to_string(d) + "_" + std::to_string(seed);
}

}  // namespace

IlpInstance mvc_instance(const BaGraph& graph, std::string name) {
  return edge_instance(graph, std::move(name), Sense::kGe, false);
}

IlpInstance mis_instance(const BaGraph& graph, std::string name) {
  return edge_instance(graph, std::move(name), Sense::kLe, true);
}

IlpInstance generate_mvc(int num_nodes, int d, uint64_t seed) {
  return mvc_instance(generate_ba_graph(num_nodes, d, seed),
                      graph_name("mvc", num_nodes, d, seed));
}

IlpInstance generate_mis(int num_nodes, int d, uint64_t seed) {
  return mis_instance(generate_ba_graph(num_nodes, d, seed),
                      graph_name("mis", num_nodes, d, seed));
}

IlpInstance sc_instance(const std::vector<std::vector<int>>& rows,
                        std::vector<double> costs, std::string name) {
  RawProblem raw;
  raw.name = std::move(name);
  raw.objective = std::move(costs);
  for (const auto& cover : rows) {
    RawProblem::RawRow row{.terms = {}, .sense = Sense::kGe, .rhs = 1.0};
    for (int j : cover) row.terms.push_back({j, 1.0});
    raw.rows.push_back(std::move(row));
  }
  return normalize(raw);
}

IlpInstance generate_sc(const ScParams& p, uint64_t seed) {
  if (p.num_vars < 1 || p.num_rows < 1) {
    throw std::invalid_argument("set covering needs at least one row and column");
  }
  if (!(p.density > 0.0 && p.density < 1.0)) {
    throw std::invalid_argument("set covering density must lie in (0, 1)");
  }
  if (p.cost_lo < 1 || p.cost_hi < p.cost_lo) {
    throw std::invalid_argument("set covering costs need 1 <= lo <= hi");
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution take(p.density);
  std::uniform_int_distribution<int> any_col(0, p.num_vars - 1);
  std::uniform_int_distribution<int> any_row(0, p.num_rows - 1);

  std::vector<std::vector<int>> rows(p.num_rows);
  std::vector<uint8_t> covered(p.num_vars, 0);
  for (auto& row : rows) {
    for (int j = 0; j < p.num_vars; ++j) {
      if (take(rng)) {
        row.push_back(j);
        covered[j] = 1;
      }
    }
    if (row.empty()) {
      const int j = any_col(rng);
      row.push_back(j);
      covered[j] = 1;
    }
  }
  for (int j = 0; j < p.num_vars; ++j) {
    if (covered[j]) continue;
    auto& row = rows[any_row(rng)];
    row.insert(std::lower_bound(row.begin(), row.end(), j), j);
  }
  std::uniform_int_distribution<int> cost(p.cost_lo, p.cost_hi);
  std::vector<double> costs(p.num_vars);
  for (double& c : costs) c = cost(rng);

  const std::string name = "sc_v" + std::to_string(p.num_vars) + "_r" +
                           std::to_string(p.num_rows) + "_" +
                           std::to_string(seed);
  return sc_instance(rows, std::move(costs), name);
}

IlpInstance mk_instance(std::span<const double> profits,
                        std::span<const double> weights,
                        std::span<const double> capacities, std::string name) {
  const int items = static_cast<int>(profits.size());
  const int sacks = static_cast<int>(capacities.size());
  if (static_cast<int>(weights.size()) != items) {
    throw std::invalid_argument("knapsack profits and weights differ in size");
  }
  RawProblem raw;
  raw.name = std::move(name);
  raw.maximize = true;
  raw.objective.resize(static_cast<size_t>(items) * sacks);
  for (int i = 0; i < items; ++i) {
    for (int j = 0; j < sacks; ++j) raw.objective[i * sacks + j] = profits[i];
  }
  for (int i = 0; i < items; ++i) {
    RawProblem::RawRow row{.terms = {}, .sense = Sense::kLe, .rhs = 1.0};
    for (int j = 0; j < sacks; ++j) row.terms.push_back({i * sacks + j, 1.0});
    raw.rows.push_back(std::move(row));
  }
  for (int j = 0; j < sacks; ++j) {
    RawProblem::RawRow row{.terms = {}, .sense = Sense::kLe, .rhs = capacities[j]};
    for (int i = 0; i < items; ++i) {
      row.terms.push_back({i * sacks + j, weights[i]});
    }
    raw.rows.push_back(std::move(row));
  }
  return normalize(raw);
}

IlpInstance generate_mk(int num_items, int num_knapsacks, uint64_t seed) {
  if (num_knapsacks < 1 || num_items < num_knapsacks) {
    throw std::invalid_argument(
        "multiple knapsack needs items >= knapsacks >= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> value(10, 100);
  std::vector<double> profits(num_items), weights(num_items);
  double total_weight = 0.0;
  for (int i = 0; i < num_items; ++i) {
    profits[i] = value(rng);
    weights[i] = value(rng);
    total_weight += weights[i];
  }
  const std::vector<double> capacities(
      num_knapsacks, std::floor(0.5 * total_weight / num_knapsacks));
  const std::string name = "mk_i" + std::to_string(num_items) + "_k" +
                           std::to_string(num_knapsacks) + "_" +
                           std::to_string(seed);
  return mk_instance(profits, weights, capacities, name);
}

}  // namespace lbrelax
