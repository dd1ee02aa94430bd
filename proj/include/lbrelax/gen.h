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

// Seeded generators for the benchmark families: minimum vertex cover and
// maximum independent set on Barabasi-Albert graphs, set covering, and
// multiple knapsack. All data is integral and every instance is feasible by
// construction (all-ones for MVC/SC, all-zeros for MIS/MK).

#ifndef LBRELAX_GEN_H_
#define LBRELAX_GEN_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lbrelax/model.h"

namespace lbrelax {

struct BaGraph {
  int num_nodes = 0;
  int attachment = 0;
  std::vector<std::pair<int, int>> edges;  // u < v
};

// Preferential attachment from a `d`-node clique; every new node draws d
// distinct targets with probability proportional to their current degree
// (uniformly while all degrees are zero), rejecting duplicates. Produces
// C(d,2) + d*(N-d) edges. Throws std::invalid_argument unless N > d >= 1.
BaGraph generate_ba_graph(int num_nodes, int d, uint64_t seed);

IlpInstance mvc_instance(const BaGraph& graph, std::string name);
IlpInstance mis_instance(const BaGraph& graph, std::string name);

IlpInstance generate_mvc(int num_nodes, int d, uint64_t seed);
IlpInstance generate_mis(int num_nodes, int d, uint64_t seed);

struct ScParams {
  int num_vars = 200;
  int num_rows = 250;
  double density = 0.05;
  int cost_lo = 1;
  int cost_hi = 100;
};

// `rows` lists the columns covering each row. min sum c_j x_j s.t. every row
// covered at least once.
IlpInstance sc_instance(const std::vector<std::vector<int>>& rows,
                        std::vector<double> costs, std::string name);

// Each row takes every column independently with probability `density`; empty
// rows and uncovered columns are patched by random forced insertions.
IlpInstance generate_sc(const ScParams& params, uint64_t seed);

// Item i in knapsack j is variable i*K + j. Maximizes total profit subject to
// each item being packed at most once and the knapsack capacities.
IlpInstance mk_instance(std::span<const double> profits,
                        std::span<const double> weights,
                        std::span<const double> capacities, std::string name);

// Profits and weights uniform integers in [10, 100];
// capacity floor(0.5 * sum(weights) / K) for every knapsack.
IlpInstance generate_mk(int num_items, int num_knapsacks, uint64_t seed);

}  // namespace lbrelax

#endif  // LBRELAX_GEN_H_
