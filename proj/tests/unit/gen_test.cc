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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "lbrelax/exact.h"
#include "oracles.h"

namespace lbrelax {
namespace {

double optimum(const IlpInstance& inst) {
  return inst.original_objective(brute_force(inst).best->objective());
}

TEST(BaGraphTest, EdgeCountAndSimplicity) {
  const BaGraph g = generate_ba_graph(500, 2, 7);
  EXPECT_EQ(g.edges.size(), 997u);
  const double avg = 2.0 * g.edges.size() / 500;
  EXPECT_GE(avg, 3.9);
  EXPECT_LE(avg, 4.0);
  std::set<std::pair<int, int>> unique(g.edges.begin(), g.edges.end());
  EXPECT_EQ(unique.size(), g.edges.size());
  for (auto [u, v] : g.edges) {
    EXPECT_LT(u, v);
    EXPECT_GE(u, 0);
    EXPECT_LT(v, 500);
  }
  for (int d : {1, 3, 5}) {
    const BaGraph h = generate_ba_graph(60, d, 1);
    EXPECT_EQ(static_cast<int>(h.edges.size()), d * (d - 1) / 2 + d * (60 - d));
  }
}

TEST(BaGraphTest, SmallestIsComplete) {
  for (int d = 1; d <= 5; ++d) {
    const BaGraph g = generate_ba_graph(d + 1, d, 3);
    EXPECT_EQ(static_cast<int>(g.edges.size()), (d + 1) * d / 2);
  }
}

TEST(BaGraphTest, DeterministicAndSeedSensitive) {
  EXPECT_EQ(generate_ba_graph(300, 3, 11).edges, generate_ba_graph(300, 3, 11).edges);
  EXPECT_NE(generate_ba_graph(300, 3, 11).edges, generate_ba_graph(300, 3, 12).edges);
}

TEST(BaGraphTest, RejectsBadParameters) {
  EXPECT_THROW(generate_ba_graph(3, 3, 0), std::invalid_argument);
  EXPECT_THROW(generate_ba_graph(10, 0, 0), std::invalid_argument);
}

TEST(GraphFamiliesTest, HandExamples) {
  const BaGraph edge{.num_nodes = 2, .attachment = 1, .edges = {{0, 1}}};
  const BaGraph triangle{
      .num_nodes = 3, .attachment = 2, .edges = {{0, 1}, {0, 2}, {1, 2}}};
  EXPECT_EQ(optimum(mvc_instance(edge, "e")), 1.0);
  EXPECT_EQ(optimum(mvc_instance(triangle, "t")), 2.0);
  EXPECT_EQ(optimum(mis_instance(edge, "e")), 1.0);
  EXPECT_EQ(optimum(mis_instance(triangle, "t")), 1.0);
  EXPECT_TRUE(mis_instance(edge, "e").is_maximization());
  EXPECT_FALSE(mvc_instance(edge, "e").is_maximization());
}

TEST(GraphFamiliesTest, CoverAndIndependentSetAreComplements) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const int d = 1 + static_cast<int>(seed % 3);
    const int nodes = std::min(12, d + 2 + static_cast<int>(seed % 9));
    const IlpInstance mvc = generate_mvc(nodes, d, seed);
    const IlpInstance mis = generate_mis(nodes, d, seed);
    EXPECT_EQ(optimum(mvc) + optimum(mis), nodes) << "seed " << seed;
  }
}

TEST(GraphFamiliesTest, MatchesEnumeration) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const IlpInstance inst = generate_mvc(12, 2, seed);
    EXPECT_EQ(brute_force(inst).best->objective(),
              *testing::enumerate_optimum(inst).best);
  }
}

TEST(GraphFamiliesTest, TrivialSolutionsFeasible) {
  const IlpInstance mvc = generate_mvc(200, 3, 4);
  const IlpInstance mis = generate_mis(200, 3, 4);
  EXPECT_TRUE(is_feasible(mvc, std::vector<uint8_t>(200, 1)).feasible);
  EXPECT_TRUE(is_feasible(mis, std::vector<uint8_t>(200, 0)).feasible);
  EXPECT_EQ(mvc.name(), "mvc_n200_d3_4");
  EXPECT_EQ(mis.name(), "mis_n200_d3_4");
}

TEST(SetCoverTest, SingleRow) {
  const IlpInstance inst = sc_instance({{0, 1, 2, 3}}, {1, 1, 1, 1}, "one");
  EXPECT_EQ(optimum(inst), 1.0);
}

TEST(SetCoverTest, GeneratedStructure) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const ScParams p{.num_vars = 30, .num_rows = 40, .density = 0.02,
                     .cost_lo = 1, .cost_hi = 100};
    const IlpInstance inst = generate_sc(p, seed);
    EXPECT_EQ(inst.num_vars(), 30);
    EXPECT_EQ(inst.num_rows(), 40);
    EXPECT_TRUE(is_feasible(inst, std::vector<uint8_t>(30, 1)).feasible);
    std::vector<int> covered(30, 0);
    for (const Row& r : inst.rows()) {
      EXPECT_FALSE(r.terms.empty());
      EXPECT_EQ(r.sense, Sense::kGe);
      EXPECT_EQ(r.rhs, 1.0);
      for (const Term& t : r.terms) covered[t.var] = 1;
    }
    for (int c : covered) EXPECT_TRUE(c);
    for (double c : inst.objective()) {
      EXPECT_EQ(c, std::floor(c));
      EXPECT_GE(c, 1);
      EXPECT_LE(c, 100);
    }
  }
}

TEST(SetCoverTest, SmallMatchesEnumeration) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const IlpInstance inst = generate_sc(
        {.num_vars = 10, .num_rows = 8, .density = 0.3, .cost_lo = 1,
         .cost_hi = 100},
        seed);
    EXPECT_EQ(brute_force(inst).best->objective(),
              *testing::enumerate_optimum(inst).best);
  }
}

TEST(KnapsackTest, CapacityForcesChoice) {
  const std::vector<double> profits{3, 4}, weights{3, 4}, caps{5};
  const IlpInstance inst = mk_instance(profits, weights, caps, "mk");
  EXPECT_EQ(optimum(inst), 4.0);
}

TEST(KnapsackTest, GeneratedStructure) {
  const IlpInstance inst = generate_mk(40, 4, 9);
  EXPECT_EQ(inst.num_vars(), 160);
  EXPECT_EQ(inst.num_rows(), 44);
  EXPECT_TRUE(inst.is_maximization());
  const std::vector<uint8_t> zeros(160, 0);
  EXPECT_TRUE(is_feasible(inst, zeros).feasible);
  EXPECT_EQ(inst.original_objective(inst.evaluate(zeros)), 0.0);
  EXPECT_EQ(inst.name(), "mk_i40_k4_9");
  for (const Row& r : inst.rows()) {
    EXPECT_EQ(r.sense, Sense::kLe);
    EXPECT_EQ(r.rhs, std::floor(r.rhs));
    for (const Term& t : r.terms) EXPECT_EQ(t.coef, std::floor(t.coef));
  }
}

TEST(KnapsackTest, SmallMatchesEnumeration) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const IlpInstance inst = generate_mk(6, 2, seed);
    EXPECT_EQ(brute_force(inst).best->objective(),
              *testing::enumerate_optimum(inst).best);
  }
}

TEST(GeneratorsTest, Deterministic) {
  EXPECT_EQ(generate_sc(ScParams{}, 5), generate_sc(ScParams{}, 5));
  EXPECT_EQ(generate_mk(20, 3, 5), generate_mk(20, 3, 5));
  EXPECT_EQ(generate_mvc(100, 2, 5), generate_mvc(100, 2, 5));
}

}  // namespace
}  // namespace lbrelax
