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

#include <gtest/gtest.h>

#include <random>

#include "lbrelax/exact.h"
#include "lbrelax/gen.h"
#include "oracles.h"

namespace lbrelax {
namespace {

TEST(SimplexTest, SingleVariableBound) {
  const IlpInstance inst("t", {-1},
                         {Row{.terms = {{0, 2}}, .sense = Sense::kLe, .rhs = 1}});
  const LpSolution s = solve_lp(inst);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.values[0], 0.5, 1e-12);
  EXPECT_NEAR(s.objective, -0.5, 1e-12);
  EXPECT_TRUE(check_optimality_certificate(inst, s));
}

TEST(SimplexTest, CoveringRow) {
  const IlpInstance inst(
      "t", {1, 1}, {Row{.terms = {{0, 1}, {1, 1}}, .sense = Sense::kGe, .rhs = 1}});
  const LpSolution s = solve_lp(inst);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, 1.0, 1e-12);
  EXPECT_TRUE(check_optimality_certificate(inst, s));
}

TEST(SimplexTest, DegenerateEquality) {
  const IlpInstance inst(
      "t", {1, 0}, {Row{.terms = {{0, 1}, {1, 1}}, .sense = Sense::kEq, .rhs = 1}});
  const LpSolution s = solve_lp(inst);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.values[0], 0.0, 1e-12);
  EXPECT_NEAR(s.values[1], 1.0, 1e-12);
  EXPECT_TRUE(check_optimality_certificate(inst, s));
}

TEST(SimplexTest, CertificateRejectsPerturbedPoint) {
  const IlpInstance inst("t", {-1},
                         {Row{.terms = {{0, 2}}, .sense = Sense::kLe, .rhs = 1}});
  LpSolution s = solve_lp(inst);
  ASSERT_TRUE(check_optimality_certificate(inst, s));
  s.values = FractionalAssignment(inst, {0.4});
  s.objective = -0.4;
  EXPECT_FALSE(check_optimality_certificate(inst, s));
}

TEST(SimplexTest, DetectsInfeasibility) {
  const IlpInstance inst("t", {1},
                         {Row{.terms = {{0, 1}}, .sense = Sense::kLe, .rhs = 0},
                          Row{.terms = {{0, 1}}, .sense = Sense::kGe, .rhs = 1}});
  EXPECT_EQ(solve_lp(inst).status, LpStatus::kInfeasible);
  const IlpInstance box("t", {1},
                        {Row{.terms = {{0, 1}}, .sense = Sense::kGe, .rhs = 1.5}});
  EXPECT_EQ(solve_lp(box).status, LpStatus::kInfeasible);
}

TEST(SimplexTest, MatchesVertexEnumeration) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const IlpInstance inst = testing::random_instance(rng, 8, 6);
    const auto oracle = testing::vertex_enumeration_lp(inst);
    ASSERT_TRUE(oracle);  // feasible by construction
    const LpSolution s = solve_lp(inst);
    ASSERT_EQ(s.status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(s.objective, *oracle, 1e-7) << "trial " << trial;
    EXPECT_TRUE(check_optimality_certificate(inst, s)) << "trial " << trial;
    EXPECT_NEAR(s.objective, s.values.objective(), 1e-9);
  }
}

TEST(SimplexTest, StartHintDoesNotChangeOptimum) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const IlpInstance inst = testing::random_instance(rng, 10, 7);
    const auto x = testing::random_feasible_point(inst, rng);
    ASSERT_TRUE(x);
    LpOptions opts;
    opts.start = *x;
    const LpSolution hinted = solve_lp(inst, opts);
    const LpSolution plain = solve_lp(inst);
    ASSERT_EQ(hinted.status, LpStatus::kOptimal);
    EXPECT_NEAR(hinted.objective, plain.objective, 1e-7);
    EXPECT_TRUE(check_optimality_certificate(inst, hinted));
  }
}

TEST(SimplexTest, BoundsTheIntegerOptimum) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const IlpInstance inst = testing::random_instance(rng, 10, 6);
    const auto exact = testing::enumerate_optimum(inst);
    ASSERT_TRUE(exact.best);
    const LpSolution s = solve_lp(inst);
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    EXPECT_LE(s.objective, *exact.best + 1e-6);
  }
}

TEST(SimplexTest, TightOnBipartiteCover) {
  // Vertex cover of an even cycle plus chords between the two sides.
  RawProblem raw;
  raw.objective.assign(8, 1.0);
  for (int u = 0; u < 4; ++u) {
    for (int v = 4; v < 8; ++v) {
      if ((u + v) % 3 == 0 || v == u + 4) {
        raw.rows.push_back({.terms = {{u, 1}, {v, 1}}, .sense = Sense::kGe, .rhs = 1});
      }
    }
  }
  const IlpInstance inst = normalize(raw);
  const auto exact = testing::enumerate_optimum(inst);
  EXPECT_NEAR(solve_lp(inst).objective, *exact.best, 1e-6);
}

TEST(SimplexTest, FixingsAreRespected) {
  const IlpInstance inst(
      "t", {1, 1}, {Row{.terms = {{0, 1}, {1, 1}}, .sense = Sense::kGe, .rhs = 1}});
  const std::vector<int8_t> fixed{0, -1};
  LpOptions opts;
  opts.fixed = fixed;
  const LpSolution s = solve_lp(inst, opts);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_EQ(s.values[0], 0.0);
  EXPECT_NEAR(s.values[1], 1.0, 1e-12);
}

TEST(SimplexTest, IterationLimitIsReported) {
  const IlpInstance inst = generate_sc(ScParams{}, 4);
  const LpSolution s = solve_lp(inst, 3);
  EXPECT_EQ(s.status, LpStatus::kIterationLimit);
  EXPECT_LE(s.iterations, 3);
}

TEST(SimplexTest, DeterministicOnRepeat) {
  const IlpInstance inst = generate_mvc(60, 2, 8);
  const LpSolution a = solve_lp(inst);
  const LpSolution b = solve_lp(inst);
  EXPECT_EQ(a.values.values(), b.values.values());
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(SimplexTest, GeneratedFamiliesCertify) {
  for (uint64_t seed = 0; seed < 3; ++seed) {
    for (const IlpInstance& inst :
         {generate_mvc(120, 3, seed), generate_mis(120, 2, seed),
          generate_sc(ScParams{.num_vars = 60, .num_rows = 80, .density = 0.1,
                               .cost_lo = 1, .cost_hi = 100},
                      seed),
          generate_mk(20, 3, seed)}) {
      const LpSolution s = solve_lp(inst);
      ASSERT_EQ(s.status, LpStatus::kOptimal) << inst.name();
      EXPECT_TRUE(check_optimality_certificate(inst, s)) << inst.name();
    }
  }
}

}  // namespace
}  // namespace lbrelax
