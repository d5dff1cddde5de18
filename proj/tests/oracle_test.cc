// Copyright 2026 The Authors.
//
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

#include "csmax/oracle.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "csmax/bench.h"
#include "csmax/objectives.h"
#include "csmax/solvers.h"
#include "support/test_instances.h"

namespace csmax {
namespace {

TEST(GridOptimumTest, ZeroObjective) {
  const std::vector<double> u = {1.0, 1.0, 1.0};
  const ProblemInstance instance(
      Objective(3, 0.0, [](std::span<const double>) { return 0.0; }),
      BoxDomain(u), 1.0);
  const GridSearchResult r = GridOptimum(instance, 0.25);
  EXPECT_EQ(r.best_value, 0.0);
  EXPECT_EQ(r.best_point, Point::Zero(3));
}

TEST(GridOptimumTest, TwoDimQuadratic) {
  const GridSearchResult r = GridOptimum(testing::TwoDimQuadratic(), 0.01);
  EXPECT_DOUBLE_EQ(r.best_value, 1.0);
  EXPECT_NEAR(r.best_point.L1Norm(), 1.0, 1e-12);
  EXPECT_GT(r.points_evaluated, 0u);
  EXPECT_EQ(r.resolution, 0.01);
}

TEST(GridOptimumTest, ConcaveLinear) {
  const std::vector<double> u = {1.0, 1.0};
  const ConcaveLinearSpec spec{.w = {1.0, 1.0}};
  const ProblemInstance instance(MakeConcaveLinear(spec, u), BoxDomain(u), 1.0);
  const GridSearchResult r = GridOptimum(instance, 0.01);
  EXPECT_NEAR(r.best_value, 1.0 - std::exp(-1.0), 1e-12);
}

TEST(GridOptimumTest, BudgetFillCoversOffLatticeBudgets) {
  // B = 0.95 is not a lattice multiple of 0.1; the fill step still reaches it.
  const std::vector<double> u = {1.0};
  const ProblemInstance instance(
      testing::Scalar([](double y) { return y; }, 0.0), BoxDomain(u), 0.95);
  EXPECT_DOUBLE_EQ(GridOptimum(instance, 0.1).best_value, 0.95);
}

TEST(GridOptimumTest, RefiningTheLatticeNeverLowersTheValue) {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 5; ++t) {
    const ProblemInstance instance = bench::BuildInstance(
        t % 2 == 0 ? testing::RandomQuadraticFile(2, 1.0, rng)
                   : testing::RandomConcaveFile(2, 1.0, rng));
    const double coarse = GridOptimum(instance, 0.1).best_value;
    const double fine = GridOptimum(instance, 0.05).best_value;
    const double finer = GridOptimum(instance, 0.025).best_value;
    EXPECT_GE(fine, coarse);
    EXPECT_GE(finer, fine);
  }
}

TEST(GridOptimumTest, WorkerCountDoesNotChangeTheResult) {
  std::mt19937_64 rng(73);
  const ProblemInstance instance =
      bench::BuildInstance(testing::RandomQuadraticFile(3, 1.0, rng));
  const GridSearchResult one = GridOptimum(instance, 0.05, kDefaultLatticeCap, 1);
  const GridSearchResult four =
      GridOptimum(instance, 0.05, kDefaultLatticeCap, 4);
  EXPECT_EQ(one.best_point, four.best_point);
  EXPECT_EQ(one.best_value, four.best_value);
  EXPECT_EQ(one.points_evaluated, four.points_evaluated);
}

TEST(GridOptimumTest, CapIsEnforced) {
  const ProblemInstance instance = testing::TwoDimQuadratic();
  EXPECT_DOUBLE_EQ(LatticeSize(instance, 0.01), 101.0 * 101.0);
  try {
    GridOptimum(instance, 0.01, 1000.0);
    FAIL() << "expected OracleCapExceeded";
  } catch (const OracleCapExceeded& e) {
    EXPECT_DOUBLE_EQ(e.required(), 101.0 * 101.0);
  }
  EXPECT_THROW(GridOptimum(instance, 0.0), InvalidArgument);
  EXPECT_THROW(GridOptimum(instance, 0.1, kDefaultLatticeCap, 0),
               InvalidArgument);
}

TEST(DenseRatioOracleTest, LinearAndConcaveSections) {
  const Objective linear = testing::Scalar([](double y) { return 2 * y; }, 0.0);
  const RatioScan flat =
      DenseRatioOracle(linear, Point::Zero(1), 0, 0.1, 1.0, 0.01);
  EXPECT_NEAR(flat.ratio, 2.0, 1e-12);
  const Objective root = testing::Scalar([](double y) { return std::sqrt(y); }, 0.0);
  const RatioScan steep = DenseRatioOracle(root, Point::Zero(1), 0, 0.04, 1.0, 0.01);
  EXPECT_DOUBLE_EQ(steep.step, 0.04);
  EXPECT_DOUBLE_EQ(steep.ratio, 5.0);
  const RatioScan shifted =
      DenseRatioOracle(linear, Point::Zero(1), 0, 0.5, 1.0, 0.01, 1.0);
  EXPECT_DOUBLE_EQ(shifted.step, 1.0);
  EXPECT_DOUBLE_EQ(shifted.ratio, 1.0);
  EXPECT_THROW(DenseRatioOracle(linear, Point::Zero(1), 0, 0.0, 1.0, 0.01),
               InvalidArgument);
}

TEST(DenseTargetOracleTest, Examples) {
  const Objective square = testing::Scalar([](double y) { return y * y; }, 2.0);
  const auto hit = DenseTargetOracle(square, Point::Zero(1), 0, 0.25, 0.01, 1.0);
  ASSERT_TRUE(hit.has_value());
  EXPECT_NEAR(*hit, 0.5, 1e-12);
  EXPECT_FALSE(
      DenseTargetOracle(square, Point::Zero(1), 0, 2.0, 0.01, 1.0).has_value());
  const auto start = DenseTargetOracle(square, Point({0.5}), 0, 0.1, 0.01, 0.5);
  ASSERT_TRUE(start.has_value());
  EXPECT_EQ(*start, 0.0);
}

TEST(ConditionedGuaranteeTest, TwoDimQuadratic) {
  const ProblemInstance instance = testing::TwoDimQuadratic();
  const ConditionedGuaranteeReport report =
      VerifyConditionedGuarantee(instance, {.eps = 0.1}, Point({1.0, 0.0}));
  EXPECT_TRUE(report.ok());
  EXPECT_GT(report.total_iterations, 0u);
  EXPECT_LE(report.good_iterations, report.total_iterations);
  EXPECT_GE(report.tightest_slack, 0.0);
}

TEST(ConditionedGuaranteeTest, ZeroReferenceMakesEveryIterationGood) {
  std::mt19937_64 rng(83);
  const ProblemInstance instance =
      bench::BuildInstance(testing::RandomConcaveFile(3, 1.0, rng));
  const ConditionedGuaranteeReport report =
      VerifyConditionedGuarantee(instance, {.eps = 0.1}, Point::Zero(3));
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.good_iterations, report.total_iterations);
}

TEST(GridOptimumTest, SolversStayBelowTheOracleUpToDiscretization) {
  std::mt19937_64 rng(89);
  for (int t = 0; t < 6; ++t) {
    const std::size_t n = 2 + t % 2;
    const ProblemInstance instance = bench::BuildInstance(
        t % 2 == 0 ? testing::RandomQuadraticFile(n, 1.0, rng)
                   : testing::RandomConcaveFile(n, 1.0, rng));
    const double res = 0.02;
    const double opt = GridOptimum(instance, res).best_value;
    const double slack = instance.objective().smoothness() *
                         std::sqrt(static_cast<double>(n)) * res *
                         (1 + instance.budget());
    const CaConfig config{.eps = 0.1};
    EXPECT_LE(CoordinateAscent(instance, config).value, opt + slack);
    EXPECT_LE(EnhancedCoordinateAscent(instance, config).value, opt + slack);
    EXPECT_LE(FullyEnhancedCoordinateAscent(instance, config).value,
              opt + slack);
  }
}

TEST(ConditionedGuaranteeTest, RandomInstancesAgainstGridOptimum) {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + t % 3;
    const ProblemInstance instance = bench::BuildInstance(
        t % 2 == 0 ? testing::RandomQuadraticFile(n, 1.0, rng)
                   : testing::RandomConcaveFile(n, 1.0, rng));
    const Point y = GridOptimum(instance, 0.1).best_point;
    const ConditionedGuaranteeReport report =
        VerifyConditionedGuarantee(instance, {.eps = 0.1}, y);
    EXPECT_TRUE(report.ok()) << "instance " << t;
  }
}

TEST(ConditionedGuaranteeTest, RejectsInfeasibleReference) {
  EXPECT_THROW(VerifyConditionedGuarantee(testing::TwoDimQuadratic(),
                                          {.eps = 0.1}, Point({1.0, 1.0})),
               InvalidArgument);
}

}  // namespace
}  // namespace csmax
