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

#include "csmax/solvers.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "csmax/bench.h"
#include "csmax/objectives.h"
#include "csmax/oracle.h"
#include "support/test_instances.h"

namespace csmax {
namespace {

constexpr double kE = std::numbers::e;

ProblemInstance Zero(std::size_t n) {
  return ProblemInstance(
      Objective(n, 0.0, [](std::span<const double>) { return 0.0; }),
      BoxDomain(std::vector<double>(n, 1.0)), 1.0);
}

double IterationCap(std::size_t n, double eps) {
  return static_cast<double>(n) + 1.0 + static_cast<double>(n) / eps;
}

TEST(ValidateConfigTest, EpsilonRange) {
  EXPECT_THROW(ValidateConfig({.eps = 0.0}), InvalidArgument);
  EXPECT_THROW(ValidateConfig({.eps = 0.25}), InvalidArgument);
  EXPECT_NO_THROW(ValidateConfig({.eps = 0.2499}));
  EXPECT_THROW(CoordinateAscent(Zero(2), {.eps = 0.3}), InvalidArgument);
}

TEST(CoordinateAscentTest, ZeroObjective) {
  const ProblemInstance instance = Zero(3);
  const SolveResult r = CoordinateAscent(instance, {.eps = 0.1});
  EXPECT_EQ(r.value, 0.0);
  EXPECT_TRUE(Feasible(instance, r.point));
  EXPECT_LE(r.main_iterations, IterationCap(3, 0.1));
}

TEST(CoordinateAscentTest, TwoDimQuadraticSpendsTheBudget) {
  const ProblemInstance instance = testing::TwoDimQuadratic();
  const SolveResult r = CoordinateAscent(instance, {.eps = 0.1});
  EXPECT_GE(r.value, 0.0);
  EXPECT_NEAR(r.point.L1Norm(), 1.0, instance.tolerance());
  EXPECT_TRUE(Feasible(instance, r.point));
  EXPECT_NEAR(r.value, instance.objective()(r.point), 1e-12);
  EXPECT_LE(r.value, 1.0 + 1e-12);
}

TEST(CoordinateAscentTest, SmallCoordinateGuarantee) {
  const std::vector<double> u(5, 0.2);
  const ConcaveLinearSpec spec{.w = std::vector<double>(5, 1.0),
                               .kind = ConcaveKind::kOneMinusExp};
  const ProblemInstance instance(MakeConcaveLinear(spec, u), BoxDomain(u), 1.0);
  const double eps = 0.05;
  const SolveResult r = CoordinateAscent(instance, {.eps = eps});
  const GridSearchResult opt = GridOptimum(instance, 0.02);
  EXPECT_NEAR(opt.best_value, 1.0 - std::exp(-1.0), 1e-12);
  const double bound = (1.0 - 1.0 / kE - 0.2 - eps) * opt.best_value -
                       eps * 1.0 * instance.objective().smoothness();
  EXPECT_GE(r.value, bound);
  EXPECT_LE(r.main_iterations, IterationCap(5, eps));
}

TEST(CoordinateAscentTest, TraceInvariants) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 4;
    const bench::InstanceFile file =
        t % 2 == 0 ? testing::RandomQuadraticFile(n, 1.0 + t % 3, rng)
                   : testing::RandomConcaveFile(n, 1.0 + t % 3, rng);
    const ProblemInstance instance = bench::BuildInstance(file);
    const double eps = 0.05 + 0.05 * (t % 4);
    const SolveResult r = CoordinateAscent(instance, {.eps = eps, .trace = true});
    ASSERT_TRUE(r.trace.has_value());
    const std::vector<TraceEntry>& trace = *r.trace;
    ASSERT_EQ(trace.size(), r.main_iterations + 1);
    EXPECT_LE(r.main_iterations, IterationCap(n, eps));
    const double tol = instance.tolerance();
    const double delta = eps * instance.budget() / n;
    for (std::size_t h = 0; h < trace.size(); ++h) {
      EXPECT_TRUE(Feasible(instance, trace[h].point));
      if (h == 0) continue;
      const Point& before = trace[h - 1].point;
      const Point& after = trace[h].point;
      EXPECT_GE(trace[h].value, trace[h - 1].value);
      std::size_t moved = 0;
      std::size_t changed = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (after[i] != before[i]) {
          moved = i;
          ++changed;
        }
      }
      ASSERT_EQ(changed, 1u);
      const bool hits_box = after[moved] >= instance.domain()[moved] - tol;
      const bool hits_budget = after.L1Norm() >= instance.budget() - tol;
      const bool long_step = after.L1Norm() - before.L1Norm() >= delta - tol;
      EXPECT_TRUE(hits_box || hits_budget || long_step) << "iteration " << h;
    }
    EXPECT_EQ(r.value, trace.back().value);
    EXPECT_EQ(r.point, trace.back().point);
  }
}

TEST(CoordinateAscentTest, ReportsEvaluationsFromTheCounter) {
  const ProblemInstance instance = testing::TwoDimQuadratic();
  const std::uint64_t before = instance.objective().eval_count();
  const SolveResult r = CoordinateAscent(instance, {.eps = 0.1});
  EXPECT_EQ(r.evaluations, instance.objective().eval_count() - before);
  EXPECT_GT(r.evaluations, 0u);
}

TEST(EnhancedCoordinateAscentTest, SingleCoordinateCarriesAllValue) {
  const std::vector<double> u = {1.0, 1.0};
  const ProblemInstance instance(
      Objective(2, 0.0, [](std::span<const double> x) { return x[0]; }),
      BoxDomain(u), 1.0);
  const SolveResult r = EnhancedCoordinateAscent(instance, {.eps = 0.1});
  EXPECT_EQ(r.value, 1.0);
}

TEST(EnhancedCoordinateAscentTest, TwoDimQuadraticBound) {
  const ProblemInstance instance = testing::TwoDimQuadratic();
  const double eps = 0.05;
  const SolveResult r = EnhancedCoordinateAscent(instance, {.eps = eps});
  EXPECT_GE(r.value, (0.387 - 2 * eps) * 1.0 - eps * 1.0 * 0.5);
  // u_1 e_1 is itself optimal here.
  EXPECT_EQ(r.value, 1.0);
}

TEST(EnhancedCoordinateAscentTest, DominatesItsParts) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 3;
    const ProblemInstance instance = bench::BuildInstance(
        t % 2 == 0 ? testing::RandomQuadraticFile(n, 1.0, rng)
                   : testing::RandomConcaveFile(n, 1.0, rng));
    const CaConfig config{.eps = 0.1};
    const SolveResult eca = EnhancedCoordinateAscent(instance, config);
    const SolveResult ca = CoordinateAscent(instance, config);
    EXPECT_GE(eca.value, ca.value);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_GE(eca.value, instance.objective()(
                               Point::Zero(n).WithStep(i, instance.domain()[i])));
    }
    EXPECT_TRUE(Feasible(instance, eca.point));
  }
}

TEST(EnhancedCoordinateAscentTest, GuaranteeOnRandomInstances) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + t % 4;
    const ProblemInstance instance = bench::BuildInstance(
        t % 2 == 0 ? testing::RandomQuadraticFile(n, 1.0, rng)
                   : testing::RandomConcaveFile(n, 1.0, rng));
    const double eps = 0.05 * (1 + t % 4);
    const SolveResult r = EnhancedCoordinateAscent(instance, {.eps = eps});
    const double opt = GridOptimum(instance, instance.budget() / 50).best_value;
    const double bound = ((kE - 1) / (2 * kE - 1) - 2 * eps) * opt -
                         eps * instance.budget() *
                             instance.objective().smoothness();
    EXPECT_GE(r.value, bound) << "instance " << t;
  }
}

TEST(GuessSetTest, ArithmeticLadder) {
  const Objective f = testing::Scalar([](double y) { return y; }, 0.0);
  const GuessSet j = ComputeGuessSet(f, Point::Zero(1), 0, 1.0, 0.25);
  const std::vector<double> expected = {0.0, 0.25, 0.5, 0.75, 1.0};
  EXPECT_EQ(j.values, expected);
  EXPECT_EQ(j.step, 0.25);
}

TEST(GuessSetTest, FlatSectionsGiveSingleton) {
  // F depends on x_0 only, so coordinate 1 has F(u_1 e_1) = 0.
  const Objective f(2, 0.0, [](std::span<const double> x) { return x[0]; });
  const GuessSet zero_single = ComputeGuessSet(f, Point({0.5, 0.0}), 1, 1.0, 0.1);
  EXPECT_EQ(zero_single.values, std::vector<double>{0.5});
  // min(1, x_0 + x_1) is already saturated at x = (1, 0).
  const Objective capped(2, 0.0, [](std::span<const double> x) {
    return std::min(1.0, x[0] + x[1]);
  });
  const GuessSet saturated =
      ComputeGuessSet(capped, Point({1.0, 0.0}), 1, 1.0, 0.1);
  EXPECT_EQ(saturated.values, std::vector<double>{1.0});
}

TEST(GuessSetTest, ValuesStayInSectionRange) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 40; ++t) {
    const testing::Section s = testing::RandomSection(rng);
    const Objective& f = s.instance.objective();
    const double eps = 0.05 + 0.05 * (t % 4);
    const double upper = s.instance.domain()[s.coordinate];
    const Point x = s.x;
    const GuessSet j = ComputeGuessSet(f, x, s.coordinate, upper, eps);
    const double low = f(x);
    const double high = f(x.WithStep(s.coordinate, upper - x[s.coordinate]));
    ASSERT_FALSE(j.values.empty());
    EXPECT_EQ(j.values.front(), low);
    EXPECT_LE(j.values.size(), 1 + std::ceil(1 / eps));
    for (std::size_t k = 0; k < j.values.size(); ++k) {
      EXPECT_GE(j.values[k], low);
      EXPECT_LE(j.values[k], high);
      if (k > 0 && j.values[k] < high) {
        EXPECT_NEAR(j.values[k] - j.values[k - 1], j.step, 1e-12);
      }
    }
  }
}

TEST(FullyEnhancedTest, SingleCoordinate) {
  const std::vector<double> u = {1.0};
  const ProblemInstance instance(
      testing::Scalar([](double y) { return y; }, 0.0), BoxDomain(u), 1.0);
  const SolveResult r = FullyEnhancedCoordinateAscent(instance, {.eps = 0.1});
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_TRUE(Feasible(instance, r.point));
}

TEST(FullyEnhancedTest, TwoDimQuadratic) {
  const ProblemInstance instance = testing::TwoDimQuadratic();
  const double eps = 0.1;
  const SolveResult r = FullyEnhancedCoordinateAscent(instance, {.eps = eps});
  EXPECT_GE(r.value, (1 - 1 / kE - 4 * eps) * 1.0 - eps * 3 * 0.5);
  EXPECT_LE(r.value, 1.0 + 1e-12);
  EXPECT_TRUE(Feasible(instance, r.point));
}

TEST(FullyEnhancedTest, WorkerCountDoesNotChangeTheResult) {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 4; ++t) {
    const std::size_t n = 2 + t % 3;
    const ProblemInstance instance = bench::BuildInstance(
        t % 2 == 0 ? testing::RandomQuadraticFile(n, 1.0, rng)
                   : testing::RandomConcaveFile(n, 1.0, rng));
    const CaConfig config{.eps = 0.1};
    const SolveResult one = FullyEnhancedCoordinateAscent(instance, config, 1);
    const SolveResult eight = FullyEnhancedCoordinateAscent(instance, config, 8);
    EXPECT_EQ(one.point, eight.point);
    EXPECT_EQ(one.value, eight.value);
    EXPECT_EQ(one.evaluations, eight.evaluations);
    EXPECT_EQ(one.main_iterations, eight.main_iterations);
  }
}

TEST(FullyEnhancedTest, CandidatesAreFeasibleAndDominated) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 6; ++t) {
    const std::size_t n = 3 + t % 2;
    const ProblemInstance instance = bench::BuildInstance(
        t % 2 == 0 ? testing::RandomQuadraticFile(n, 1.0, rng)
                   : testing::RandomConcaveFile(n, 1.0, rng));
    const double eps = 0.2;
    const CaConfig config{.eps = eps};
    const CandidateSet set = EnumerateCandidates(instance, config, 2);
    const SolveResult best = FullyEnhancedCoordinateAscent(instance, config, 2);
    const double per_guess = 1 + std::ceil(1 / eps);
    EXPECT_LE(set.tuples_visited, n * (n - 1) * per_guess * per_guess);
    EXPECT_LE(set.candidates.size(), set.tuples_visited);
    ASSERT_FALSE(set.candidates.empty());
    for (const Candidate& c : set.candidates) {
      EXPECT_TRUE(Feasible(instance, c.point));
      EXPECT_NE(c.h1, c.h2);
      EXPECT_GE(best.value, c.value);
      EXPECT_LE(c.inner_iterations, IterationCap(c.inner_dimension, eps));
    }
    EXPECT_TRUE(std::is_sorted(
        set.candidates.begin(), set.candidates.end(),
        [](const Candidate& a, const Candidate& b) {
          return std::tie(a.h1, a.h2, a.v1_index, a.v2_index) <
                 std::tie(b.h1, b.h2, b.v1_index, b.v2_index);
        }));
  }
}

TEST(FullyEnhancedTest, RepeatedRunsAreIdentical) {
  std::mt19937_64 rng(67);
  const ProblemInstance instance =
      bench::BuildInstance(testing::RandomQuadraticFile(3, 1.0, rng));
  const CaConfig config{.eps = 0.1};
  const SolveResult a = FullyEnhancedCoordinateAscent(instance, config, 3);
  const SolveResult b = FullyEnhancedCoordinateAscent(instance, config, 3);
  EXPECT_EQ(a.point, b.point);
  EXPECT_EQ(a.value, b.value);
  const SolveResult c = CoordinateAscent(instance, config);
  const SolveResult d = CoordinateAscent(instance, config);
  EXPECT_EQ(c.point, d.point);
}

TEST(FullyEnhancedTest, RejectsZeroWorkers) {
  EXPECT_THROW(FullyEnhancedCoordinateAscent(testing::TwoDimQuadratic(),
                                             {.eps = 0.1}, 0),
               InvalidArgument);
}

}  // namespace
}  // namespace csmax
