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

// Brute-force references used to validate the solvers: exhaustive lattice
// search for OPT, dense scans of one-dimensional sections, and an
// instrumented re-run of coordinate ascent that checks the per-iteration
// guarantee against a reference solution.

#ifndef CSMAX_ORACLE_H_
#define CSMAX_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csmax/problem.h"
#include "csmax/solvers.h"

namespace csmax {

class OracleCapExceeded : public std::runtime_error {
 public:
  OracleCapExceeded(double required, double cap);
  double required() const { return required_; }

 private:
  double required_;
};

inline constexpr double kDefaultLatticeCap = 1e8;

struct GridSearchResult {
  Point best_point;
  double best_value = 0.0;
  double resolution = 0.0;
  std::uint64_t points_evaluated = 0;
};

// Evaluates every feasible lattice point {0, res, 2 res, ...}^n within the
// box, plus each such point with one coordinate raised to exhaust the
// budget (clamped to the box). The result is a lower bound on F(OPT).
// Ties resolve to the lexicographically smallest point.
GridSearchResult GridOptimum(const ProblemInstance& instance,
                             double resolution,
                             double lattice_cap = kDefaultLatticeCap,
                             std::size_t workers = 1);

// Number of lattice points prod_i (ceil(u_i / res) + 1).
double LatticeSize(const ProblemInstance& instance, double resolution);

struct RatioScan {
  double step = 0.0;
  double ratio = 0.0;
};

// Scans y in {a, a + res, ...} u {b} for the largest (F(x + y e_i) - baseline) / y.
RatioScan DenseRatioOracle(const Objective& objective, const Point& x,
                           std::size_t coordinate, double a, double b,
                           double resolution, double baseline = 0.0);

// Smallest y in {0, res, 2 res, ...} u {reach} with F(x + y e_i) >= target.
std::optional<double> DenseTargetOracle(const Objective& objective,
                                        const Point& x, std::size_t coordinate,
                                        double target, double resolution,
                                        double reach);

struct GuaranteeViolation {
  std::size_t iteration = 0;
  double lhs = 0.0;  // F(x^(h))
  double rhs = 0.0;  // (1 - exp(-|x^(h)| / (|y| + eps B))) F(y) - |x^(h)| eps L
};

struct ConditionedGuaranteeReport {
  std::size_t total_iterations = 0;
  std::size_t good_iterations = 0;  // length of the good prefix
  double tightest_slack = 0.0;      // min over checked h of lhs - rhs
  std::vector<GuaranteeViolation> violations;

  bool ok() const { return violations.empty(); }
};

// Re-runs CoordinateAscent with a trace. An iteration is good when, at its
// start, y_i - x_i <= d'_i holds for every raisable coordinate i. For every
// h up to the end of the good prefix, checks
//   F(x^(h)) >= (1 - exp(-|x^(h)|_1 / (|y|_1 + eps B))) F(y) - |x^(h)|_1 eps L.
ConditionedGuaranteeReport VerifyConditionedGuarantee(
    const ProblemInstance& instance, const CaConfig& config,
    const Point& reference);

}  // namespace csmax

#endif  // CSMAX_ORACLE_H_
