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

// Objective families with known smoothness constants, and randomized
// checkers for submodularity, monotonicity and diminishing returns.

#ifndef CSMAX_OBJECTIVES_H_
#define CSMAX_OBJECTIVES_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "csmax/problem.h"

namespace csmax {

// F(x) = c^T x + 1/2 x^T Q x. Q is row-major n x n.
struct QuadraticSpec {
  std::vector<double> c;
  std::vector<std::vector<double>> q;
};

enum class ConcaveKind { kOneMinusExp, kSqrtShift };

// F(x) = g(w^T x) with g(t) = 1 - exp(-t) or sqrt(t + 1) - 1.
struct ConcaveLinearSpec {
  std::vector<double> w;
  ConcaveKind kind = ConcaveKind::kOneMinusExp;
};

// "one_minus_exp" / "sqrt_shift".
ConcaveKind ParseConcaveKind(std::string_view name);
std::string_view ConcaveKindName(ConcaveKind kind);

// Spectral norm of a symmetric matrix by power iteration on Q^T Q.
double SpectralNorm(const std::vector<std::vector<double>>& q);

// Validates symmetry, non-positive off-diagonal entries and the monotonicity
// certificate c_i + sum_j min(Q_ij u_j, 0) >= 0. L = ||Q||_2.
Objective MakeSubmodularQuadratic(const QuadraticSpec& spec,
                                  std::span<const double> upper);

// Same evaluation with only shape checks. For probing arbitrary quadratics
// with the property checkers.
Objective MakeQuadraticUnchecked(const QuadraticSpec& spec);

// L = max |g''| * ||w||_2^2 (1 for one_minus_exp, 1/4 for sqrt_shift).
Objective MakeConcaveLinear(const ConcaveLinearSpec& spec,
                            std::span<const double> upper);

struct PropertyReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_violation = 0.0;
  // First violating (x, y) pairs by trial index, at most kMaxWitnesses.
  std::vector<std::pair<Point, Point>> witnesses;

  static constexpr std::size_t kMaxWitnesses = 10;
};

// Violation: F(x) + F(y) < F(x v y) + F(x ^ y) - 1e-9 max(1, |F(x)| + |F(y)|).
PropertyReport CheckSubmodular(const Objective& objective,
                               const BoxDomain& domain, std::size_t trials,
                               std::uint64_t seed);

// Pairs (x, x v y); violation: F(x) > F(x v y) + tolerance.
PropertyReport CheckMonotone(const Objective& objective,
                             const BoxDomain& domain, std::size_t trials,
                             std::uint64_t seed);

// Pairs x <= y with a step z e_i keeping both in the box; violation:
// F(x + z e_i) - F(x) < F(y + z e_i) - F(y) - tolerance.
PropertyReport CheckDiminishingReturns(const Objective& objective,
                                       const BoxDomain& domain,
                                       std::size_t trials, std::uint64_t seed);

// Empirical lower bound on the gradient Lipschitz constant from central
// finite differences (step 1e-5 u_i) at `samples` random pairs.
double EstimateSmoothness(const Objective& objective, const BoxDomain& domain,
                          std::size_t samples, std::uint64_t seed);

}  // namespace csmax

#endif  // CSMAX_OBJECTIVES_H_
