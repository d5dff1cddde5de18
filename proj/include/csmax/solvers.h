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

// Coordinate-ascent solvers for max F(x) s.t. x in [0, u], ||x||_1 <= B.
//
// CoordinateAscent: repeatedly steps the coordinate with the best marginal
//   ratio (F(x + d e_i) - F(x)) / d, searching d in [min(d'_i, delta), d'_i]
//   with d'_i = min(u_i - x_i, B - ||x||_1) and delta = eps B / n.
//   At most n + 1 + n / eps main iterations.
// EnhancedCoordinateAscent: best of the CA output and the n points u_i e_i.
//   Value >= ((e - 1) / (2e - 1) - 2 eps) F(OPT) - eps B L.
// FullyEnhancedCoordinateAscent: guesses two heavy coordinates and their
//   target values on an eps-ladder, fixes them via FindTargetValue, and
//   completes each guess with CA on the contracted residual instance.
//   Value >= (1 - 1/e - 4 eps) F(OPT) - eps (B + 2) L.

#ifndef CSMAX_SOLVERS_H_
#define CSMAX_SOLVERS_H_

#include <cstddef>
#include <limits>
#include <vector>

#include "csmax/problem.h"

namespace csmax {

struct CaConfig {
  double eps = 0.1;  // in (0, 1/4)
  bool trace = false;
};

// Throws InvalidArgument unless eps lies in (0, 0.25).
void ValidateConfig(const CaConfig& config);

// The coordinates CA may still raise at x, with their feasible headroom d'_i.
struct Headroom {
  std::vector<std::size_t> coordinates;
  std::vector<double> limits;
};
Headroom ComputeHeadroom(const ProblemInstance& instance, const Point& x);

SolveResult CoordinateAscent(const ProblemInstance& instance,
                             const CaConfig& config);

SolveResult EnhancedCoordinateAscent(const ProblemInstance& instance,
                                     const CaConfig& config);

struct GuessSet {
  std::vector<double> values;  // F(x), F(x) + step, ... <= F(x v u_h e_h)
  double step = 0.0;           // eps * F(u_h e_h)
};

// J(x, h) = {F(x) + eps j F(u_h e_h) : j >= 0, value <= F(x v u_h e_h)}.
// Values overshooting the top by at most 1e-9 relative are clamped to it.
GuessSet ComputeGuessSet(const Objective& objective, const Point& x,
                         std::size_t coordinate, double upper, double eps);

inline constexpr std::size_t kNoCoordinate =
    std::numeric_limits<std::size_t>::max();

struct Candidate {
  std::size_t h1 = 0;
  std::size_t h2 = kNoCoordinate;  // kNoCoordinate when n == 1
  std::size_t v1_index = 0;
  std::size_t v2_index = 0;
  Point point;
  double value = 0.0;
  std::size_t inner_dimension = 0;   // dimension of the contracted instance
  std::size_t inner_iterations = 0;  // CA main iterations on it
};

struct CandidateSet {
  std::vector<Candidate> candidates;  // in lexicographic tuple order
  std::size_t tuples_visited = 0;     // including skipped infeasible guesses
  std::uint64_t evaluations = 0;
};

// Every candidate of the guessing loops, computed on `workers` threads. The
// output does not depend on `workers`.
CandidateSet EnumerateCandidates(const ProblemInstance& instance,
                                 const CaConfig& config, std::size_t workers);

// main_iterations reports the number of guessed tuples visited.
SolveResult FullyEnhancedCoordinateAscent(const ProblemInstance& instance,
                                          const CaConfig& config,
                                          std::size_t workers = 1);

}  // namespace csmax

#endif  // CSMAX_SOLVERS_H_
