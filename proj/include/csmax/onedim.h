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

// One-dimensional subroutines along a coordinate section y -> F(x + y e_i).
//
//  * MaximizeRatio: approximately maximizes (F(x + y e_i) - baseline) / y
//    over y in [a, b], up to an additive eps * L, by scanning the grid
//    z_0 = a, z_k = z_{k-1} + sqrt(eps * z_{k-1}) plus the endpoint b.
//  * FindTargetValue: bisection followed by a slope-corrected linear
//    interpolation. Returns y with F(x + y e_i) >= v - eps * L such that no
//    smaller step reaches v.

#ifndef CSMAX_ONEDIM_H_
#define CSMAX_ONEDIM_H_

#include <cstddef>
#include <vector>

#include "csmax/problem.h"

namespace csmax {

struct RatioGrid {
  std::vector<double> points;  // sorted, unique, last element is b
  double a = 0.0;
  double b = 0.0;
  double eps = 0.0;

  std::size_t size() const { return points.size(); }
};

// Requires 0 < a <= b <= budget and eps in (0, 1).
RatioGrid BuildRatioGrid(double a, double b, double eps, double budget);

// ceil(log2(eps / a))_+ + ceil(4 sqrt(budget / eps)) + 3.
std::size_t RatioGridSizeBound(double a, double eps, double budget);

struct RatioSearch {
  double step = 0.0;       // the maximizing y
  double ratio = 0.0;      // (F(x + y e_i) - baseline) / y
  double value = 0.0;      // F(x + y e_i)
  std::size_t grid_size = 0;
};

// Evaluates F exactly grid_size times. Ties go to the largest y. The caller
// guarantees b <= u_i - x_i; `baseline` is usually 0 or F(x).
RatioSearch MaximizeRatio(const Objective& objective, const Point& x,
                          std::size_t coordinate, double a, double b,
                          double eps, double baseline = 0.0);

struct TargetSearch {
  double step = 0.0;     // returned y
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double slope = 0.0;    // d: secant slope over the bracket + eps * L / 2
  std::size_t bisections = 0;
};

// `reach` is u_i - x_i. Requires F(x) <= v <= F(x + reach e_i) up to a
// 1e-9 relative tolerance, checked from the bracket-end evaluations, so
// the call costs exactly bisections + 2 evaluations.
TargetSearch FindTargetValue(const Objective& objective, const Point& x,
                             std::size_t coordinate, double target,
                             double eps, double reach);

// ceil(log2(budget / eps)) + 3, the evaluation cap of FindTargetValue.
std::size_t TargetEvaluationBound(double budget, double eps);

}  // namespace csmax

#endif  // CSMAX_ONEDIM_H_
