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

#include "csmax/onedim.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace csmax {
namespace {

void CheckEps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw InvalidArgument("eps must lie in (0, 1)");
  }
}

void CheckSection(const Objective& objective, const Point& x,
                  std::size_t coordinate) {
  if (x.size() != objective.dimension()) {
    throw InvalidArgument("point dimension does not match the objective");
  }
  if (coordinate >= x.size()) {
    throw InvalidArgument("coordinate out of range");
  }
}

// F(x + step * e_i) without materializing a Point per call.
double EvaluateSection(const Objective& objective, std::vector<double>& probe,
                       std::size_t coordinate, double origin, double step) {
  probe[coordinate] = origin + step;
  return objective.Evaluate(probe);
}

}  // namespace

RatioGrid BuildRatioGrid(double a, double b, double eps, double budget) {
  if (!(a > 0.0)) throw InvalidArgument("grid start a must be positive");
  if (a > b) throw InvalidArgument("grid start a exceeds end b");
  if (b > budget) throw InvalidArgument("grid end b exceeds the budget");
  if (!std::isfinite(b)) throw InvalidArgument("grid end must be finite");
  CheckEps(eps);

  RatioGrid grid{.points = {}, .a = a, .b = b, .eps = eps};
  for (double z = a; z <= b; z += std::sqrt(eps * z)) {
    grid.points.push_back(z);
  }
  if (grid.points.back() != b) grid.points.push_back(b);
  return grid;
}

std::size_t RatioGridSizeBound(double a, double eps, double budget) {
  const double doubling = std::max(0.0, std::ceil(std::log2(eps / a)));
  const double growth = std::ceil(4.0 * std::sqrt(budget / eps));
  return static_cast<std::size_t>(doubling + growth) + 3;
}

RatioSearch MaximizeRatio(const Objective& objective, const Point& x,
                          std::size_t coordinate, double a, double b,
                          double eps, double baseline) {
  CheckSection(objective, x, coordinate);
  const RatioGrid grid = BuildRatioGrid(a, b, eps, b);

  std::vector<double> probe(x.coords().begin(), x.coords().end());
  const double origin = x[coordinate];
  RatioSearch best;
  best.grid_size = grid.size();
  bool first = true;
  for (double y : grid.points) {
    const double value =
        EvaluateSection(objective, probe, coordinate, origin, y);
    const double ratio = (value - baseline) / y;
    // Ascending scan with >= keeps the largest y among ties.
    if (first || ratio >= best.ratio) {
      best.step = y;
      best.ratio = ratio;
      best.value = value;
      first = false;
    }
  }
  return best;
}

TargetSearch FindTargetValue(const Objective& objective, const Point& x,
                             std::size_t coordinate, double target,
                             double eps, double reach) {
  CheckSection(objective, x, coordinate);
  CheckEps(eps);
  if (!std::isfinite(reach) || reach < 0.0) {
    throw InvalidArgument("reach must be finite and non-negative");
  }
  if (!std::isfinite(target)) throw InvalidArgument("target must be finite");

  std::vector<double> probe(x.coords().begin(), x.coords().end());
  const double origin = x[coordinate];

  TargetSearch out;
  double lo = 0.0;
  double hi = reach;
  // The nominal width is halved exactly, so the iteration count depends only
  // on reach / eps and not on rounding in lo and hi.
  for (double width = reach; width >= eps; width /= 2.0) {
    const double mid = (lo + hi) / 2.0;
    if (EvaluateSection(objective, probe, coordinate, origin, mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++out.bisections;
  }

  const double value_lo =
      EvaluateSection(objective, probe, coordinate, origin, lo);
  const double value_hi =
      EvaluateSection(objective, probe, coordinate, origin, hi);
  const double tol = 1e-9 * std::max(1.0, std::abs(target));
  // lo > 0 was probed below target and hi < reach reached it, so only the
  // section ends can violate the target range.
  if (value_lo > target + tol) {
    throw InvalidArgument("target lies below F(x)");
  }
  if (value_hi < target - tol) {
    throw InvalidArgument("target exceeds F(x + reach e_i)");
  }

  out.bracket_lo = lo;
  out.bracket_hi = hi;
  const double width = hi - lo;
  if (!(width > 0.0)) {
    out.step = lo;
    return out;
  }
  out.slope = (value_hi - value_lo) / width + eps * objective.smoothness() / 2;
  double rise = 0.0;
  if (out.slope > 0.0) {
    rise = std::clamp((target - value_lo) / out.slope, 0.0, width);
  }
  out.step = lo + rise;
  return out;
}

std::size_t TargetEvaluationBound(double budget, double eps) {
  const double halvings = std::max(0.0, std::ceil(std::log2(budget / eps)));
  return static_cast<std::size_t>(halvings) + 3;
}

}  // namespace csmax
