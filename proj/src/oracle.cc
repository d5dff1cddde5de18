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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <thread>

namespace csmax {
namespace {

std::string CapMessage(double required, double cap) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "lattice needs %.0f points but the cap is %.0f; raise the cap "
                "to at least %.0f or coarsen the resolution",
                required, cap, required);
  return buf;
}

struct Best {
  double value = 0.0;
  std::vector<double> point;
  bool valid = false;

  void Offer(double v, const std::vector<double>& p) {
    if (!valid || v > value ||
        (v == value && std::lexicographical_compare(p.begin(), p.end(),
                                                    point.begin(),
                                                    point.end()))) {
      value = v;
      point = p;
      valid = true;
    }
  }
};

// Visits the lattice slab whose first coordinate has index `first`.
void ScanSlab(const ProblemInstance& instance, double resolution,
              const std::vector<std::size_t>& counts, std::size_t first,
              Best& best, std::uint64_t& evaluated) {
  const std::size_t n = instance.dimension();
  const double budget = instance.budget();
  const double tol = instance.tolerance();
  const Objective& objective = instance.objective();
  auto coordinate = [&](std::size_t i, std::size_t k) {
    return std::min(static_cast<double>(k) * resolution, instance.domain()[i]);
  };

  std::vector<std::size_t> index(n, 0);
  index[0] = first;
  std::vector<double> x(n);
  std::vector<double> raised(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) x[i] = coordinate(i, index[i]);
    const double norm = std::accumulate(x.begin(), x.end(), 0.0);
    if (norm <= budget + tol) {
      best.Offer(objective.Evaluate(x), x);
      ++evaluated;
      for (std::size_t i = 0; i < n; ++i) {
        const double raise =
            std::min(instance.domain()[i] - x[i], budget - norm);
        if (raise <= tol) continue;
        raised = x;
        raised[i] += raise;
        best.Offer(objective.Evaluate(raised), raised);
        ++evaluated;
      }
    }
    // Odometer over coordinates 1..n-1.
    std::size_t i = n;
    while (i > 1) {
      --i;
      if (++index[i] < counts[i]) break;
      index[i] = 0;
      if (i == 1) return;
    }
    if (n <= 1) return;
  }
}

}  // namespace

OracleCapExceeded::OracleCapExceeded(double required, double cap)
    : std::runtime_error(CapMessage(required, cap)), required_(required) {}

double LatticeSize(const ProblemInstance& instance, double resolution) {
  double size = 1.0;
  for (std::size_t i = 0; i < instance.dimension(); ++i) {
    size *= std::ceil(instance.domain()[i] / resolution) + 1.0;
  }
  return size;
}

GridSearchResult GridOptimum(const ProblemInstance& instance,
                             double resolution, double lattice_cap,
                             std::size_t workers) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw InvalidArgument("resolution must be positive and finite");
  }
  if (workers == 0) throw InvalidArgument("workers must be at least 1");
  const double required = LatticeSize(instance, resolution);
  if (required > lattice_cap) throw OracleCapExceeded(required, lattice_cap);

  const std::size_t n = instance.dimension();
  GridSearchResult result;
  result.resolution = resolution;
  if (n == 0) {
    result.best_value = instance.objective().Evaluate({});
    result.points_evaluated = 1;
    return result;
  }

  std::vector<std::size_t> counts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = instance.domain()[i];
    // Lattice values k * res <= u, allowing for rounding in u / res.
    counts[i] = static_cast<std::size_t>(std::floor(u / resolution * (1 + 1e-12))) + 1;
  }

  const std::size_t slabs = counts[0];
  std::vector<Best> bests(slabs);
  std::vector<std::uint64_t> evaluated(slabs, 0);
  std::vector<std::exception_ptr> errors(slabs);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t s = next.fetch_add(1); s < slabs; s = next.fetch_add(1)) {
      try {
        ScanSlab(instance, resolution, counts, s, bests[s], evaluated[s]);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(workers, slabs);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Best overall;
  for (std::size_t s = 0; s < slabs; ++s) {
    if (bests[s].valid) overall.Offer(bests[s].value, bests[s].point);
    result.points_evaluated += evaluated[s];
  }
  result.best_value = overall.value;
  result.best_point = Point(overall.point);
  return result;
}

RatioScan DenseRatioOracle(const Objective& objective, const Point& x,
                           std::size_t coordinate, double a, double b,
                           double resolution, double baseline) {
  if (!(a > 0.0) || a > b) throw InvalidArgument("need 0 < a <= b");
  if (!(resolution > 0.0)) throw InvalidArgument("resolution must be positive");
  if (coordinate >= x.size()) throw InvalidArgument("coordinate out of range");
  std::vector<double> probe(x.coords().begin(), x.coords().end());
  const double origin = x[coordinate];
  RatioScan best;
  bool first = true;
  auto visit = [&](double y) {
    probe[coordinate] = origin + y;
    const double ratio = (objective.Evaluate(probe) - baseline) / y;
    if (first || ratio > best.ratio) {
      best = {y, ratio};
      first = false;
    }
  };
  for (std::size_t k = 0;; ++k) {
    const double y = a + static_cast<double>(k) * resolution;
    if (y > b) break;
    visit(y);
  }
  visit(b);
  return best;
}

std::optional<double> DenseTargetOracle(const Objective& objective,
                                        const Point& x, std::size_t coordinate,
                                        double target, double resolution,
                                        double reach) {
  if (!(resolution > 0.0)) throw InvalidArgument("resolution must be positive");
  if (coordinate >= x.size()) throw InvalidArgument("coordinate out of range");
  std::vector<double> probe(x.coords().begin(), x.coords().end());
  const double origin = x[coordinate];
  auto reaches = [&](double y) {
    probe[coordinate] = origin + y;
    return objective.Evaluate(probe) >= target;
  };
  for (std::size_t k = 0;; ++k) {
    const double y = static_cast<double>(k) * resolution;
    if (y > reach) break;
    if (reaches(y)) return y;
  }
  if (reaches(reach)) return reach;
  return std::nullopt;
}

ConditionedGuaranteeReport VerifyConditionedGuarantee(
    const ProblemInstance& instance, const CaConfig& config,
    const Point& reference) {
  if (!Feasible(instance, reference)) {
    throw InvalidArgument("reference solution must be feasible");
  }
  CaConfig traced = config;
  traced.trace = true;
  const SolveResult run = CoordinateAscent(instance, traced);
  const std::vector<TraceEntry>& trace = *run.trace;
  const double tol = instance.tolerance();

  ConditionedGuaranteeReport report;
  report.total_iterations = run.main_iterations;
  for (std::size_t h = 1; h < trace.size(); ++h) {
    const Point& x = trace[h - 1].point;
    const Headroom headroom = ComputeHeadroom(instance, x);
    bool good = true;
    for (std::size_t k = 0; k < headroom.coordinates.size(); ++k) {
      const std::size_t i = headroom.coordinates[k];
      if (reference[i] - x[i] > headroom.limits[k] + tol) good = false;
    }
    if (!good) break;
    ++report.good_iterations;
  }

  const double reference_value = instance.objective()(reference);
  const double reference_norm = reference.L1Norm();
  const double eps = config.eps;
  const double smoothness = instance.objective().smoothness();
  const double slack_tol = 1e-9 * std::max(1.0, std::abs(reference_value));
  bool first = true;
  for (std::size_t h = 0; h <= report.good_iterations; ++h) {
    const double norm = trace[h].point.L1Norm();
    const double rhs =
        -std::expm1(-norm / (reference_norm + eps * instance.budget())) *
            reference_value -
        norm * eps * smoothness;
    const double lhs = trace[h].value;
    const double slack = lhs - rhs;
    if (first || slack < report.tightest_slack) report.tightest_slack = slack;
    first = false;
    if (slack < -slack_tol) report.violations.push_back({h, lhs, rhs});
  }
  return report;
}

}  // namespace csmax
