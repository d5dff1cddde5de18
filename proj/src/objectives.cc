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

#include "csmax/objectives.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace csmax {
namespace {

constexpr double kCheckerTolerance = 1e-9;

void CheckShape(const QuadraticSpec& spec) {
  const std::size_t n = spec.c.size();
  if (spec.q.size() != n) {
    throw InvalidArgument("Q must have as many rows as c has entries");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.q[i].size() != n) throw InvalidArgument("Q must be square");
    if (!std::isfinite(spec.c[i])) throw InvalidArgument("c must be finite");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(spec.q[i][j])) {
        throw InvalidArgument("Q must be finite");
      }
      const double scale = std::max(1.0, std::abs(spec.q[i][j]));
      if (std::abs(spec.q[i][j] - spec.q[j][i]) > 1e-12 * scale) {
        throw InvalidArgument("Q must be symmetric");
      }
    }
  }
}

Objective QuadraticObjective(const QuadraticSpec& spec) {
  const std::size_t n = spec.c.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : spec.q) flat.insert(flat.end(), row.begin(), row.end());
  std::vector<double> c = spec.c;
  return Objective(n, SpectralNorm(spec.q),
                   [c, flat, n](std::span<const double> x) {
                     double linear = 0.0;
                     double quadratic = 0.0;
                     for (std::size_t i = 0; i < n; ++i) {
                       linear += c[i] * x[i];
                       double row = 0.0;
                       for (std::size_t j = 0; j < n; ++j) {
                         row += flat[i * n + j] * x[j];
                       }
                       quadratic += x[i] * row;
                     }
                     return linear + 0.5 * quadratic;
                   });
}

std::vector<double> SampleBox(const BoxDomain& domain, std::mt19937_64& rng) {
  std::vector<double> x(domain.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::uniform_real_distribution<double>(0.0, domain[i])(rng);
  }
  return x;
}

std::vector<double> Join(std::span<const double> x, std::span<const double> y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i], y[i]);
  return out;
}

std::vector<double> Meet(std::span<const double> x, std::span<const double> y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::min(x[i], y[i]);
  return out;
}

void CheckTrials(const Objective& objective, const BoxDomain& domain,
                 std::size_t trials) {
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  if (objective.dimension() != domain.size()) {
    throw InvalidArgument("objective and domain dimensions differ");
  }
}

void Record(PropertyReport& report, double shortfall, double allowed,
            std::span<const double> x, std::span<const double> y) {
  if (shortfall <= allowed) return;
  ++report.violations;
  report.worst_violation = std::max(report.worst_violation, shortfall);
  if (report.witnesses.size() < PropertyReport::kMaxWitnesses) {
    report.witnesses.emplace_back(
        Point(std::vector<double>(x.begin(), x.end())),
        Point(std::vector<double>(y.begin(), y.end())));
  }
}

}  // namespace

ConcaveKind ParseConcaveKind(std::string_view name) {
  if (name == "one_minus_exp") return ConcaveKind::kOneMinusExp;
  if (name == "sqrt_shift") return ConcaveKind::kSqrtShift;
  throw InvalidArgument("unknown concave kind '" + std::string(name) + "'");
}

std::string_view ConcaveKindName(ConcaveKind kind) {
  return kind == ConcaveKind::kOneMinusExp ? "one_minus_exp" : "sqrt_shift";
}

double SpectralNorm(const std::vector<std::vector<double>>& q) {
  const std::size_t n = q.size();
  if (n == 0) return 0.0;
  auto multiply = [&](const std::vector<double>& v) {
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out[i] += q[i][j] * v[j];
    }
    return out;
  };
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return std::sqrt(s);
  };

  // Iterating with Q^T Q = Q^2 avoids the oscillation between +lambda and
  // -lambda eigenvectors that plain iteration with Q suffers from.
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 1.0 / (i + 2.0);
  double scale = norm(v);
  for (double& e : v) e /= scale;
  double estimate = 0.0;
  for (int iter = 0; iter < 100000; ++iter) {
    std::vector<double> w = multiply(multiply(v));
    const double next = norm(w);
    if (next == 0.0) return 0.0;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / next;
    const bool converged = std::abs(next - estimate) <= 1e-8 * next;
    estimate = next;
    if (converged) break;
  }
  return std::sqrt(estimate);
}

Objective MakeSubmodularQuadratic(const QuadraticSpec& spec,
                                  std::span<const double> upper) {
  CheckShape(spec);
  const std::size_t n = spec.c.size();
  if (upper.size() != n) throw InvalidArgument("upper dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.c[i] < 0.0) throw InvalidArgument("c must be non-negative");
    double worst_gradient = spec.c[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && spec.q[i][j] > 0.0) {
        throw InvalidArgument("off-diagonal Q entries must be <= 0 (entry " +
                              std::to_string(i) + "," + std::to_string(j) +
                              ")");
      }
      worst_gradient += std::min(spec.q[i][j] * upper[j], 0.0);
    }
    if (worst_gradient < 0.0) {
      throw InvalidArgument("monotonicity certificate fails on coordinate " +
                            std::to_string(i));
    }
  }
  return QuadraticObjective(spec);
}

Objective MakeQuadraticUnchecked(const QuadraticSpec& spec) {
  CheckShape(spec);
  return QuadraticObjective(spec);
}

Objective MakeConcaveLinear(const ConcaveLinearSpec& spec,
                            std::span<const double> upper) {
  const std::size_t n = spec.w.size();
  if (upper.size() != n) throw InvalidArgument("upper dimension mismatch");
  double norm_sq = 0.0;
  for (double w : spec.w) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidArgument("concave-linear weights must be non-negative");
    }
    norm_sq += w * w;
  }
  const double curvature = spec.kind == ConcaveKind::kOneMinusExp ? 1.0 : 0.25;
  std::vector<double> w = spec.w;
  const ConcaveKind kind = spec.kind;
  return Objective(n, curvature * norm_sq,
                   [w, kind](std::span<const double> x) {
                     double t = 0.0;
                     for (std::size_t i = 0; i < w.size(); ++i) t += w[i] * x[i];
                     return kind == ConcaveKind::kOneMinusExp
                                ? -std::expm1(-t)
                                : std::sqrt(t + 1.0) - 1.0;
                   });
}

PropertyReport CheckSubmodular(const Objective& objective,
                               const BoxDomain& domain, std::size_t trials,
                               std::uint64_t seed) {
  CheckTrials(objective, domain, trials);
  std::mt19937_64 rng(seed);
  PropertyReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::vector<double> x = SampleBox(domain, rng);
    const std::vector<double> y = SampleBox(domain, rng);
    const double fx = objective.Evaluate(x);
    const double fy = objective.Evaluate(y);
    const double joined = objective.Evaluate(Join(x, y));
    const double met = objective.Evaluate(Meet(x, y));
    const double scale = std::max(1.0, std::abs(fx) + std::abs(fy));
    Record(report, (joined + met) - (fx + fy), kCheckerTolerance * scale, x, y);
  }
  return report;
}

PropertyReport CheckMonotone(const Objective& objective,
                             const BoxDomain& domain, std::size_t trials,
                             std::uint64_t seed) {
  CheckTrials(objective, domain, trials);
  std::mt19937_64 rng(seed);
  PropertyReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::vector<double> x = SampleBox(domain, rng);
    const std::vector<double> above = Join(x, SampleBox(domain, rng));
    const double low = objective.Evaluate(x);
    const double high = objective.Evaluate(above);
    const double scale = std::max(1.0, std::abs(low) + std::abs(high));
    Record(report, low - high, kCheckerTolerance * scale, x, above);
  }
  return report;
}

PropertyReport CheckDiminishingReturns(const Objective& objective,
                                       const BoxDomain& domain,
                                       std::size_t trials, std::uint64_t seed) {
  CheckTrials(objective, domain, trials);
  std::mt19937_64 rng(seed);
  PropertyReport report;
  report.trials = trials;
  const std::size_t n = domain.size();
  if (n == 0) return report;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::vector<double> a = SampleBox(domain, rng);
    const std::vector<double> b = SampleBox(domain, rng);
    const std::vector<double> x = Meet(a, b);
    const std::vector<double> y = Join(a, b);
    const std::size_t i =
        std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    const double z =
        std::uniform_real_distribution<double>(0.0, domain[i] - y[i])(rng);
    std::vector<double> x_step = x;
    std::vector<double> y_step = y;
    x_step[i] += z;
    y_step[i] += z;
    const double fx = objective.Evaluate(x);
    const double fy = objective.Evaluate(y);
    const double gain_low = objective.Evaluate(x_step) - fx;
    const double gain_high = objective.Evaluate(y_step) - fy;
    const double scale = std::max(1.0, std::abs(fx) + std::abs(fy));
    Record(report, gain_high - gain_low, kCheckerTolerance * scale, x, y);
  }
  return report;
}

double EstimateSmoothness(const Objective& objective, const BoxDomain& domain,
                          std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw InvalidArgument("samples must be at least 2");
  if (objective.dimension() != domain.size()) {
    throw InvalidArgument("objective and domain dimensions differ");
  }
  const std::size_t n = domain.size();
  std::vector<double> steps(n);
  for (std::size_t i = 0; i < n; ++i) steps[i] = 1e-5 * domain[i];

  std::mt19937_64 rng(seed);
  auto sample = [&] {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::uniform_real_distribution<double>(
          steps[i], domain[i] - steps[i])(rng);
    }
    return x;
  };
  auto gradient = [&](std::vector<double> x) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double centre = x[i];
      x[i] = centre + steps[i];
      const double forward = objective.Evaluate(x);
      x[i] = centre - steps[i];
      const double backward = objective.Evaluate(x);
      x[i] = centre;
      g[i] = (forward - backward) / (2.0 * steps[i]);
    }
    return g;
  };

  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::vector<double> x = sample();
    const std::vector<double> y = sample();
    const std::vector<double> gx = gradient(x);
    const std::vector<double> gy = gradient(y);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += (gx[i] - gy[i]) * (gx[i] - gy[i]);
      den += (x[i] - y[i]) * (x[i] - y[i]);
    }
    if (den > 0.0) best = std::max(best, std::sqrt(num / den));
  }
  return best;
}

}  // namespace csmax
