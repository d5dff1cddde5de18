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

#include "csmax/problem.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace csmax {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i]) || coords_[i] < 0.0) {
      throw InvalidArgument("point coordinate " + std::to_string(i) +
                            " must be finite and non-negative");
    }
  }
}

Point Point::Zero(std::size_t n) { return Point(std::vector<double>(n, 0.0)); }

double Point::L1Norm() const {
  return std::accumulate(coords_.begin(), coords_.end(), 0.0);
}

Point Point::WithStep(std::size_t i, double step) const {
  Point out = *this;
  out.coords_.at(i) += step;
  if (!std::isfinite(out.coords_[i]) || out.coords_[i] < 0.0) {
    throw InvalidArgument("step leaves the non-negative orthant");
  }
  return out;
}

BoxDomain::BoxDomain(std::vector<double> upper) : upper_(std::move(upper)) {
  for (std::size_t i = 0; i < upper_.size(); ++i) {
    if (!std::isfinite(upper_[i]) || upper_[i] <= 0.0) {
      throw InvalidArgument("box upper bound " + std::to_string(i) +
                            " must be positive and finite");
    }
  }
}

Objective::Objective(std::size_t dimension, double smoothness, EvalFn fn)
    : state_(std::make_shared<State>()),
      dimension_(dimension),
      smoothness_(smoothness) {
  if (!fn) throw InvalidArgument("objective needs an evaluation function");
  if (!std::isfinite(smoothness) || smoothness < 0.0) {
    throw InvalidArgument("smoothness constant must be finite and >= 0");
  }
  state_->fn = std::move(fn);
}

double Objective::Evaluate(std::span<const double> x) const {
  if (x.size() != dimension_) {
    throw InvalidArgument("objective of dimension " +
                          std::to_string(dimension_) + " evaluated at a " +
                          std::to_string(x.size()) + "-vector");
  }
  state_->count.fetch_add(1, std::memory_order_relaxed);
  return state_->fn(x);
}

std::uint64_t Objective::eval_count() const {
  return state_->count.load(std::memory_order_relaxed);
}

Objective Objective::WithSmoothness(double smoothness) const {
  if (!std::isfinite(smoothness) || smoothness < 0.0) {
    throw InvalidArgument("smoothness constant must be finite and >= 0");
  }
  Objective out = *this;
  out.smoothness_ = smoothness;
  return out;
}

ProblemInstance::ProblemInstance(Objective objective, BoxDomain domain,
                                 double budget)
    : objective_(std::move(objective)), budget_(budget) {
  if (!std::isfinite(budget) || budget <= 0.0) {
    throw InvalidArgument("budget must be positive and finite");
  }
  if (objective_.dimension() != domain.size()) {
    throw InvalidArgument("objective and domain dimensions differ");
  }
  std::vector<double> upper(domain.upper().begin(), domain.upper().end());
  for (double& u : upper) u = std::min(u, budget);
  domain_ = BoxDomain(std::move(upper));
}

double ProblemInstance::tolerance() const {
  return 1e-9 * std::max(1.0, budget_);
}

bool Feasible(const ProblemInstance& instance, const Point& x) {
  if (x.size() != instance.dimension()) {
    throw InvalidArgument("point dimension does not match the instance");
  }
  const double tol = instance.tolerance();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < -tol || x[i] > instance.domain()[i] + tol) return false;
  }
  return x.L1Norm() <= instance.budget() + tol;
}

Objective ShiftDomain(const Objective& objective, std::span<const double> a) {
  if (a.size() != objective.dimension()) {
    throw InvalidArgument("shift vector dimension mismatch");
  }
  for (double v : a) {
    if (!std::isfinite(v)) throw InvalidArgument("shift must be finite");
  }
  std::vector<double> shift(a.begin(), a.end());
  return Objective(objective.dimension(), objective.smoothness(),
                   [objective, shift](std::span<const double> x) {
                     std::vector<double> moved(x.size());
                     for (std::size_t i = 0; i < x.size(); ++i) {
                       moved[i] = x[i] + shift[i];
                     }
                     return objective.Evaluate(moved);
                   });
}

ProblemInstance RescaleWeights(const Objective& objective,
                               std::span<const double> weights,
                               std::span<const double> upper, double budget) {
  const std::size_t n = objective.dimension();
  if (weights.size() != n || upper.size() != n) {
    throw InvalidArgument("weight/upper dimension mismatch");
  }
  double min_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(weights[i]) || weights[i] <= 0.0) {
      throw InvalidArgument("weights must be positive and finite");
    }
    min_weight = i == 0 ? weights[i] : std::min(min_weight, weights[i]);
  }
  std::vector<double> w(weights.begin(), weights.end());
  std::vector<double> scaled_upper(n);
  for (std::size_t i = 0; i < n; ++i) scaled_upper[i] = w[i] * upper[i];

  // Chain rule: the Hessian picks up diag(1/w) on both sides.
  const double smoothness =
      n == 0 ? objective.smoothness()
             : objective.smoothness() / (min_weight * min_weight);
  Objective rescaled(n, smoothness, [objective, w](std::span<const double> y) {
    std::vector<double> x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] / w[i];
    return objective.Evaluate(x);
  });
  return ProblemInstance(std::move(rescaled), BoxDomain(std::move(scaled_upper)),
                         budget);
}

Objective Contract(const Objective& objective, const Point& base,
                   std::span<const std::size_t> removed) {
  const std::size_t n = objective.dimension();
  if (base.size() != n) throw InvalidArgument("base dimension mismatch");
  std::vector<bool> is_removed(n, false);
  for (std::size_t r : removed) {
    if (r >= n) {
      throw InvalidArgument("removed coordinate " + std::to_string(r) +
                            " out of range");
    }
    is_removed[r] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_removed[i] && base[i] != 0.0) {
      throw InvalidArgument("base must vanish on kept coordinates");
    }
  }

  auto contraction = std::make_shared<Objective::Contraction>();
  if (objective.contraction_) {
    const Objective::Contraction& outer = *objective.contraction_;
    contraction->root = outer.root;
    contraction->base = outer.base;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_removed[i]) {
        contraction->base[outer.kept[i]] = base[i];
      } else {
        contraction->kept.push_back(outer.kept[i]);
      }
    }
  } else {
    contraction->root = std::make_shared<const Objective>(objective);
    contraction->base.assign(base.coords().begin(), base.coords().end());
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_removed[i]) contraction->kept.push_back(i);
    }
  }
  contraction->base_value = contraction->root->Evaluate(contraction->base);

  std::shared_ptr<const Objective::Contraction> shared = contraction;
  Objective out(contraction->kept.size(), objective.smoothness(),
                [shared](std::span<const double> local) {
                  std::vector<double> full = shared->base;
                  for (std::size_t j = 0; j < local.size(); ++j) {
                    full[shared->kept[j]] = local[j];
                  }
                  return shared->root->Evaluate(full) - shared->base_value;
                });
  out.contraction_ = std::move(shared);
  return out;
}

}  // namespace csmax
