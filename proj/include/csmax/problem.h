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

// Problem data model for maximizing a monotone continuous submodular
// function over a box [0, u] subject to an l1 budget ||x||_1 <= B.
//
// Objectives are black boxes: a deterministic evaluation callback plus a
// user-declared smoothness constant L (Lipschitz constant of the gradient).
// Every evaluation goes through Objective::Evaluate, which bumps an atomic
// counter shared by all copies of the same objective.

#ifndef CSMAX_PROBLEM_H_
#define CSMAX_PROBLEM_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace csmax {

// Thrown on any violated precondition of the public API.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A dense point of the box [0, u]. Entries are finite and non-negative.
class Point {
 public:
  Point() = default;
  // Throws InvalidArgument on negative or non-finite entries.
  explicit Point(std::vector<double> coords);

  static Point Zero(std::size_t n);

  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  double L1Norm() const;

  // Returns a copy with coordinate i increased by `step`.
  Point WithStep(std::size_t i, double step) const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

// Upper corner u of the box [0, u].
class BoxDomain {
 public:
  BoxDomain() = default;
  // Every entry must be positive and finite.
  explicit BoxDomain(std::vector<double> upper);

  std::size_t size() const { return upper_.size(); }
  double operator[](std::size_t i) const { return upper_[i]; }
  std::span<const double> upper() const { return upper_; }

 private:
  std::vector<double> upper_;
};

class Objective {
 public:
  using EvalFn = std::function<double(std::span<const double>)>;

  // `fn` must be deterministic and safe to call concurrently.
  Objective(std::size_t dimension, double smoothness, EvalFn fn);

  // Counts one evaluation. Throws InvalidArgument on dimension mismatch.
  double Evaluate(std::span<const double> x) const;
  double operator()(const Point& x) const { return Evaluate(x.coords()); }

  std::size_t dimension() const { return dimension_; }
  double smoothness() const { return smoothness_; }
  std::uint64_t eval_count() const;

  // Same evaluation and counter, different declared smoothness.
  Objective WithSmoothness(double smoothness) const;

 private:
  friend Objective Contract(const Objective&, const Point&,
                            std::span<const std::size_t>);

  struct State {
    EvalFn fn;
    std::atomic<std::uint64_t> count{0};
  };

  // Present when this objective is a contraction of `root`; nested
  // contractions are flattened onto the root so composition is exact.
  struct Contraction {
    std::shared_ptr<const Objective> root;
    std::vector<double> base;         // in root coordinates
    std::vector<std::size_t> kept;    // root index of each local coordinate
    double base_value = 0.0;
  };

  std::shared_ptr<State> state_;
  std::shared_ptr<const Contraction> contraction_;
  std::size_t dimension_ = 0;
  double smoothness_ = 0.0;
};

class ProblemInstance {
 public:
  // Clamps every u_i to min(u_i, budget). Throws on dimension mismatch or a
  // non-positive budget.
  ProblemInstance(Objective objective, BoxDomain domain, double budget);

  const Objective& objective() const { return objective_; }
  const BoxDomain& domain() const { return domain_; }
  double budget() const { return budget_; }
  std::size_t dimension() const { return domain_.size(); }

  // Absolute tolerance for box and budget comparisons: 1e-9 * max(1, B).
  double tolerance() const;

 private:
  Objective objective_;
  BoxDomain domain_;
  double budget_;
};

struct TraceEntry {
  std::size_t iteration = 0;
  Point point;
  double value = 0.0;
};

struct SolveResult {
  Point point;
  double value = 0.0;
  std::size_t main_iterations = 0;
  std::uint64_t evaluations = 0;
  std::optional<std::vector<TraceEntry>> trace;
};

// True iff 0 <= x_i <= u_i and ||x||_1 <= B, up to instance.tolerance().
bool Feasible(const ProblemInstance& instance, const Point& x);

// G(x) = F(x + a), same smoothness.
Objective ShiftDomain(const Objective& objective, std::span<const double> a);

// Turns the constraint sum_i w_i x_i <= B into ||y||_1 <= B over y = w * x.
// The returned objective is G(y) = F(y_1 / w_1, ..., y_n / w_n) with
// smoothness L / W^2, W = min_i w_i; the box becomes [0, w * u].
ProblemInstance RescaleWeights(const Objective& objective,
                               std::span<const double> weights,
                               std::span<const double> upper, double budget);

// F'(x') = F(embed(x') + base) - F(base), where embed places x' on the
// coordinates not listed in `removed`. `base` must vanish outside `removed`.
// Costs one evaluation of the underlying objective (F(base)).
Objective Contract(const Objective& objective, const Point& base,
                   std::span<const std::size_t> removed);

}  // namespace csmax

#endif  // CSMAX_PROBLEM_H_
