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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <tuple>
#include <utility>

#include "csmax/onedim.h"

namespace csmax {

void ValidateConfig(const CaConfig& config) {
  if (!(config.eps > 0.0 && config.eps < 0.25)) {
    throw InvalidArgument("eps must lie in (0, 0.25)");
  }
}

Headroom ComputeHeadroom(const ProblemInstance& instance, const Point& x) {
  Headroom out;
  const double tol = instance.tolerance();
  const double slack = instance.budget() - x.L1Norm();
  if (slack <= tol) return out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double room = instance.domain()[i] - x[i];
    if (room > tol) {
      out.coordinates.push_back(i);
      out.limits.push_back(std::min(room, slack));
    }
  }
  return out;
}

SolveResult CoordinateAscent(const ProblemInstance& instance,
                             const CaConfig& config) {
  ValidateConfig(config);
  const Objective& objective = instance.objective();
  const std::uint64_t start_count = objective.eval_count();
  const std::size_t n = instance.dimension();
  const double delta =
      n == 0 ? 0.0 : config.eps * instance.budget() / static_cast<double>(n);

  SolveResult result;
  result.point = Point::Zero(n);
  result.value = objective(result.point);
  if (config.trace) {
    result.trace.emplace();
    result.trace->push_back({0, result.point, result.value});
  }

  while (true) {
    const Headroom headroom = ComputeHeadroom(instance, result.point);
    if (headroom.coordinates.empty()) break;

    std::size_t best_coordinate = 0;
    RatioSearch best;
    for (std::size_t k = 0; k < headroom.coordinates.size(); ++k) {
      const double limit = headroom.limits[k];
      RatioSearch search = MaximizeRatio(
          objective, result.point, headroom.coordinates[k],
          std::min(limit, delta), limit, config.eps, result.value);
      // Strict comparison: the lowest index wins ties.
      if (k == 0 || search.ratio > best.ratio) {
        best = search;
        best_coordinate = headroom.coordinates[k];
      }
    }

    result.point = result.point.WithStep(best_coordinate, best.step);
    result.value = best.value;
    ++result.main_iterations;
    if (config.trace) {
      result.trace->push_back(
          {result.main_iterations, result.point, result.value});
    }
  }
  result.evaluations = objective.eval_count() - start_count;
  return result;
}

SolveResult EnhancedCoordinateAscent(const ProblemInstance& instance,
                                     const CaConfig& config) {
  const Objective& objective = instance.objective();
  const std::uint64_t start_count = objective.eval_count();
  SolveResult result = CoordinateAscent(instance, config);
  const Point origin = Point::Zero(instance.dimension());
  for (std::size_t i = 0; i < instance.dimension(); ++i) {
    Point single = origin.WithStep(i, instance.domain()[i]);
    const double value = objective(single);
    if (value > result.value) {
      result.point = std::move(single);
      result.value = value;
    }
  }
  result.evaluations = objective.eval_count() - start_count;
  return result;
}

GuessSet ComputeGuessSet(const Objective& objective, const Point& x,
                         std::size_t coordinate, double upper, double eps) {
  if (coordinate >= x.size()) throw InvalidArgument("coordinate out of range");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0, 1)");
  const double base = objective(x);
  const double top = objective(
      x.WithStep(coordinate, std::max(0.0, upper - x[coordinate])));
  const double single =
      objective(Point::Zero(x.size()).WithStep(coordinate, upper));

  GuessSet out;
  out.step = eps * single;
  out.values.push_back(base);
  if (!(out.step > 0.0)) return out;
  const double tol = 1e-9 * std::max(1.0, std::abs(top));
  for (std::size_t j = 1;; ++j) {
    const double value = base + static_cast<double>(j) * out.step;
    if (value > top + tol) break;
    out.values.push_back(std::min(value, top));
  }
  return out;
}

namespace {

// Runs `count` independent tasks on up to `workers` threads; task i writes
// only to slot i of whatever the callback captures.
template <typename Task>
void RunParallel(std::size_t count, std::size_t workers, Task&& task) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count;
           i = next.fetch_add(1)) {
        try {
          task(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct FirstGuess {
  std::size_t h1;
  std::size_t v1_index;
  double target;
};

struct TaskOutput {
  std::vector<Candidate> candidates;
  std::size_t tuples = 0;
};

// Completes x (supported on h1, h2) with CA over the remaining coordinates.
Candidate Complete(const ProblemInstance& instance, const CaConfig& config,
                   const Point& x, std::size_t h1, std::size_t h2) {
  const Objective& objective = instance.objective();
  const std::size_t n = instance.dimension();
  Candidate candidate;
  candidate.point = x;
  const double residual = instance.budget() - x.L1Norm();
  const std::vector<std::size_t> removed = {h1, h2};
  candidate.inner_dimension = n - removed.size();
  if (candidate.inner_dimension > 0 && residual > instance.tolerance()) {
    std::vector<double> upper;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == h1 || i == h2) continue;
      kept.push_back(i);
      upper.push_back(instance.domain()[i]);
    }
    const ProblemInstance residual_instance(Contract(objective, x, removed),
                                            BoxDomain(std::move(upper)),
                                            residual);
    const SolveResult inner =
        CoordinateAscent(residual_instance, {.eps = config.eps, .trace = false});
    std::vector<double> coords(x.coords().begin(), x.coords().end());
    for (std::size_t j = 0; j < kept.size(); ++j) {
      coords[kept[j]] = inner.point[j];
    }
    candidate.point = Point(std::move(coords));
    candidate.inner_iterations = inner.main_iterations;
  }
  candidate.value = objective(candidate.point);
  return candidate;
}

TaskOutput RunFirstGuess(const ProblemInstance& instance,
                         const CaConfig& config, const FirstGuess& guess) {
  const Objective& objective = instance.objective();
  const std::size_t n = instance.dimension();
  const double tol = instance.tolerance();
  const Point origin = Point::Zero(n);
  const double u1 = instance.domain()[guess.h1];
  const double y1 =
      FindTargetValue(objective, origin, guess.h1, guess.target, config.eps, u1)
          .step;
  const Point x1 = origin.WithStep(guess.h1, y1);

  TaskOutput out;
  if (n == 1) {
    ++out.tuples;
    Candidate candidate;
    candidate.h1 = guess.h1;
    candidate.v1_index = guess.v1_index;
    candidate.point = x1;
    candidate.value = objective(x1);
    out.candidates.push_back(std::move(candidate));
    return out;
  }

  for (std::size_t h2 = 0; h2 < n; ++h2) {
    if (h2 == guess.h1) continue;
    const double u2 = instance.domain()[h2];
    const GuessSet second = ComputeGuessSet(objective, x1, h2, u2, config.eps);
    for (std::size_t v2 = 0; v2 < second.values.size(); ++v2) {
      ++out.tuples;
      const double y2 = FindTargetValue(objective, x1, h2, second.values[v2],
                                        config.eps, u2 - x1[h2])
                            .step;
      const Point x = x1.WithStep(h2, y2);
      // A guess pair that overshoots the budget cannot match OPT.
      if (x.L1Norm() > instance.budget() + tol) continue;
      Candidate candidate = Complete(instance, config, x, guess.h1, h2);
      candidate.h1 = guess.h1;
      candidate.h2 = h2;
      candidate.v1_index = guess.v1_index;
      candidate.v2_index = v2;
      out.candidates.push_back(std::move(candidate));
    }
  }
  return out;
}

}  // namespace

CandidateSet EnumerateCandidates(const ProblemInstance& instance,
                                 const CaConfig& config, std::size_t workers) {
  ValidateConfig(config);
  if (workers == 0) throw InvalidArgument("workers must be at least 1");
  const Objective& objective = instance.objective();
  const std::uint64_t start_count = objective.eval_count();
  const std::size_t n = instance.dimension();

  std::vector<FirstGuess> guesses;
  const Point origin = Point::Zero(n);
  for (std::size_t h1 = 0; h1 < n; ++h1) {
    const GuessSet first = ComputeGuessSet(objective, origin, h1,
                                           instance.domain()[h1], config.eps);
    for (std::size_t v1 = 0; v1 < first.values.size(); ++v1) {
      guesses.push_back({h1, v1, first.values[v1]});
    }
  }

  std::vector<TaskOutput> outputs(guesses.size());
  RunParallel(guesses.size(), workers, [&](std::size_t i) {
    outputs[i] = RunFirstGuess(instance, config, guesses[i]);
  });

  CandidateSet set;
  for (TaskOutput& output : outputs) {
    set.tuples_visited += output.tuples;
    for (Candidate& c : output.candidates) {
      set.candidates.push_back(std::move(c));
    }
  }
  std::stable_sort(set.candidates.begin(), set.candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return std::tie(a.h1, a.h2, a.v1_index, a.v2_index) <
                            std::tie(b.h1, b.h2, b.v1_index, b.v2_index);
                   });
  set.evaluations = objective.eval_count() - start_count;
  return set;
}

SolveResult FullyEnhancedCoordinateAscent(const ProblemInstance& instance,
                                          const CaConfig& config,
                                          std::size_t workers) {
  const CandidateSet set = EnumerateCandidates(instance, config, workers);
  SolveResult result;
  result.point = Point::Zero(instance.dimension());
  const Candidate* best = nullptr;
  for (const Candidate& c : set.candidates) {
    if (best == nullptr || c.value > best->value) best = &c;
  }
  if (best != nullptr) {
    result.point = best->point;
    result.value = best->value;
  } else {
    result.value = instance.objective()(result.point);
  }
  result.main_iterations = set.tuples_visited;
  result.evaluations = set.evaluations + (best == nullptr ? 1 : 0);
  return result;
}

}  // namespace csmax
