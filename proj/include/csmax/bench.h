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

// Benchmark harness: JSON instance files, CSV run records, and the
// solve / compare / check commands behind the csmax_bench tool.
//
// Instance file schema (matrices row-major):
//
//   {
//     "name": "quad2",
//     "objective": {"type": "quadratic", "c": [1, 1],
//                   "Q": [[0, -0.5], [-0.5, 0]]},
//     // or {"type": "concave_linear", "w": [1, 1], "kind": "one_minus_exp"}
//     "u": [1, 1],
//     "B": 1,
//     "L_override": 0.5          // optional
//   }

#ifndef CSMAX_BENCH_H_
#define CSMAX_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "csmax/objectives.h"
#include "csmax/problem.h"

namespace csmax::bench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFail = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitOracleCap = 3;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceFile {
  std::string name;
  std::variant<QuadraticSpec, ConcaveLinearSpec> objective;
  std::vector<double> upper;
  double budget = 0.0;
  std::optional<double> smoothness_override;
};

// Throws InputError on malformed JSON or schema violations.
InstanceFile ParseInstanceFile(std::string_view text);
InstanceFile LoadInstanceFile(const std::string& path);
std::string ToJson(const InstanceFile& file);

// Validated problem instance; throws InputError when any invariant fails.
ProblemInstance BuildInstance(const InstanceFile& file);
// The objective without submodularity/monotonicity certificates.
Objective BuildObjectiveUnchecked(const InstanceFile& file);

enum class Algorithm { kCa, kEca, kFeca };
Algorithm ParseAlgorithm(std::string_view name);
std::string_view AlgorithmName(Algorithm algorithm);

// Right-hand side of the guarantee for `algorithm` given F(OPT):
//   ca:   (1 - 1/e - max_i u_i / B - eps) OPT - eps B L
//   eca:  ((e - 1) / (2e - 1) - 2 eps) OPT - eps B L
//   feca: (1 - 1/e - 4 eps) OPT - eps (B + 2) L
double GuaranteeRhs(Algorithm algorithm, const ProblemInstance& instance,
                    double eps, double opt_value);

struct RunRecord {
  std::string instance;
  std::string algorithm;
  double epsilon = 0.0;
  double value = 0.0;
  std::optional<double> opt_value;
  std::optional<double> ratio;
  std::optional<double> bound;
  std::uint64_t iterations = 0;
  std::uint64_t evaluations = 0;
  double wall_millis = 0.0;
  std::size_t workers = 1;
};

std::string CsvHeader();
// Numbers use 12 significant digits; absent optionals are empty fields.
std::string ToCsvRow(const RunRecord& record);

// Fills opt_value, ratio = value / opt and bound = rhs / opt. When
// opt_value is 0 the ratio is 1 and the bound 0 by convention.
void AttachOptimum(RunRecord& record, double opt_value, double rhs);

struct SolveOptions {
  std::string instance_path;
  std::string algorithm = "eca";
  double epsilon = 0.1;
  std::size_t workers = 1;
  bool trace = false;
};

struct CompareOptions {
  std::string instance_path;
  double epsilon = 0.1;
  double oracle_resolution = 0.0;  // 0: B/100 for n <= 2, else B/30
  std::size_t workers = 1;
  double lattice_cap = 1e8;
};

struct CheckOptions {
  std::string instance_path;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
};

// Each returns the process exit code; diagnostics go to `err`.
int RunSolve(const SolveOptions& options, std::ostream& out, std::ostream& err);
int RunCompare(const CompareOptions& options, std::ostream& out,
               std::ostream& err);
int RunCheck(const CheckOptions& options, std::ostream& out, std::ostream& err);

}  // namespace csmax::bench

#endif  // CSMAX_BENCH_H_
