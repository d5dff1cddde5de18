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

#include "csmax/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "csmax/oracle.h"
#include "csmax/solvers.h"
#include "json.hpp"

namespace csmax::bench {
namespace {

using nlohmann::json;

std::vector<double> ReadVector(const json& node, const char* field) {
  if (!node.contains(field) || !node[field].is_array()) {
    throw InputError(std::string("field '") + field + "' must be an array");
  }
  std::vector<double> out;
  for (const json& e : node[field]) {
    if (!e.is_number()) {
      throw InputError(std::string("field '") + field +
                       "' must contain only numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

double ReadNumber(const json& node, const char* field) {
  if (!node.contains(field) || !node[field].is_number()) {
    throw InputError(std::string("field '") + field + "' must be a number");
  }
  return node[field].get<double>();
}

std::string FormatNumber(double v) {
  char buf[64];
  // Adding zero folds -0 into 0.
  std::snprintf(buf, sizeof(buf), "%.12g", v + 0.0);
  return buf;
}

std::string FormatOptional(const std::optional<double>& v) {
  return v ? FormatNumber(*v) : std::string();
}

std::string FormatPoint(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += " ";
    out += FormatNumber(p[i]);
  }
  return out + ")";
}

bool EpsilonValid(double eps) { return eps > 0.0 && eps < 0.25; }

struct Loaded {
  InstanceFile file;
  std::optional<ProblemInstance> instance;
};

// Loads and validates; reports failures on `err`.
std::optional<Loaded> Load(const std::string& path, bool validate,
                           std::ostream& err) {
  try {
    Loaded loaded{LoadInstanceFile(path), std::nullopt};
    if (validate) loaded.instance.emplace(BuildInstance(loaded.file));
    return loaded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

double MaxUpper(const ProblemInstance& instance) {
  double m = 0.0;
  for (double u : instance.domain().upper()) m = std::max(m, u);
  return m;
}

SolveResult Dispatch(Algorithm algorithm, const ProblemInstance& instance,
                     const CaConfig& config, std::size_t workers) {
  switch (algorithm) {
    case Algorithm::kCa:
      return CoordinateAscent(instance, config);
    case Algorithm::kEca:
      return EnhancedCoordinateAscent(instance, config);
    case Algorithm::kFeca:
      return FullyEnhancedCoordinateAscent(instance, config, workers);
  }
  throw InvalidArgument("unknown algorithm");
}

RunRecord Execute(const std::string& name, Algorithm algorithm,
                  const ProblemInstance& instance, const CaConfig& config,
                  std::size_t workers, SolveResult* result_out = nullptr) {
  const auto start = std::chrono::steady_clock::now();
  SolveResult result = Dispatch(algorithm, instance, config, workers);
  const auto stop = std::chrono::steady_clock::now();
  RunRecord record;
  record.instance = name;
  record.algorithm = std::string(AlgorithmName(algorithm));
  record.epsilon = config.eps;
  record.value = result.value;
  record.iterations = result.main_iterations;
  record.evaluations = result.evaluations;
  record.wall_millis =
      std::chrono::duration<double, std::milli>(stop - start).count();
  record.workers = workers;
  if (result_out != nullptr) *result_out = std::move(result);
  return record;
}

}  // namespace

InstanceFile ParseInstanceFile(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed instance file: ") + e.what());
  }
  if (!root.is_object()) throw InputError("instance file must be an object");

  InstanceFile file;
  file.name = root.value("name", std::string("unnamed"));
  if (!root.contains("objective") || !root["objective"].is_object()) {
    throw InputError("field 'objective' must be an object");
  }
  const json& objective = root["objective"];
  const std::string type = objective.value("type", std::string());
  if (type == "quadratic") {
    QuadraticSpec spec;
    spec.c = ReadVector(objective, "c");
    if (!objective.contains("Q") || !objective["Q"].is_array()) {
      throw InputError("field 'Q' must be an array of rows");
    }
    for (const json& row : objective["Q"]) {
      if (!row.is_array()) throw InputError("each row of 'Q' must be an array");
      json wrapper = {{"row", row}};
      spec.q.push_back(ReadVector(wrapper, "row"));
    }
    file.objective = std::move(spec);
  } else if (type == "concave_linear") {
    ConcaveLinearSpec spec;
    spec.w = ReadVector(objective, "w");
    try {
      spec.kind = ParseConcaveKind(objective.value("kind", std::string()));
    } catch (const InvalidArgument& e) {
      throw InputError(e.what());
    }
    file.objective = std::move(spec);
  } else {
    throw InputError("objective type must be 'quadratic' or 'concave_linear'");
  }
  file.upper = ReadVector(root, "u");
  file.budget = ReadNumber(root, "B");
  if (root.contains("L_override") && !root["L_override"].is_null()) {
    file.smoothness_override = ReadNumber(root, "L_override");
  }
  return file;
}

InstanceFile LoadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseInstanceFile(buffer.str());
}

std::string ToJson(const InstanceFile& file) {
  json root;
  root["name"] = file.name;
  if (const auto* q = std::get_if<QuadraticSpec>(&file.objective)) {
    root["objective"] = {{"type", "quadratic"}, {"c", q->c}, {"Q", q->q}};
  } else {
    const auto& c = std::get<ConcaveLinearSpec>(file.objective);
    root["objective"] = {{"type", "concave_linear"},
                         {"w", c.w},
                         {"kind", std::string(ConcaveKindName(c.kind))}};
  }
  root["u"] = file.upper;
  root["B"] = file.budget;
  if (file.smoothness_override) root["L_override"] = *file.smoothness_override;
  return root.dump(2);
}

ProblemInstance BuildInstance(const InstanceFile& file) {
  try {
    Objective objective =
        std::holds_alternative<QuadraticSpec>(file.objective)
            ? MakeSubmodularQuadratic(std::get<QuadraticSpec>(file.objective),
                                      file.upper)
            : MakeConcaveLinear(std::get<ConcaveLinearSpec>(file.objective),
                                file.upper);
    if (file.smoothness_override) {
      objective = objective.WithSmoothness(*file.smoothness_override);
    }
    return ProblemInstance(std::move(objective), BoxDomain(file.upper),
                           file.budget);
  } catch (const InvalidArgument& e) {
    throw InputError(std::string("invalid instance '") + file.name +
                     "': " + e.what());
  }
}

Objective BuildObjectiveUnchecked(const InstanceFile& file) {
  try {
    if (const auto* q = std::get_if<QuadraticSpec>(&file.objective)) {
      return MakeQuadraticUnchecked(*q);
    }
    return MakeConcaveLinear(std::get<ConcaveLinearSpec>(file.objective),
                             file.upper);
  } catch (const InvalidArgument& e) {
    throw InputError(std::string("invalid instance '") + file.name +
                     "': " + e.what());
  }
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "ca") return Algorithm::kCa;
  if (name == "eca") return Algorithm::kEca;
  if (name == "feca") return Algorithm::kFeca;
  throw InputError("algorithm must be one of ca, eca, feca");
}

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kCa:
      return "ca";
    case Algorithm::kEca:
      return "eca";
    case Algorithm::kFeca:
      return "feca";
  }
  return "?";
}

double GuaranteeRhs(Algorithm algorithm, const ProblemInstance& instance,
                    double eps, double opt_value) {
  constexpr double kE = std::numbers::e;
  const double budget = instance.budget();
  const double smoothness = instance.objective().smoothness();
  switch (algorithm) {
    case Algorithm::kCa:
      return (1.0 - 1.0 / kE - MaxUpper(instance) / budget - eps) * opt_value -
             eps * budget * smoothness;
    case Algorithm::kEca:
      return ((kE - 1.0) / (2.0 * kE - 1.0) - 2.0 * eps) * opt_value -
             eps * budget * smoothness;
    case Algorithm::kFeca:
      return (1.0 - 1.0 / kE - 4.0 * eps) * opt_value -
             eps * (budget + 2.0) * smoothness;
  }
  return 0.0;
}

std::string CsvHeader() {
  return "instance,algorithm,epsilon,value,opt_value,ratio,bound,iterations,"
         "evaluations,wall_millis,workers";
}

std::string ToCsvRow(const RunRecord& r) {
  std::string row;
  row += r.instance + "," + r.algorithm + "," + FormatNumber(r.epsilon) + ",";
  row += FormatNumber(r.value) + "," + FormatOptional(r.opt_value) + ",";
  row += FormatOptional(r.ratio) + "," + FormatOptional(r.bound) + ",";
  row += std::to_string(r.iterations) + "," + std::to_string(r.evaluations) +
         ",";
  row += FormatNumber(r.wall_millis) + "," + std::to_string(r.workers);
  return row;
}

void AttachOptimum(RunRecord& record, double opt_value, double rhs) {
  record.opt_value = opt_value;
  if (opt_value == 0.0) {
    record.ratio = 1.0;
    record.bound = 0.0;
  } else {
    record.ratio = record.value / opt_value;
    record.bound = rhs / opt_value;
  }
}

int RunSolve(const SolveOptions& options, std::ostream& out,
             std::ostream& err) {
  std::optional<Loaded> loaded = Load(options.instance_path, true, err);
  if (!loaded) return kExitInputError;
  if (!EpsilonValid(options.epsilon)) {
    err << "error: --epsilon must lie in (0, 0.25)\n";
    return kExitInputError;
  }
  if (options.workers == 0) {
    err << "error: --workers must be at least 1\n";
    return kExitInputError;
  }
  Algorithm algorithm;
  try {
    algorithm = ParseAlgorithm(options.algorithm);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  const CaConfig config{.eps = options.epsilon, .trace = options.trace};
  SolveResult result;
  const RunRecord record = Execute(loaded->file.name, algorithm,
                                   *loaded->instance, config, options.workers,
                                   &result);
  out << CsvHeader() << "\n" << ToCsvRow(record) << "\n";
  out << "# point " << FormatPoint(result.point) << "\n";
  if (result.trace) {
    for (const TraceEntry& entry : *result.trace) {
      out << "# trace " << entry.iteration << " " << FormatNumber(entry.value)
          << " " << FormatPoint(entry.point) << "\n";
    }
  }
  return kExitOk;
}

int RunCompare(const CompareOptions& options, std::ostream& out,
               std::ostream& err) {
  std::optional<Loaded> loaded = Load(options.instance_path, true, err);
  if (!loaded) return kExitInputError;
  if (!EpsilonValid(options.epsilon)) {
    err << "error: --epsilon must lie in (0, 0.25)\n";
    return kExitInputError;
  }
  if (options.workers == 0 || options.oracle_resolution < 0.0) {
    err << "error: invalid --workers or --oracle-resolution\n";
    return kExitInputError;
  }
  const ProblemInstance& instance = *loaded->instance;
  double resolution = options.oracle_resolution;
  if (resolution == 0.0) {
    resolution = instance.budget() / (instance.dimension() <= 2 ? 100.0 : 30.0);
  }

  const auto start = std::chrono::steady_clock::now();
  GridSearchResult oracle;
  try {
    oracle = GridOptimum(instance, resolution, options.lattice_cap,
                         options.workers);
  } catch (const OracleCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitOracleCap;
  }
  const auto stop = std::chrono::steady_clock::now();

  const CaConfig config{.eps = options.epsilon, .trace = false};
  std::vector<std::string> verdicts;
  bool all_pass = true;
  out << CsvHeader() << "\n";
  for (Algorithm algorithm :
       {Algorithm::kCa, Algorithm::kEca, Algorithm::kFeca}) {
    RunRecord record = Execute(loaded->file.name, algorithm, instance, config,
                               options.workers);
    const double rhs =
        GuaranteeRhs(algorithm, instance, options.epsilon, oracle.best_value);
    AttachOptimum(record, oracle.best_value, rhs);
    out << ToCsvRow(record) << "\n";
    const bool pass = record.value >= rhs;
    all_pass = all_pass && pass;
    verdicts.push_back("# " + std::string(pass ? "PASS " : "FAIL ") +
                       record.algorithm + " value=" +
                       FormatNumber(record.value) +
                       " guarantee=" + FormatNumber(rhs));
  }
  RunRecord oracle_row;
  oracle_row.instance = loaded->file.name;
  oracle_row.algorithm = "oracle";
  oracle_row.epsilon = options.epsilon;
  oracle_row.value = oracle.best_value;
  AttachOptimum(oracle_row, oracle.best_value, oracle.best_value);
  oracle_row.bound.reset();
  oracle_row.evaluations = oracle.points_evaluated;
  oracle_row.wall_millis =
      std::chrono::duration<double, std::milli>(stop - start).count();
  oracle_row.workers = options.workers;
  out << ToCsvRow(oracle_row) << "\n";
  for (const std::string& line : verdicts) out << line << "\n";
  return all_pass ? kExitOk : kExitPropertyFail;
}

int RunCheck(const CheckOptions& options, std::ostream& out,
             std::ostream& err) {
  if (options.trials == 0) {
    err << "error: --trials must be at least 1\n";
    return kExitInputError;
  }
  std::optional<Loaded> loaded = Load(options.instance_path, false, err);
  if (!loaded) return kExitInputError;
  std::optional<Objective> objective;
  std::optional<BoxDomain> domain;
  try {
    objective.emplace(BuildObjectiveUnchecked(loaded->file));
    if (!(loaded->file.budget > 0.0)) throw InputError("B must be positive");
    std::vector<double> upper = loaded->file.upper;
    for (double& u : upper) u = std::min(u, loaded->file.budget);
    domain.emplace(std::move(upper));
    if (domain->size() != objective->dimension()) {
      throw InputError("'u' and objective dimensions differ");
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  struct Row {
    const char* name;
    PropertyReport report;
    bool gating;
  };
  const Row rows[] = {
      {"submodular",
       CheckSubmodular(*objective, *domain, options.trials, options.seed),
       true},
      {"monotone",
       CheckMonotone(*objective, *domain, options.trials, options.seed), true},
      {"dr",
       CheckDiminishingReturns(*objective, *domain, options.trials,
                               options.seed),
       false},
  };
  out << "property,trials,violations,worst_violation\n";
  bool clean = true;
  for (const Row& row : rows) {
    out << row.name << "," << row.report.trials << "," << row.report.violations
        << "," << FormatNumber(row.report.worst_violation) << "\n";
    if (row.gating && row.report.violations > 0) clean = false;
  }
  for (const Row& row : rows) {
    if (!row.gating) continue;
    for (const auto& [x, y] : row.report.witnesses) {
      out << "# witness " << row.name << " x=" << FormatPoint(x)
          << " y=" << FormatPoint(y) << "\n";
    }
  }
  return clean ? kExitOk : kExitPropertyFail;
}

}  // namespace csmax::bench
