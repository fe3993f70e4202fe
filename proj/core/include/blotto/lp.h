// Copyright 2026 The Blotto Solver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BLOTTO_LP_H_
#define BLOTTO_LP_H_

// Linear programs: a small model type, a deterministic dense revised simplex
// solver, and CPLEX LP text import/export.

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace blotto {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ObjectiveSense { kMinimize, kMaximize };
enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LpTerm {
  int var = 0;
  double coef = 0.0;
};

struct LpVariable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
};

struct LpConstraint {
  std::string name;
  std::vector<LpTerm> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

class LpModel {
 public:
  std::string setting;
  ObjectiveSense sense = ObjectiveSense::kMinimize;
  std::vector<LpTerm> objective;
  std::vector<LpVariable> variables;
  std::vector<LpConstraint> constraints;

  // Names must be unique; throws std::invalid_argument otherwise.
  int add_variable(std::string name, double lower = 0.0, double upper = kInf);
  int add_constraint(std::string name, std::vector<LpTerm> terms,
                     RowSense sense, double rhs);

  std::optional<int> find_variable(std::string_view name) const;
  std::optional<int> find_constraint(std::string_view name) const;
  int variable(std::string_view name) const;    // throws if absent
  int constraint(std::string_view name) const;  // throws if absent

  // Empty when the model is well formed.
  std::vector<std::string> check() const;

 private:
  std::unordered_map<std::string, int> var_by_name_;
  std::unordered_map<std::string, int> row_by_name_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> primal;
  // Shadow prices: d(optimal objective) / d(rhs) for every constraint.
  std::vector<double> dual;
  int iterations = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double feasibility_tolerance = 1e-7;
  int refactor_every = 100;
  int max_iterations = 1000000;
};

// Two-phase revised simplex on a dense basis inverse. Entering variable by
// most negative reduced cost (lowest index on ties); leaving variable by the
// ratio test with lowest basic index on ties. After 5 * (rows + cols)
// consecutive degenerate pivots the entering rule switches to Bland's rule
// until the objective moves again.
LpSolution solve_lp(const LpModel& model, const SimplexOptions& options = {});

// Largest violation of a row or bound by `primal`.
double primal_residual(const LpModel& model, const std::vector<double>& primal);
// Largest |slack * dual| over rows; zero at an optimal basic pair.
double complementary_slackness_residual(const LpModel& model,
                                        const LpSolution& solution);

// CPLEX LP format. Emission rules are listed in docs/lp_format.md.
std::string export_lp_text(const LpModel& model);
// Parses the subset of the format produced by export_lp_text. Throws
// std::invalid_argument with a line number on malformed input.
LpModel parse_lp_text(std::string_view text);

// {"status", "value", "primal": {name: value}, "dual": {row: value}}
std::string solution_to_json(const LpModel& model, const LpSolution& solution);

}  // namespace blotto

#endif  // BLOTTO_LP_H_
