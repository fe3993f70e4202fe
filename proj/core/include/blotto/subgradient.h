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

#ifndef BLOTTO_SUBGRADIENT_H_
#define BLOTTO_SUBGRADIENT_H_

// Projected subgradient ascent on Player 2's allocation for one-sided
// continuous games with the min aggregator: maximize
// V(sigma) = min_i v_i(sigma_i), where v_i is the value of battlefield i's
// subgame at allocation sigma_i.

#include <string>
#include <vector>

#include "blotto/matrix_game.h"
#include "blotto/model.h"

namespace blotto {

struct AggregateValue {
  double value = 0.0;
  std::vector<double> per_battlefield;
  int active = 0;  // lowest index attaining the minimum
};

// Requires a continuous one-sided min instance and sigma >= 0 of length n.
AggregateValue aggregate_value(const BlottoInstance& inst,
                               const std::vector<double>& sigma);

// sum_{a1,a2} p1(a1) p2(a2) du/dsigma(a1, a2, sigma_i) at the equilibrium
// returned by solve_matrix_game.
double nash_subgradient(const BlottoInstance& inst, int i, double sigma_i);
double nash_subgradient(const ParametricMatrix& spec, double sigma,
                        const MatrixGameSolution& equilibrium);

// Euclidean projection onto {s >= 0, sum s = budget}.
std::vector<double> project_simplex(const std::vector<double>& v,
                                    double budget);

enum class StepSchedule { kDiminishing, kConstant };
enum class AscentInit { kUniform, kGiven };

struct AscentConfig {
  double eta0 = 0.01;
  StepSchedule schedule = StepSchedule::kDiminishing;
  int max_iters = 1000;
  AscentInit init = AscentInit::kUniform;
  std::vector<double> initial;  // used with AscentInit::kGiven
  // Allocation snapshot cadence in the trace; 0 disables snapshots.
  int snapshot_every = 1;
};

void check_ascent_config(const AscentConfig& config);

struct AscentRecord {
  int t = 0;
  double value = 0.0;
  int active = 0;
  double eta = 0.0;
  std::vector<double> sigma;  // empty between snapshots
};

struct AscentTrace {
  std::vector<AscentRecord> records;
};

struct AscentResult {
  std::vector<double> sigma;  // best allocation seen
  double value = 0.0;
  AscentTrace trace;
};

// Step t uses eta0 / sqrt(t + 1) (or eta0) along the subgradient of the
// active battlefield, then projects. Every battlefield must be parametric and
// nondecreasing in the allocation; otherwise std::invalid_argument.
AscentResult run_psa(const BlottoInstance& inst, const AscentConfig& config);

// "t,V,i_star,eta,sigma_0,...,sigma_{n-1}"; sigma cells are empty between
// snapshots.
std::string ascent_trace_to_csv(const AscentTrace& trace, int n);

}  // namespace blotto

#endif  // BLOTTO_SUBGRADIENT_H_
