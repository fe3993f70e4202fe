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

#ifndef BLOTTO_ORACLES_H_
#define BLOTTO_ORACLES_H_

// Reference computations that avoid the sequence-form machinery: exhaustive
// pure-strategy enumeration, small games without equilibria whose max-min and
// min-max values are known in closed form, and a lattice search for the best
// continuous allocation.

#include <cstddef>
#include <string>
#include <vector>

#include "blotto/model.h"

namespace blotto {

inline constexpr std::size_t kBruteForceLimit = 10000;

// Number of pure strategies (allocation vector, one action per battlefield)
// of `player`.
std::size_t pure_strategy_count(const BlottoInstance& inst, Player player);

struct DiscreteValue {
  double maxmin = 0.0;  // max over Player 2 mixtures of Player 1's best reply
  double minmax = 0.0;  // min over Player 1 mixtures of Player 2's best reply
  // False when no finite reformulation is available (two-sided min games);
  // minmax is then NaN.
  bool minmax_exact = true;
};

// Enumerates pure strategies of both players. Sum games: value of the meta
// matrix game (maxmin == minmax). Min games: both values as linear programs
// over mixtures of pure strategies; the min-max side needs Player 1 not to
// allocate. Throws std::length_error above kBruteForceLimit pure strategies
// for either player.
DiscreteValue brute_force_discrete_value(const BlottoInstance& inst);

// Two battlefields, both budgets 2, u = (k1 + 1) / (k2 + 1), min aggregator,
// with the allocating side that gains from u maximizing. The best responder
// plays a pure allocation.
struct TwoSidedMinCounterexample {
  double maxmin = 0.0;
  double minmax = 0.0;
  std::vector<double> maxmin_mix;  // gaining side's mixture over k = 0, 1, 2
  std::vector<double> minmax_mix;  // other side's mixture over k = 0, 1, 2
};
TwoSidedMinCounterexample ce_discrete_two_sided_min();

// Two battlefields, u = max(s1 - s2, 0), budgets 2 (gaining side) and 1.
struct ContinuousTwoSidedCounterexample {
  double sum_maxmin = 0.0;
  double sum_minmax = 0.0;
  double min_maxmin = 0.0;
  double min_minmax = 0.0;
};
ContinuousTwoSidedCounterexample ce_continuous_two_sided();

// Objective y (s^2 - 2) + 4 - s with allocation s in [0, 2] and mixture
// weight y in [0, 1]; the allocating side maximizes.
struct OneSidedSumCounterexample {
  double maxmin = 0.0;
  double minmax = 0.0;
  double maxmin_allocation = 0.0;
  double minmax_mix = 0.0;
};
OneSidedSumCounterexample ce_one_sided_sum_continuous();

// Indicator subgame [[1{s < 1}, 0], [0, s^2 1{s >= 1}]] on the first
// battlefield and 2 - s on the second, min aggregator; the allocating side
// maximizes.
struct OneSidedMinCounterexample {
  double maxmin = 0.0;
  double minmax = 0.0;          // root of y^4 - 6y^3 + 14y^2 - 13y + 4 on (0, 1)
  double root = 0.0;
  double allocation = 0.0;      // (-1 + sqrt(9 - 8y)) / (2 (1 - y)) at the root
  double minmax_numeric = 0.0;  // direct nested optimization
};
OneSidedMinCounterexample ce_one_sided_min_discontinuous();

struct GridMaximum {
  std::vector<double> sigma;
  double value = 0.0;          // after polishing
  double lattice_value = 0.0;  // best lattice point
};

// Best V(sigma) = min_i v_i(sigma_i) over allocations whose coordinates are
// multiples of m2 / steps, then refined by bisection on the level t with
// per-battlefield bisection for the least sigma_i reaching t. For n <= 4 the
// lattice is enumerated; otherwise the lattice optimum is found by the same
// level-set search, which needs every v_i to be nondecreasing. Throws
// std::length_error when steps is outside [1, 100000].
GridMaximum grid_max_V(const BlottoInstance& inst, int steps);

}  // namespace blotto

#endif  // BLOTTO_ORACLES_H_
