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

#ifndef BLOTTO_LP_BUILDERS_H_
#define BLOTTO_LP_BUILDERS_H_

// Equilibrium LPs. Each program keeps one player's strategy as primal
// variables and replaces the other player's best response by its LP dual, so
// the optimum is the game value and the row prices are the other player's
// equilibrium strategy.
//
//   maxmin: Player 2 primal, Player 1 best response dualized (max program).
//   minmax: Player 1 primal, Player 2 best response dualized (min program).
//
// Naming: flow variables h<j>_<i>_<a>_<b>, split variables x<j>_<i>_<k>_<a>,
// two-level variables y<j>_<i> and y<j>_<i>_<a>, dual multipliers lam_*, mu_*;
// rows that carry a strategy as their price are prefixed with `d`.

#include <string>
#include <variant>

#include "blotto/flow_polytope.h"
#include "blotto/lp.h"
#include "blotto/model.h"

namespace blotto {

enum class LpSetting {
  kTwoSidedSum,          // discrete, sum aggregator (one-sided allowed)
  kOneSidedMinDiscrete,  // discrete, one-sided, min aggregator
  kOneSidedSumLinear,    // continuous, one-sided, sum, u = c * sigma
  kOneSidedMinLinear,    // continuous, one-sided, min, u = c * sigma
};

enum class LpSide { kMaxMin, kMinMax };

std::string to_string(LpSetting setting);
std::string to_string(LpSide side);

// Throws std::invalid_argument when no LP formulation covers the instance.
LpSetting lp_setting_for(const BlottoInstance& inst);

LpModel build_lp_two_sided_sum(const BlottoInstance& inst,
                               LpSide side = LpSide::kMaxMin);
LpModel build_lp_one_sided_min_discrete(const BlottoInstance& inst,
                                        LpSide side);
LpModel build_lp_one_sided_linear_continuous(const BlottoInstance& inst,
                                             Aggregator aggregator,
                                             LpSide side);
LpModel build_lp(const BlottoInstance& inst, LpSide side);

using SeqForm = std::variant<SequenceStrategy, TwoLevelSeqStrategy>;

struct Equilibrium {
  LpSetting setting = LpSetting::kTwoSidedSum;
  LpSide side = LpSide::kMaxMin;
  double value = 0.0;
  SeqForm seq1;
  SeqForm seq2;
  BehavioralProfile profile1;
  BehavioralProfile profile2;
};

// Reads both strategies back from an optimal solution of `model`, which must
// come from build_lp on the same instance. Throws std::runtime_error when the
// solution is not optimal.
Equilibrium extract_equilibrium(const BlottoInstance& inst,
                                const LpModel& model,
                                const LpSolution& solution);

// build_lp + solve_lp + extract_equilibrium.
Equilibrium solve_equilibrium(const BlottoInstance& inst,
                              LpSide side = LpSide::kMaxMin);

// Behavioral form of a sequence-form strategy of `player`. Battlefields that a
// P-polytope strategy never selects get the pure best response against
// `opponent` so that every battlefield's expected utility respects the value.
BehavioralProfile to_behavioral(const BlottoInstance& inst, Player player,
                                const SeqForm& own, const SeqForm& opponent);

}  // namespace blotto

#endif  // BLOTTO_LP_BUILDERS_H_
