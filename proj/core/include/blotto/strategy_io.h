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

#ifndef BLOTTO_STRATEGY_IO_H_
#define BLOTTO_STRATEGY_IO_H_

// Strategy dumps and equilibrium JSON.
//
// CSV header: var_kind,i,a_or_k,b_or_action,value
//   h,i,a,b,v        flow on the edge a -> b of layer i
//   x,i,k,action,v   mass of (k soldiers, action) on battlefield i
//   y,-1,-1,-1,v     root of a two-level strategy
//   y,i,-1,-1,v      battlefield weight
//   y,i,-1,action,v  (battlefield, action) weight

#include <string>
#include <string_view>

#include "blotto/lp_builders.h"
#include "blotto/model.h"

namespace blotto {

std::string strategy_to_csv(const SeqForm& strategy);

// Parses a dump of `player`'s strategy for `inst`. The polytope is the one the
// instance's LP setting assigns to the player. Throws std::invalid_argument on
// malformed rows, unknown indices or a dump of the wrong kind.
SeqForm strategy_from_csv(std::string_view text, const BlottoInstance& inst,
                          Player player);

// False when the LP setting of `inst` gives `player` a flow strategy;
// otherwise fills the two-level polytope and its root.
bool uses_two_level(const BlottoInstance& inst, Player player,
                    SeqPolytope* kind = nullptr, double* root = nullptr);

std::string profile_to_json(const BehavioralProfile& profile);

// {"setting", "side", "value", "player1", "player2"}; the players hold the
// behavioral profiles.
std::string equilibrium_to_json(const Equilibrium& eq);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace blotto

#endif  // BLOTTO_STRATEGY_IO_H_
