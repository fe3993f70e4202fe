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

#ifndef BLOTTO_INSTANCES_H_
#define BLOTTO_INSTANCES_H_

// Instance generators and the JSON instance format.
//
// {
//   "n": 2, "m1": 1.0, "m2": 1.0,
//   "mode": "discrete" | "continuous",
//   "sided": "one_sided" | "two_sided",
//   "aggregator": "sum" | "min",
//   "battlefields": [
//     {"a1": 2, "a2": 2, "payoff": {"kind": "tensor", "u": [[[[...]]]]}},
//     {"a1": 2, "a2": 2, "payoff": {"kind": "affine", "c": [[...]], "d": [[...]]}}
//   ]
// }
//
// Tensor axes are a1, a2, k1, k2; one-sided tensors drop k1. Quadratic
// payoffs add "b"; log_matrix payoffs use "A" and "C". Unknown keys are
// rejected.

#include <cstdint>
#include <string>
#include <string_view>

#include "blotto/model.h"

namespace blotto {

// Stakes game with optional doubling. Battlefield i (0-based) is worth
// 2(i + 1) / (n(n + 1)); Player 1 wins it with probability k1 / (k1 + k2)
// (1/2 when both are zero). Action 1 doubles the stake, so the entry is
// v_i * d * (1 - 2p) with d in {1, 2, 4}. `seed` is accepted for interface
// uniformity; the family has no random parts.
BlottoInstance gen_soft_blotto_double(int n, int m1, int m2,
                                      std::uint64_t seed = 0,
                                      Sidedness sided = Sidedness::kTwoSided);

// One-sided continuous min instance with entries U[0, 100] drawn from
// SplitMix64(seed): per battlefield, quadratic "b" (quadratic only), then "c",
// then "d", each row-major.
BlottoInstance gen_random_parametric(int n, double m2, ParametricKind kind,
                                     int a1, int a2, std::uint64_t seed);

// One-sided continuous min instance with u = A + C ln(sigma + 1): per
// battlefield A ~ U[-1, 1], then C ~ U[0, 1], each row-major.
BlottoInstance gen_log_security(int n, double m2, int a1, int a2,
                                std::uint64_t seed);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string instance_to_json(const BlottoInstance& inst);

// Throws std::invalid_argument with a line/column for syntax errors and a
// key path for schema errors; validates the result with require_valid.
BlottoInstance instance_from_json(std::string_view text);

BlottoInstance read_instance(const std::string& path);
void write_instance(const BlottoInstance& inst, const std::string& path);

}  // namespace blotto

#endif  // BLOTTO_INSTANCES_H_
