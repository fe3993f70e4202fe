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

#ifndef BLOTTO_MODEL_H_
#define BLOTTO_MODEL_H_

// Game instances for two-level Colonel Blotto: players split soldiers across
// battlefields, then play a zero-sum matrix subgame on every battlefield whose
// payoffs depend on the soldiers placed there.
//
// Sign convention used everywhere in the library: payoffs are Player 2's gain.
// Player 1 minimizes, Player 2 maximizes.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace blotto {

using Distribution = std::vector<double>;

inline constexpr double kDistributionTolerance = 1e-9;

enum class SoldierMode { kDiscrete, kContinuous };
enum class Sidedness { kOneSided, kTwoSided };
enum class Aggregator { kSum, kMin };
enum class Player { kOne, kTwo };

std::string to_string(SoldierMode mode);
std::string to_string(Sidedness sided);
std::string to_string(Aggregator aggregator);

// Exhaustive payoff table u[a1][a2][k1][k2], row-major in that axis order.
// One-sided tables have rank 3 (no k1 axis); lookups then require k1 == 0.
struct DenseTensor {
  std::vector<std::size_t> shape;
  std::vector<double> values;

  static DenseTensor two_sided(int a1, int a2, int k1_size, int k2_size);
  static DenseTensor one_sided(int a1, int a2, int k2_size);

  bool has_k1_axis() const { return shape.size() == 4; }
  int k1_size() const { return has_k1_axis() ? static_cast<int>(shape[2]) : 1; }
  int k2_size() const { return static_cast<int>(shape.back()); }

  double at(int a1, int a2, int k1, int k2) const;
  double& at(int a1, int a2, int k1, int k2);
  std::size_t offset(int a1, int a2, int k1, int k2) const;
};

enum class ParametricKind { kAffine, kQuadratic, kLogMatrix };

std::string to_string(ParametricKind kind);

// Per-entry closed form in Player 2's continuous allocation sigma:
//   affine      lin * sigma + constant
//   quadratic   quad * sigma^2 + lin * sigma + constant
//   log_matrix  constant + lin * ln(sigma + 1)
// For log_matrix, `constant` holds A and `lin` holds C. Matrices are
// row-major with `rows` Player 1 actions and `cols` Player 2 actions.
struct ParametricMatrix {
  ParametricKind kind = ParametricKind::kAffine;
  int rows = 0;
  int cols = 0;
  std::vector<double> quad;
  std::vector<double> lin;
  std::vector<double> constant;

  static ParametricMatrix zeros(ParametricKind kind, int rows, int cols);

  double value(int a1, int a2, double sigma) const;
  double derivative(int a1, int a2, double sigma) const;
  std::size_t index(int a1, int a2) const {
    return static_cast<std::size_t>(a1) * cols + a2;
  }
  // True when every entry is nondecreasing in sigma and not all are constant.
  bool is_increasing() const;
};

using PayoffSpec = std::variant<DenseTensor, ParametricMatrix>;

struct BattlefieldSpec {
  int a1 = 1;
  int a2 = 1;
  PayoffSpec payoff;
};

struct BlottoInstance {
  int n = 0;
  double m1 = 0.0;
  double m2 = 0.0;
  SoldierMode mode = SoldierMode::kDiscrete;
  Sidedness sided = Sidedness::kTwoSided;
  Aggregator aggregator = Aggregator::kSum;
  std::vector<BattlefieldSpec> battlefields;

  bool is_discrete() const { return mode == SoldierMode::kDiscrete; }
  bool is_one_sided() const { return sided == Sidedness::kOneSided; }
  // Integer budgets of the discrete model. One-sided games give Player 1 a
  // zero budget.
  int discrete_budget(Player player) const;
};

struct Violation {
  std::string path;
  std::string message;
};

std::vector<Violation> validate_instance(const BlottoInstance& inst);

// Throws std::invalid_argument listing every violation when the instance is
// malformed.
void require_valid(const BlottoInstance& inst);

// u_i(a1, a2, z1, z2). Tensors index allocations as integers; parametric
// payoffs read only z2.
double battlefield_payoff(const PayoffSpec& spec, int a1, int a2, double z1,
                          double z2);

double expected_battlefield_utility(const PayoffSpec& spec,
                                    std::span<const double> delta1,
                                    std::span<const double> delta2, double z1,
                                    double z2);

double aggregate(std::span<const double> values, Aggregator aggregator);

bool is_distribution(std::span<const double> p,
                     double tolerance = kDistributionTolerance);

// Mixed two-level strategy of one player.
//
// Discrete mode: `allocation_mix` is the support of gamma (allocation vector,
// probability) and `actions[i][k]` is delta_{i,k}. Continuous mode:
// `allocation` is the pure vector sigma and `actions[i][0]` is delta_i.
// A player that does not allocate (Player 1 in one-sided games) leaves both
// allocation fields empty and uses `actions[i][0]`.
struct BehavioralProfile {
  std::vector<std::pair<std::vector<int>, double>> allocation_mix;
  std::vector<double> allocation;
  std::vector<std::vector<Distribution>> actions;
};

}  // namespace blotto

#endif  // BLOTTO_MODEL_H_
