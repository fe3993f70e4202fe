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

#ifndef BLOTTO_MATRIX_GAME_H_
#define BLOTTO_MATRIX_GAME_H_

// Two-player zero-sum normal-form games. Entries are Player 2's gain; rows
// belong to the minimizer, columns to the maximizer.

#include <vector>

#include "blotto/model.h"

namespace blotto {

struct MatrixGame {
  int rows = 0;
  int cols = 0;
  std::vector<double> m;  // row-major

  MatrixGame() = default;
  MatrixGame(int r, int c);
  explicit MatrixGame(const std::vector<std::vector<double>>& table);

  double at(int r, int c) const { return m[static_cast<std::size_t>(r) * cols + c]; }
  double& at(int r, int c) { return m[static_cast<std::size_t>(r) * cols + c]; }
};

struct MatrixGameSolution {
  Distribution p1;
  Distribution p2;
  double value = 0.0;
};

// Throws std::invalid_argument on empty or non-finite matrices.
void check_matrix_game(const MatrixGame& g);

// Value LP max v s.t. M q >= v (each row), sum q = 1, solved by the simplex in
// lp.h on entries rescaled to [0, 1]. Player 1's strategy is read from the row
// prices. Deterministic for a given matrix.
MatrixGameSolution solve_matrix_game(const MatrixGame& g);

// Best pure deviation gain summed over both players; zero at an equilibrium.
double exploitability(const MatrixGame& g, const Distribution& p1,
                      const Distribution& p2);

double expected_payoff(const MatrixGame& g, const Distribution& p1,
                       const Distribution& p2);

// Subgame of a parametric battlefield at Player 2 allocation sigma (>= 0).
MatrixGame subgame_at(const ParametricMatrix& spec, double sigma);
MatrixGame subgame_at(const PayoffSpec& spec, double sigma);
// Subgame of a tensor battlefield at integer allocations (k1 = 0 when the
// tensor is one-sided).
MatrixGame subgame_at(const DenseTensor& spec, int k1, int k2);

}  // namespace blotto

#endif  // BLOTTO_MATRIX_GAME_H_
