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

#include "blotto/matrix_game.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "blotto/lp.h"

namespace blotto {
namespace {

void normalize(Distribution& p) {
  double total = 0.0;
  for (double& v : p) {
    v = std::max(v, 0.0);
    total += v;
  }
  if (total <= 0.0) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(p.size()));
    return;
  }
  for (double& v : p) v /= total;
}

}  // namespace

MatrixGame::MatrixGame(int r, int c)
    : rows(r), cols(c), m(static_cast<std::size_t>(r) * c, 0.0) {}

MatrixGame::MatrixGame(const std::vector<std::vector<double>>& table) {
  rows = static_cast<int>(table.size());
  cols = rows > 0 ? static_cast<int>(table[0].size()) : 0;
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != cols) {
      throw std::invalid_argument("matrix rows have different lengths");
    }
    m.insert(m.end(), row.begin(), row.end());
  }
}

void check_matrix_game(const MatrixGame& g) {
  if (g.rows < 1 || g.cols < 1) {
    throw std::invalid_argument("matrix game needs at least one row and column");
  }
  if (g.m.size() != static_cast<std::size_t>(g.rows) * g.cols) {
    throw std::invalid_argument("matrix game has " + std::to_string(g.m.size()) +
                                " entries, expected rows * cols");
  }
  for (double v : g.m) {
    if (!std::isfinite(v)) throw std::invalid_argument("matrix entry is not finite");
  }
}

MatrixGameSolution solve_matrix_game(const MatrixGame& g) {
  check_matrix_game(g);
  const auto [lo_it, hi_it] = std::minmax_element(g.m.begin(), g.m.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;
  MatrixGameSolution out;
  if (span == 0.0) {
    out.p1.assign(g.rows, 0.0);
    out.p2.assign(g.cols, 0.0);
    out.p1[0] = 1.0;
    out.p2[0] = 1.0;
    out.value = lo;
    return out;
  }

  LpModel lp;
  lp.sense = ObjectiveSense::kMaximize;
  const int v = lp.add_variable("v", -kInf, kInf);
  std::vector<int> q(g.cols);
  for (int c = 0; c < g.cols; ++c) q[c] = lp.add_variable("q" + std::to_string(c));
  lp.objective = {{v, 1.0}};
  for (int r = 0; r < g.rows; ++r) {
    std::vector<LpTerm> terms;
    for (int c = 0; c < g.cols; ++c) terms.push_back({q[c], (g.at(r, c) - lo) / span});
    terms.push_back({v, -1.0});
    lp.add_constraint("r" + std::to_string(r), std::move(terms),
                      RowSense::kGreaterEqual, 0.0);
  }
  std::vector<LpTerm> sum;
  for (int c = 0; c < g.cols; ++c) sum.push_back({q[c], 1.0});
  lp.add_constraint("sum", std::move(sum), RowSense::kEqual, 1.0);

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error("matrix game LP ended with status " +
                             to_string(sol.status));
  }
  out.p2.resize(g.cols);
  for (int c = 0; c < g.cols; ++c) out.p2[c] = sol.primal[q[c]];
  out.p1.resize(g.rows);
  for (int r = 0; r < g.rows; ++r) out.p1[r] = -sol.dual[r];
  normalize(out.p1);
  normalize(out.p2);
  out.value = lo + span * sol.objective;
  return out;
}

double expected_payoff(const MatrixGame& g, const Distribution& p1,
                       const Distribution& p2) {
  double total = 0.0;
  for (int r = 0; r < g.rows; ++r) {
    for (int c = 0; c < g.cols; ++c) total += p1[r] * g.at(r, c) * p2[c];
  }
  return total;
}

double exploitability(const MatrixGame& g, const Distribution& p1,
                      const Distribution& p2) {
  check_matrix_game(g);
  if (static_cast<int>(p1.size()) != g.rows ||
      static_cast<int>(p2.size()) != g.cols) {
    throw std::invalid_argument("strategy sizes do not match the matrix");
  }
  double best_col = -kInf;
  for (int c = 0; c < g.cols; ++c) {
    double v = 0.0;
    for (int r = 0; r < g.rows; ++r) v += p1[r] * g.at(r, c);
    best_col = std::max(best_col, v);
  }
  double best_row = kInf;
  for (int r = 0; r < g.rows; ++r) {
    double v = 0.0;
    for (int c = 0; c < g.cols; ++c) v += g.at(r, c) * p2[c];
    best_row = std::min(best_row, v);
  }
  return best_col - best_row;
}

MatrixGame subgame_at(const ParametricMatrix& spec, double sigma) {
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("allocation must be nonnegative, got " +
                                std::to_string(sigma));
  }
  MatrixGame g(spec.rows, spec.cols);
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) g.at(r, c) = spec.value(r, c, sigma);
  }
  return g;
}

MatrixGame subgame_at(const PayoffSpec& spec, double sigma) {
  const auto* p = std::get_if<ParametricMatrix>(&spec);
  if (p == nullptr) {
    throw std::invalid_argument("continuous subgames need a parametric payoff");
  }
  return subgame_at(*p, sigma);
}

MatrixGame subgame_at(const DenseTensor& spec, int k1, int k2) {
  MatrixGame g(static_cast<int>(spec.shape[0]), static_cast<int>(spec.shape[1]));
  for (int r = 0; r < g.rows; ++r) {
    for (int c = 0; c < g.cols; ++c) g.at(r, c) = spec.at(r, c, k1, k2);
  }
  return g;
}

}  // namespace blotto
