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

#include "blotto/oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "blotto/lp.h"
#include "blotto/matrix_game.h"

namespace blotto {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PureStrategy {
  std::vector<int> allocation;
  std::vector<int> actions;
};

void for_each_composition(int total, int parts,
                          const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> current(parts, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == parts - 1) {
      current[pos] = left;
      fn(current);
      return;
    }
    for (int k = left; k >= 0; --k) {
      current[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, total);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

std::vector<PureStrategy> enumerate(const BlottoInstance& inst, Player p) {
  std::vector<int> counts;
  for (const auto& bf : inst.battlefields) counts.push_back(p == Player::kOne ? bf.a1 : bf.a2);
  std::vector<PureStrategy> out;
  for_each_composition(inst.discrete_budget(p), inst.n, [&](const std::vector<int>& alloc) {
    std::vector<int> actions(inst.n, 0);
    while (true) {
      out.push_back({alloc, actions});
      int i = 0;
      while (i < inst.n && ++actions[i] == counts[i]) actions[i++] = 0;
      if (i == inst.n) break;
    }
  });
  return out;
}

double pure_payoff(const BlottoInstance& inst, int i, const PureStrategy& s1,
                   const PureStrategy& s2) {
  const auto& t = std::get<DenseTensor>(inst.battlefields[i].payoff);
  return t.at(s1.actions[i], s2.actions[i], t.has_k1_axis() ? s1.allocation[i] : 0,
              s2.allocation[i]);
}

// Grid search on [lo, hi] followed by zooming windows around the incumbent.
struct Opt1 {
  double value;
  double arg;
};

Opt1 zoom1d(const std::function<double(double)>& g, double lo, double hi,
            int points, bool maximize, int rounds = 6) {
  auto better = [&](double a, double b) { return maximize ? a > b : a < b; };
  double step = (hi - lo) / (points - 1);
  Opt1 best{g(lo), lo};
  for (int j = 1; j < points; ++j) {
    const double x = j + 1 == points ? hi : lo + j * step;
    const double v = g(x);
    if (better(v, best.value)) best = {v, x};
  }
  for (int r = 0; r < rounds; ++r) {
    const double a = std::max(lo, best.arg - step);
    const double b = std::min(hi, best.arg + step);
    const double s = (b - a) / 20.0;
    for (int j = 0; j <= 20; ++j) {
      const double x = a + j * s;
      const double v = g(x);
      if (better(v, best.value)) best = {v, x};
    }
    step /= 10.0;
  }
  return best;
}

// Same on the probability simplex over three outcomes, parameterized by the
// first two coordinates.
struct Opt3 {
  double value;
  std::vector<double> arg;
};

Opt3 zoom_simplex3(const std::function<double(double, double, double)>& f,
                   bool maximize) {
  auto better = [&](double a, double b) { return maximize ? a > b : a < b; };
  const int n = 600;
  double h = 1.0 / n;
  double b0 = 0.0, b1 = 0.0;
  double best = f(0.0, 0.0, 1.0);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      const double p0 = static_cast<double>(i) / n;
      const double p1 = static_cast<double>(j) / n;
      const double v = f(p0, p1, std::max(0.0, 1.0 - p0 - p1));
      if (better(v, best)) {
        best = v;
        b0 = p0;
        b1 = p1;
      }
    }
  }
  for (int r = 0; r < 8; ++r) {
    const double c0 = b0, c1 = b1;
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double p0 = c0 + i * h / 10.0;
        const double p1 = c1 + j * h / 10.0;
        if (p0 < 0.0 || p1 < 0.0 || p0 + p1 > 1.0) continue;
        const double v = f(p0, p1, std::max(0.0, 1.0 - p0 - p1));
        if (better(v, best)) {
          best = v;
          b0 = p0;
          b1 = p1;
        }
      }
    }
    h /= 10.0;
  }
  return {best, {b0, b1, std::max(0.0, 1.0 - b0 - b1)}};
}

// max over the outer variable of min over the inner one (or the reverse).
Opt1 nested(const std::function<double(double, double)>& f, double lo_outer,
            double hi_outer, int outer_points, double lo_inner,
            double hi_inner, int inner_points, bool outer_max) {
  return zoom1d(
      [&](double a) {
        return zoom1d([&](double b) { return f(a, b); }, lo_inner, hi_inner,
                      inner_points, !outer_max)
            .value;
      },
      lo_outer, hi_outer, outer_points, outer_max);
}

void require_continuous_min_parametric(const BlottoInstance& inst) {
  require_valid(inst);
  if (inst.is_discrete() || !inst.is_one_sided() ||
      inst.aggregator != Aggregator::kMin) {
    throw std::invalid_argument(
        "grid search needs a continuous one-sided instance with the min "
        "aggregator");
  }
}

// Value of battlefield i at allocation s from the minimizer's program
// min t s.t. sum_r p_r u(r, c) <= t for every column c, p in the simplex.
double battlefield_value(const BlottoInstance& inst, int i, double s) {
  const auto& p = std::get<ParametricMatrix>(inst.battlefields[i].payoff);
  LpModel lp;
  lp.sense = ObjectiveSense::kMinimize;
  const int t = lp.add_variable("t", -kInf, kInf);
  std::vector<int> rows(p.rows);
  for (int r = 0; r < p.rows; ++r) rows[r] = lp.add_variable("p" + std::to_string(r));
  lp.objective = {{t, 1.0}};
  for (int c = 0; c < p.cols; ++c) {
    std::vector<LpTerm> terms{{t, -1.0}};
    for (int r = 0; r < p.rows; ++r) terms.push_back({rows[r], p.value(r, c, s)});
    lp.add_constraint("c" + std::to_string(c), std::move(terms),
                      RowSense::kLessEqual, 0.0);
  }
  std::vector<LpTerm> sum;
  for (int r = 0; r < p.rows; ++r) sum.push_back({rows[r], 1.0});
  lp.add_constraint("sum", std::move(sum), RowSense::kEqual, 1.0);
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error("subgame LP of battlefield " + std::to_string(i) +
                             " at allocation " + std::to_string(s) + ": " +
                             to_string(sol.status));
  }
  return sol.objective;
}

}  // namespace

std::size_t pure_strategy_count(const BlottoInstance& inst, Player player) {
  double count = binomial(inst.discrete_budget(player) + inst.n - 1, inst.n - 1);
  for (const auto& bf : inst.battlefields) {
    count *= player == Player::kOne ? bf.a1 : bf.a2;
  }
  return count > 1e18 ? static_cast<std::size_t>(-1)
                      : static_cast<std::size_t>(std::llround(count));
}

DiscreteValue brute_force_discrete_value(const BlottoInstance& inst) {
  require_valid(inst);
  if (!inst.is_discrete()) {
    throw std::invalid_argument("brute force needs a discrete instance");
  }
  for (Player p : {Player::kOne, Player::kTwo}) {
    const std::size_t c = pure_strategy_count(inst, p);
    if (c > kBruteForceLimit) {
      throw std::length_error("player " +
                              std::string(p == Player::kOne ? "1" : "2") +
                              " has " + std::to_string(c) +
                              " pure strategies; the limit is " +
                              std::to_string(kBruteForceLimit));
    }
  }
  const std::vector<PureStrategy> s1 = enumerate(inst, Player::kOne);
  const std::vector<PureStrategy> s2 = enumerate(inst, Player::kTwo);
  const int r = static_cast<int>(s1.size());
  const int c = static_cast<int>(s2.size());

  DiscreteValue out;
  if (inst.aggregator == Aggregator::kSum) {
    MatrixGame g(r, c);
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < c; ++b) {
        double total = 0.0;
        for (int i = 0; i < inst.n; ++i) total += pure_payoff(inst, i, s1[a], s2[b]);
        g.at(a, b) = total;
      }
    }
    out.maxmin = out.minmax = solve_matrix_game(g).value;
    return out;
  }

  // max t  s.t.  t <= sum_b q_b u_i(s1_a, s2_b) for every (i, a), q in simplex.
  {
    LpModel lp;
    lp.sense = ObjectiveSense::kMaximize;
    const int t = lp.add_variable("t", -kInf, kInf);
    std::vector<int> q(c);
    for (int b = 0; b < c; ++b) q[b] = lp.add_variable("q" + std::to_string(b));
    lp.objective = {{t, 1.0}};
    for (int i = 0; i < inst.n; ++i) {
      for (int a = 0; a < r; ++a) {
        std::vector<LpTerm> terms{{t, 1.0}};
        for (int b = 0; b < c; ++b) terms.push_back({q[b], -pure_payoff(inst, i, s1[a], s2[b])});
        lp.add_constraint("b" + std::to_string(i) + "_" + std::to_string(a),
                          std::move(terms), RowSense::kLessEqual, 0.0);
      }
    }
    std::vector<LpTerm> sum;
    for (int b = 0; b < c; ++b) sum.push_back({q[b], 1.0});
    lp.add_constraint("sum", std::move(sum), RowSense::kEqual, 1.0);
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::kOptimal) throw std::runtime_error("maxmin LP failed");
    out.maxmin = sol.objective;
  }

  if (!inst.is_one_sided()) {
    out.minmax = kNaN;
    out.minmax_exact = false;
    return out;
  }
  // Player 1 does not allocate, so only its per-battlefield marginals matter;
  // weighting them by the battlefield mixture gives a linear program:
  // min t  s.t.  t >= sum_i sum_a z(i, a) u_i(a, s2_b) for every b,
  //              sum_a z(i, a) = w_i, sum_i w_i = 1.
  {
    LpModel lp;
    lp.sense = ObjectiveSense::kMinimize;
    const int t = lp.add_variable("t", -kInf, kInf);
    std::vector<int> w(inst.n);
    std::vector<std::vector<int>> z(inst.n);
    for (int i = 0; i < inst.n; ++i) {
      w[i] = lp.add_variable("w" + std::to_string(i));
      for (int a = 0; a < inst.battlefields[i].a1; ++a) {
        z[i].push_back(lp.add_variable("z" + std::to_string(i) + "_" + std::to_string(a)));
      }
    }
    lp.objective = {{t, 1.0}};
    for (int b = 0; b < c; ++b) {
      std::vector<LpTerm> terms{{t, 1.0}};
      for (int i = 0; i < inst.n; ++i) {
        const auto& u = std::get<DenseTensor>(inst.battlefields[i].payoff);
        for (int a = 0; a < inst.battlefields[i].a1; ++a) {
          terms.push_back({z[i][a], -u.at(a, s2[b].actions[i], 0, s2[b].allocation[i])});
        }
      }
      lp.add_constraint("r" + std::to_string(b), std::move(terms),
                        RowSense::kGreaterEqual, 0.0);
    }
    std::vector<LpTerm> sum;
    for (int i = 0; i < inst.n; ++i) {
      sum.push_back({w[i], 1.0});
      std::vector<LpTerm> split{{w[i], -1.0}};
      for (int v : z[i]) split.push_back({v, 1.0});
      lp.add_constraint("split" + std::to_string(i), std::move(split),
                        RowSense::kEqual, 0.0);
    }
    lp.add_constraint("sum", std::move(sum), RowSense::kEqual, 1.0);
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::kOptimal) throw std::runtime_error("minmax LP failed");
    out.minmax = sol.objective;
  }
  return out;
}

TwoSidedMinCounterexample ce_discrete_two_sided_min() {
  // The gaining side puts k on the first battlefield and 2 - k on the second,
  // so u_1 = (k + 1) / (k' + 1) and u_2 = (3 - k) / (3 - k') for the other
  // side's split k'. Expected battlefield utilities are linear in the mixed
  // side's probabilities.
  TwoSidedMinCounterexample out;
  const Opt3 lo = zoom_simplex3(
      [](double t0, double t1, double t2) {
        const double alpha = t0 + t1 / 2.0 + t2 / 3.0;
        const double beta = t0 / 3.0 + t1 / 2.0 + t2;
        double best = -kInf;
        for (int k = 0; k <= 2; ++k) {
          best = std::max(best, std::min((k + 1) * alpha, (3 - k) * beta));
        }
        return best;
      },
      false);
  const Opt3 hi = zoom_simplex3(
      [](double p0, double p1, double p2) {
        const double alpha = p0 + 2.0 * p1 + 3.0 * p2;
        const double beta = 3.0 * p0 + 2.0 * p1 + p2;
        double worst = kInf;
        for (int k = 0; k <= 2; ++k) {
          worst = std::min(worst, std::min(alpha / (k + 1), beta / (3 - k)));
        }
        return worst;
      },
      true);
  out.minmax = lo.value;
  out.minmax_mix = lo.arg;
  out.maxmin = hi.value;
  out.maxmin_mix = hi.arg;
  return out;
}

ContinuousTwoSidedCounterexample ce_continuous_two_sided() {
  // a: soldiers of the gaining side on battlefield 1 (of 2);
  // b: soldiers of the other side on battlefield 1 (of 1).
  auto parts = [](double a, double b) {
    return std::pair{std::max(a - b, 0.0), std::max((2.0 - a) - (1.0 - b), 0.0)};
  };
  auto sum = [&](double a, double b) {
    const auto [x, y] = parts(a, b);
    return x + y;
  };
  auto mn = [&](double a, double b) {
    const auto [x, y] = parts(a, b);
    return std::min(x, y);
  };
  ContinuousTwoSidedCounterexample out;
  out.sum_maxmin = nested(sum, 0.0, 2.0, 2001, 0.0, 1.0, 10001, true).value;
  out.min_maxmin = nested(mn, 0.0, 2.0, 2001, 0.0, 1.0, 10001, true).value;
  auto flip = [](const std::function<double(double, double)>& f) {
    return [f](double b, double a) { return f(a, b); };
  };
  out.sum_minmax = nested(flip(sum), 0.0, 1.0, 1001, 0.0, 2.0, 20001, false).value;
  out.min_minmax = nested(flip(mn), 0.0, 1.0, 1001, 0.0, 2.0, 20001, false).value;
  return out;
}

OneSidedSumCounterexample ce_one_sided_sum_continuous() {
  auto f = [](double s, double y) { return y * (s * s - 2.0) + 4.0 - s; };
  OneSidedSumCounterexample out;
  const Opt1 mm = nested(f, 0.0, 2.0, 2001, 0.0, 1.0, 1001, true);
  out.maxmin = mm.value;
  out.maxmin_allocation = mm.arg;
  const Opt1 mx = nested([&](double y, double s) { return f(s, y); }, 0.0, 1.0,
                         1001, 0.0, 2.0, 2001, false);
  out.minmax = mx.value;
  out.minmax_mix = mx.arg;
  return out;
}

OneSidedMinCounterexample ce_one_sided_min_discontinuous() {
  // s: allocation to the indicator battlefield (of 2); x: the allocating
  // side's weight on the first row; y: the other side's weight on the first
  // column.
  auto u = [](double s, double x, double y) {
    const double first = s < 1.0 ? x * y : s * s * (1.0 - x) * (1.0 - y);
    return std::min(first, 2.0 - s);
  };
  // Each player's payoff is linear in its own weight, so an 11-point grid
  // contains the endpoints where the inner optima sit.
  auto best_over_weight = [](const std::function<double(double)>& g, bool maximize) {
    double best = g(0.0);
    for (int j = 1; j <= 10; ++j) {
      const double v = g(j / 10.0);
      best = maximize ? std::max(best, v) : std::min(best, v);
    }
    return best;
  };

  OneSidedMinCounterexample out;
  out.maxmin = zoom1d(
      [&](double s) {
        return best_over_weight(
            [&](double x) {
              return best_over_weight([&](double y) { return u(s, x, y); }, false);
            },
            true);
      },
      0.0, 2.0, 2001, true).value;

  out.minmax_numeric = zoom1d(
      [&](double y) {
        return zoom1d(
            [&](double s) {
              return best_over_weight([&](double x) { return u(s, x, y); }, true);
            },
            0.0, 2.0, 2001, true).value;
      },
      0.0, 1.0, 1001, false).value;

  auto quartic = [](double y) {
    return (((y - 6.0) * y + 14.0) * y - 13.0) * y + 4.0;
  };
  // y = 1 is also a root; scan the open interval for the sign change.
  double lo = kNaN, hi = kNaN;
  for (int j = 1; j < 1000; ++j) {
    const double a = (j - 1) / 1000.0 + 1e-9;
    const double b = j / 1000.0;
    if (quartic(a) * quartic(b) <= 0.0) {
      lo = a;
      hi = b;
      break;
    }
  }
  if (std::isnan(lo)) throw std::logic_error("no sign change of the quartic on (0, 1)");
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (quartic(lo) * quartic(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.root = 0.5 * (lo + hi);
  out.minmax = out.root;
  out.allocation = (-1.0 + std::sqrt(9.0 - 8.0 * out.root)) / (2.0 * (1.0 - out.root));
  return out;
}

GridMaximum grid_max_V(const BlottoInstance& inst, int steps) {
  require_continuous_min_parametric(inst);
  if (steps < 1 || steps > 100000) {
    throw std::length_error("grid resolution must be in [1, 100000]");
  }
  const int n = inst.n;
  const double h = inst.m2 / steps;
  std::vector<std::vector<double>> table(n, std::vector<double>(steps + 1));
  bool monotone = true;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= steps; ++k) {
      table[i][k] = battlefield_value(inst, i, k * h);
      if (k > 0 && table[i][k] < table[i][k - 1] - 1e-12) monotone = false;
    }
  }

  std::vector<int> best_k;
  double best = -kInf;
  if (n <= 4 && binomial(steps + n - 1, n - 1) <= 2e7) {
    for_each_composition(steps, n, [&](const std::vector<int>& k) {
      double v = kInf;
      for (int i = 0; i < n; ++i) v = std::min(v, table[i][k[i]]);
      if (v > best) {
        best = v;
        best_k = k;
      }
    });
  } else {
    if (!monotone) {
      throw std::length_error(
          "lattice too large to enumerate and battlefield values are not "
          "monotone");
    }
    // Largest level t such that the least lattice allocations reaching t on
    // every battlefield fit in the budget.
    auto least = [&](int i, double t) {
      const auto it = std::lower_bound(table[i].begin(), table[i].end(), t);
      return it == table[i].end() ? steps + 1 : static_cast<int>(it - table[i].begin());
    };
    std::vector<double> levels;
    for (const auto& row : table) levels.insert(levels.end(), row.begin(), row.end());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    auto fits = [&](double t) {
      long total = 0;
      for (int i = 0; i < n; ++i) total += least(i, t);
      return total <= steps;
    };
    std::size_t lo = 0, hi = levels.size();  // levels[lo] always fits
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (fits(levels[mid])) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    best_k.assign(n, 0);
    int used = 0;
    for (int i = 0; i < n; ++i) {
      best_k[i] = least(i, levels[lo]);
      used += best_k[i];
    }
    best_k[0] += steps - used;
    best = kInf;
    for (int i = 0; i < n; ++i) best = std::min(best, table[i][best_k[i]]);
  }

  GridMaximum out;
  out.lattice_value = best;
  out.value = best;
  for (int k : best_k) out.sigma.push_back(k * h);
  if (!monotone) return out;

  // Continuous refinement: least allocation reaching level t on battlefield i.
  auto least_sigma = [&](int i, double t) {
    if (battlefield_value(inst, i, inst.m2) < t) return kInf;
    double a = 0.0, b = inst.m2;
    if (battlefield_value(inst, i, 0.0) >= t) return 0.0;
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (a + b);
      if (battlefield_value(inst, i, mid) >= t) {
        b = mid;
      } else {
        a = mid;
      }
    }
    return b;
  };
  double t_lo = best;
  double t_hi = kInf;
  for (int i = 0; i < n; ++i) t_hi = std::min(t_hi, table[i][steps]);
  std::vector<double> sigma_lo;
  for (int it = 0; it < 40 && t_hi - t_lo > 1e-10 * (1.0 + std::abs(t_lo)); ++it) {
    const double t = 0.5 * (t_lo + t_hi);
    std::vector<double> s(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += (s[i] = least_sigma(i, t));
    if (total <= inst.m2) {
      t_lo = t;
      sigma_lo = std::move(s);
    } else {
      t_hi = t;
    }
  }
  if (sigma_lo.empty()) return out;
  double total = 0.0;
  for (double v : sigma_lo) total += v;
  sigma_lo[0] += inst.m2 - total;
  double v = kInf;
  for (int i = 0; i < n; ++i) v = std::min(v, battlefield_value(inst, i, sigma_lo[i]));
  if (v > out.value) {
    out.value = v;
    out.sigma = std::move(sigma_lo);
  }
  return out;
}

}  // namespace blotto
