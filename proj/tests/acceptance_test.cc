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

// Acceptance checks C1..C10. Prints one PASS/FAIL line per criterion.
//
//   acceptance_test          run all criteria
//   acceptance_test C3       run one criterion
//
// Exit status is 0 only when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "blotto/flow_polytope.h"
#include "blotto/instances.h"
#include "blotto/lp_builders.h"
#include "blotto/matrix_game.h"
#include "blotto/oracles.h"
#include "blotto/regret.h"
#include "blotto/subgradient.h"
#include "test_support.h"

namespace blotto {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records one sub-check; failures are always listed.
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(10);
    s << what << " computed=" << got << " expected=" << want << " tol=" << tol;
    const bool ok = std::abs(got - want) <= tol;
    if (ok) {
      detail << " " << s.str();
    } else {
      expect(false, s.str());
    }
  }
};

// C1: discrete two-sided min counterexample.
void c1(Outcome& o) {
  const auto start = Clock::now();
  const TwoSidedMinCounterexample ce = ce_discrete_two_sided_min();
  const double t = seconds_since(start);
  o.expect(ce.maxmin <= ce.minmax, "weak duality");
  o.expect(ce.maxmin < ce.minmax, "strict gap");
  o.near(ce.minmax, 0.8, 1e-3, "minmax");
  o.near(ce.maxmin, 2.0 / 3.0, 1e-3, "maxmin");
  o.expect(t < 5.0, "runtime " + std::to_string(t) + " s >= 5 s");
  o.detail << " time_s=" << t;
}

// C2: one-sided sum, one-sided min and continuous two-sided counterexamples.
void c2(Outcome& o) {
  const auto start = Clock::now();
  const OneSidedSumCounterexample p5 = ce_one_sided_sum_continuous();
  o.expect(p5.maxmin <= p5.minmax, "weak duality (one-sided sum)");
  o.near(p5.maxmin, 4.0 - std::sqrt(2.0), 1e-3, "one_sided_sum.maxmin");
  o.near(p5.minmax, 3.0, 1e-3, "one_sided_sum.minmax");

  const OneSidedMinCounterexample t7 = ce_one_sided_min_discontinuous();
  o.expect(t7.maxmin <= t7.minmax, "weak duality (one-sided min)");
  o.near(t7.root, 0.6473, 1e-4, "one_sided_min.quartic_root");
  o.near(t7.allocation, 1.355, 1e-3, "one_sided_min.sigma1");
  o.expect(t7.maxmin == 0.0, "one_sided_min.maxmin == 0");

  const ContinuousTwoSidedCounterexample t6 = ce_continuous_two_sided();
  o.expect(t6.sum_maxmin <= t6.sum_minmax && t6.min_maxmin <= t6.min_minmax,
           "weak duality (two-sided continuous)");
  o.near(t6.sum_maxmin, 1.0, 1e-3, "two_sided.sum.maxmin");
  o.near(t6.sum_minmax, 1.5, 1e-3, "two_sided.sum.minmax");
  o.near(t6.min_maxmin, 0.0, 1e-3, "two_sided.min.maxmin");
  o.near(t6.min_minmax, 0.5, 1e-3, "two_sided.min.minmax");
  const double t = seconds_since(start);
  o.expect(t < 10.0, "runtime " + std::to_string(t) + " s >= 10 s");
  o.detail << " time_s=" << t;
}

// C3: LP value against RM+ self-play on 20 seeded doubling instances.
void c3(Outcome& o) {
  SplitMix64 rng(2026);
  double worst = 0.0;
  double slowest = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + static_cast<int>(rng.below(4));
    const int m1 = 1 + static_cast<int>(rng.below(8));
    const int m2 = 1 + static_cast<int>(rng.below(8));
    const BlottoInstance inst = gen_soft_blotto_double(n, m1, m2, k);
    const auto start = Clock::now();
    const double lp = solve_equilibrium(inst).value;
    LearnConfig cfg;
    cfg.algorithm = RegretAlgorithm::kRMPlus;
    cfg.update_mode = UpdateMode::kAlternating;
    cfg.averaging = Averaging::kQuadratic;
    cfg.gap_threshold = 2e-3;
    cfg.gap_check_every = 50;
    cfg.max_iters = 200000;
    const SelfPlayResult r = self_play(inst, cfg);
    const double t = seconds_since(start);
    const double diff = std::abs(r.value - lp);
    worst = std::max(worst, diff);
    slowest = std::max(slowest, t);
    std::ostringstream id;
    id << "(n=" << n << ",m1=" << m1 << ",m2=" << m2 << ")";
    o.expect(diff <= 2e-3, id.str() + " |lp-rm|=" + std::to_string(diff));
    o.expect(t < 30.0, id.str() + " runtime " + std::to_string(t) + " s");
  }
  o.detail << " max|lp-rm+|=" << worst << " slowest_s=" << slowest;
}

// C4: maxmin and minmax LPs agree for the one-sided settings.
void c4(Outcome& o) {
  SplitMix64 rng(4004);
  double worst[3] = {0.0, 0.0, 0.0};
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const int m2 = 1 + static_cast<int>(rng.below(5));
    const std::vector<BlottoInstance> inst{
        testing::random_discrete(rng, n, 0, m2, 3, Sidedness::kOneSided, Aggregator::kMin),
        testing::random_linear_instance(rng, n, rng.uniform(0.5, 10.0), 4, Aggregator::kSum),
        testing::random_linear_instance(rng, n, rng.uniform(0.5, 10.0), 4, Aggregator::kMin),
    };
    for (int s = 0; s < 3; ++s) {
      const double a = solve_equilibrium(inst[s], LpSide::kMaxMin).value;
      const double b = solve_equilibrium(inst[s], LpSide::kMinMax).value;
      worst[s] = std::max(worst[s], std::abs(a - b));
    }
  }
  const char* names[3] = {"one_sided_min_discrete", "one_sided_sum_linear", "one_sided_min_linear"};
  for (int s = 0; s < 3; ++s) {
    o.expect(worst[s] <= 1e-6, std::string(names[s]) + " gap " + std::to_string(worst[s]));
    o.detail << " " << names[s] << ".max_diff=" << worst[s];
  }
}

// C5: bilinear sequence-form utility equals the exhaustive expectation.
void c5(Outcome& o) {
  SplitMix64 rng(5005);
  double worst = 0.0;
  int profiles = 0;
  for (int k = 0; k < 12; ++k) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const int m1 = static_cast<int>(rng.below(6));
    const int m2 = static_cast<int>(rng.below(6));
    const Sidedness sided = k % 3 == 2 ? Sidedness::kOneSided : Sidedness::kTwoSided;
    const BlottoInstance inst = testing::random_discrete(rng, n, m1, m2, 3, sided);
    const DagPtr d1 = dag_for_player(inst, Player::kOne);
    const DagPtr d2 = dag_for_player(inst, Player::kTwo);
    for (int j = 0; j < 50; ++j) {
      const BehavioralProfile p1 =
          testing::random_behavioral(rng, n, d1->m(), action_counts(inst, Player::kOne));
      const BehavioralProfile p2 =
          testing::random_behavioral(rng, n, d2->m(), action_counts(inst, Player::kTwo));
      const double seq = bilinear_utility(inst, behavioral_to_sequence(d1, p1),
                                          behavioral_to_sequence(d2, p2));
      const double direct = testing::exhaustive_expectation(inst, p1, p2);
      worst = std::max(worst, std::abs(seq - direct));
      ++profiles;
    }
  }
  o.expect(worst <= 1e-9, "max diff " + std::to_string(worst));
  o.detail << " profiles=" << profiles << " max_diff=" << worst;
}

// C6: brute force against the two-sided sum LP on every micro-instance in
// the size guard.
void c6(Outcome& o) {
  double worst = 0.0;
  int count = 0;
  auto check = [&](const BlottoInstance& inst) {
    if (pure_strategy_count(inst, Player::kOne) > kBruteForceLimit ||
        pure_strategy_count(inst, Player::kTwo) > kBruteForceLimit) {
      return;
    }
    const double bf = brute_force_discrete_value(inst).maxmin;
    const double lp = solve_equilibrium(inst).value;
    worst = std::max(worst, std::abs(bf - lp));
    ++count;
  };
  for (int n = 1; n <= 3; ++n) {
    for (int m1 = 0; m1 <= 3; ++m1) {
      for (int m2 = 0; m2 <= 3; ++m2) {
        check(gen_soft_blotto_double(n, m1, m2));
        check(gen_soft_blotto_double(n, m1, m2, 0, Sidedness::kOneSided));
      }
    }
  }
  SplitMix64 rng(6006);
  for (int k = 0; k < 30; ++k) {
    const int n = 1 + static_cast<int>(rng.below(3));
    check(testing::random_discrete(rng, n, rng.below(3), rng.below(3), 3));
  }
  o.expect(worst <= 1e-6, "max diff " + std::to_string(worst));
  o.detail << " instances=" << count << " max_diff=" << worst;
}

// C7: projected subgradient ascent against the grid oracle.
void c7(Outcome& o) {
  int reached = 0;
  double slowest = 0.0;
  std::ostringstream ratios;
  for (int seed = 1; seed <= 10; ++seed) {
    const BlottoInstance inst =
        gen_random_parametric(5, 20.0, ParametricKind::kAffine, 20, 20, seed);
    const auto start = Clock::now();
    AscentConfig cfg;
    cfg.eta0 = 0.01;
    cfg.schedule = StepSchedule::kDiminishing;
    cfg.max_iters = 1000;
    cfg.snapshot_every = 0;
    const AscentResult r = run_psa(inst, cfg);
    const double t = seconds_since(start);
    slowest = std::max(slowest, t);
    const double best = grid_max_V(inst, 2000).value;
    const double ratio = r.value / best;
    ratios << (seed > 1 ? "," : "") << ratio;
    if (ratio >= 0.99) ++reached;
    o.expect(t < 60.0, "seed " + std::to_string(seed) + " runtime " + std::to_string(t) + " s");
  }
  o.expect(reached >= 9, "only " + std::to_string(reached) + "/10 reached 0.99");
  o.detail << " reached=" << reached << "/10 ratios=" << ratios.str() << " slowest_s=" << slowest;
}

// True when the equilibrium has equal-size supports and every action off the
// support is strictly worse, which together with a nonsingular support block
// makes the equilibrium unique.
bool strictly_unique(const MatrixGame& g, const MatrixGameSolution& s) {
  int k1 = 0, k2 = 0;
  for (int r = 0; r < g.rows; ++r) {
    if (s.p1[r] > 1e-9) {
      ++k1;
      continue;
    }
    double u = 0.0;
    for (int c = 0; c < g.cols; ++c) u += g.at(r, c) * s.p2[c];
    if (u < s.value + 1e-6) return false;
  }
  for (int c = 0; c < g.cols; ++c) {
    if (s.p2[c] > 1e-9) {
      ++k2;
      continue;
    }
    double u = 0.0;
    for (int r = 0; r < g.rows; ++r) u += g.at(r, c) * s.p1[r];
    if (u > s.value - 1e-6) return false;
  }
  return k1 == k2;
}

// C8: subgradients against central differences.
void c8(Outcome& o) {
  SplitMix64 rng(8008);
  const double h = 1e-5;
  int points = 0, skipped = 0;
  double worst = 0.0;
  while (points < 100) {
    const int rows = 1 + static_cast<int>(rng.below(4));
    const int cols = 1 + static_cast<int>(rng.below(4));
    const bool quad = rng.below(2) == 1;
    ParametricMatrix p =
        ParametricMatrix::zeros(quad ? ParametricKind::kQuadratic : ParametricKind::kAffine, rows, cols);
    for (double& v : p.lin) v = rng.uniform(0.0, 1.0);
    for (double& v : p.constant) v = rng.uniform(-1.0, 1.0);
    if (quad) {
      for (double& v : p.quad) v = rng.uniform(0.0, 1.0);
    }
    const double sigma = rng.uniform(0.1, 5.0);
    const MatrixGameSolution eq = solve_matrix_game(subgame_at(p, sigma));
    if (!strictly_unique(subgame_at(p, sigma), eq)) {
      ++skipped;
      continue;
    }
    const double fd = (solve_matrix_game(subgame_at(p, sigma + h)).value -
                       solve_matrix_game(subgame_at(p, sigma - h)).value) /
                      (2 * h);
    worst = std::max(worst, std::abs(nash_subgradient(p, sigma, eq) - fd));
    ++points;
  }
  o.expect(worst <= 1e-4, "max diff " + std::to_string(worst));
  o.detail << " points=" << points << " skipped_non_unique=" << skipped << " max_diff=" << worst;
}

// C9: total regret of both players over T, measured at T, 4T, 16T.
void c9(Outcome& o) {
  const std::vector<BlottoInstance> suite{
      gen_soft_blotto_double(2, 1, 1), gen_soft_blotto_double(2, 2, 1),
      gen_soft_blotto_double(3, 2, 2), gen_soft_blotto_double(3, 3, 2),
  };
  for (std::size_t s = 0; s < suite.size(); ++s) {
    LearnConfig cfg;
    cfg.algorithm = RegretAlgorithm::kRMPlus;
    SelfPlaySession session(suite[s], cfg);
    std::vector<double> normalized;
    for (int target : {250, 1000, 4000, 16000}) {
      while (session.iteration() < target) session.step();
      const double r = session.cumulative_regret(Player::kOne) + session.cumulative_regret(Player::kTwo);
      normalized.push_back(r / target);
    }
    o.detail << " inst" << s << "=";
    for (std::size_t j = 0; j < normalized.size(); ++j) {
      o.detail << (j ? "," : "") << normalized[j];
      if (j > 0) {
        o.expect(normalized[j] <= 0.75 * normalized[j - 1],
                 "instance " + std::to_string(s) + " step " + std::to_string(j) + " ratio " +
                     std::to_string(normalized[j] / normalized[j - 1]));
      }
    }
  }
}

// C10: self-play iteration cost against dag dimension.
void c10(Outcome& o) {
  std::vector<double> dims, times;
  for (int n : {5, 10, 20}) {
    const BlottoInstance inst = gen_soft_blotto_double(n, 10, 10);
    SelfPlaySession session(inst, LearnConfig{});
    for (int t = 0; t < 20; ++t) session.step();
    const int iters = 400;
    const auto start = Clock::now();
    for (int t = 0; t < iters; ++t) session.step();
    const double per = seconds_since(start) / iters;
    const double dim = closed_form_dim(n, 10, action_counts(inst, Player::kOne)) +
                       closed_form_dim(n, 10, action_counts(inst, Player::kTwo));
    dims.push_back(dim);
    times.push_back(per);
    o.detail << " n=" << n << ":dim=" << dim << ",s_per_iter=" << per;
  }
  const double k = static_cast<double>(dims.size());
  double mx = 0, my = 0;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    mx += dims[j] / k;
    my += times[j] / k;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    sxy += (dims[j] - mx) * (times[j] - my);
    sxx += (dims[j] - mx) * (dims[j] - mx);
    syy += (times[j] - my) * (times[j] - my);
  }
  const double r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 0.0;
  o.expect(r2 >= 0.9 && sxy > 0, "r2 " + std::to_string(r2));
  o.detail << " r2=" << r2;
}

}  // namespace
}  // namespace blotto

int main(int argc, char** argv) {
  using blotto::Outcome;
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"C1", blotto::c1}, {"C2", blotto::c2}, {"C3", blotto::c3}, {"C4", blotto::c4},
      {"C5", blotto::c5}, {"C6", blotto::c6}, {"C7", blotto::c7}, {"C8", blotto::c8},
      {"C9", blotto::c9}, {"C10", blotto::c10},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  bool all_pass = true;
  bool ran = false;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && only != name) continue;
    ran = true;
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %s%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  if (!ran) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return all_pass ? 0 : 1;
}
