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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "blotto/flow_polytope.h"
#include "test_support.h"

namespace blotto {
namespace {

using testing::compositions;
using testing::exhaustive_expectation;
using testing::random_behavioral;
using testing::random_discrete;

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Every pure (allocation, action-per-battlefield) vertex of a player.
template <typename Fn>
void for_each_vertex(const DagPtr& dag, Fn fn) {
  for (const auto& alloc : compositions(dag->m(), dag->n())) {
    std::vector<int> actions(dag->n(), 0);
    while (true) {
      fn(alloc, actions);
      int i = 0;
      while (i < dag->n() && ++actions[i] == dag->action_counts()[i]) actions[i++] = 0;
      if (i == dag->n()) break;
    }
  }
}

TEST(BuildDag, SingleBattlefieldNoSoldiers) {
  const DagPtr dag = build_dag(1, 0, {2});
  EXPECT_EQ(dag->num_h(), 1);
  EXPECT_EQ(dag->num_x(), 2);
  EXPECT_EQ(dag->dim(), 3);
  EXPECT_EQ(dag->path_count(), 1u);
}

TEST(BuildDag, PathsAreCompositions) {
  EXPECT_EQ(build_dag(3, 4, {1, 1, 1})->path_count(), 15u);
  EXPECT_EQ(compositions(4, 3).size(), 15u);
}

TEST(BuildDag, TwoBattlefieldsTwoSoldiersEdgeCount) {
  // Layer 0 leaves node 2 for 0, 1 or 2; layer 1 sends 0, 1 or 2 to the sink.
  const DagPtr dag = build_dag(2, 2, {1, 1});
  EXPECT_EQ(dag->num_h(), 6);
  EXPECT_EQ(dag->dim(), 6 + 3 + 3);
  EXPECT_GE(dag->h_index(0, 2, 1), 0);
  EXPECT_EQ(dag->h_index(0, 1, 1), -1);
  EXPECT_EQ(dag->h_index(1, 2, 1), -1);
}

TEST(BuildDag, DimensionMatchesClosedFormCount) {
  for (int n = 1; n <= 6; ++n) {
    for (int m = 0; m <= 7; ++m) {
      std::vector<int> actions(n);
      for (int i = 0; i < n; ++i) actions[i] = 1 + (i * 7 + m) % 3;
      const DagPtr dag = build_dag(n, m, actions);
      // Direct count: first layer m + 1 edges, interior layers every b <= a,
      // last layer one edge per node, single battlefield a single edge.
      std::size_t edges = n == 1 ? 1 : 2 * (m + 1) + (n - 2) * (m + 1) * (m + 2) / 2;
      std::size_t xs = 0;
      for (int a : actions) xs += static_cast<std::size_t>(m + 1) * a;
      EXPECT_EQ(static_cast<std::size_t>(dag->dim()), edges + xs) << n << " " << m;
      EXPECT_EQ(closed_form_dim(n, m, actions), edges + xs);
    }
  }
}

TEST(BuildDag, Errors) {
  EXPECT_THROW(build_dag(0, 1, {}), std::invalid_argument);
  EXPECT_THROW(build_dag(1, -1, {1}), std::invalid_argument);
  EXPECT_THROW(build_dag(2, 1, {1}), std::invalid_argument);
  EXPECT_THROW(build_dag(1, 100000, {100000}), std::overflow_error);
}

TEST(BehavioralToSequence, PureAllocationIsZeroOneVector) {
  const DagPtr dag = build_dag(2, 2, {2, 2});
  const SequenceStrategy s = vertex_strategy(dag, std::vector<int>{2, 0}, std::vector<int>{1, 0});
  for (double v : s.values) EXPECT_TRUE(v == 0.0 || v == 1.0);
  EXPECT_EQ(s.h(0, 2, 0), 1.0);
  EXPECT_EQ(s.h(1, 0, 0), 1.0);
  EXPECT_EQ(s.x(0, 2, 1), 1.0);
  EXPECT_EQ(s.x(1, 0, 0), 1.0);
  EXPECT_TRUE(check_sequence_strategy(s).empty());
}

TEST(BehavioralToSequence, SplitMixtureMarginals) {
  const DagPtr dag = build_dag(2, 2, {1, 1});
  BehavioralProfile p;
  p.allocation_mix = {{{2, 0}, 0.5}, {{0, 2}, 0.5}};
  p.actions.assign(2, std::vector<Distribution>(3, Distribution{1.0}));
  const SequenceStrategy s = behavioral_to_sequence(dag, p);
  EXPECT_DOUBLE_EQ(s.h(0, 2, 0), 0.5);
  EXPECT_DOUBLE_EQ(s.h(0, 2, 2), 0.5);
  EXPECT_DOUBLE_EQ(s.h(0, 2, 1), 0.0);
  EXPECT_DOUBLE_EQ(s.mass(0, 2), 0.5);
  EXPECT_DOUBLE_EQ(s.mass(1, 2), 0.5);
  EXPECT_DOUBLE_EQ(s.mass(1, 1), 0.0);
}

TEST(BehavioralToSequence, ActionMarginalOnSingleAllocation) {
  const DagPtr dag = build_dag(2, 2, {2, 3});
  BehavioralProfile p;
  p.allocation_mix = {{{1, 1}, 1.0}};
  p.actions = {std::vector<Distribution>(3, Distribution{0.5, 0.5}),
               std::vector<Distribution>(3, Distribution{0.2, 0.3, 0.5})};
  const SequenceStrategy s = behavioral_to_sequence(dag, p);
  EXPECT_DOUBLE_EQ(s.x(1, 1, 0), 0.2);
  EXPECT_DOUBLE_EQ(s.x(1, 1, 2), 0.5);
  EXPECT_DOUBLE_EQ(s.x(0, 1, 1), 0.5);
}

TEST(BehavioralToSequence, RejectsBudgetViolation) {
  const DagPtr dag = build_dag(2, 2, {1, 1});
  BehavioralProfile p;
  p.allocation_mix = {{{1, 0}, 1.0}};
  p.actions.assign(2, std::vector<Distribution>(3, Distribution{1.0}));
  EXPECT_THROW(behavioral_to_sequence(dag, p), std::invalid_argument);
}

TEST(SequenceToBehavioral, RoundTripsRandomStrategies) {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const int m = static_cast<int>(rng.below(6));
    std::vector<int> actions(n);
    for (int& a : actions) a = 1 + static_cast<int>(rng.below(3));
    const DagPtr dag = build_dag(n, m, actions);
    const SequenceStrategy s = behavioral_to_sequence(dag, random_behavioral(rng, n, m, actions));
    ASSERT_TRUE(check_sequence_strategy(s).empty());
    const SequenceStrategy back = behavioral_to_sequence(dag, sequence_to_behavioral(s));
    EXPECT_LE(max_abs_diff(back.values, s.values), 1e-7);
  }
}

TEST(SequenceToBehavioral, UniformRoundTrips) {
  const DagPtr dag = build_dag(3, 3, {2, 1, 3});
  const SequenceStrategy u = uniform_strategy(dag);
  EXPECT_LE(max_abs_diff(behavioral_to_sequence(dag, sequence_to_behavioral(u)).values, u.values),
            1e-7);
}

TEST(SequenceToBehavioral, VerticesRecoverExactly) {
  const DagPtr dag = build_dag(3, 3, {2, 2, 2});
  for_each_vertex(dag, [&](const std::vector<int>& alloc, const std::vector<int>& actions) {
    const BehavioralProfile p = sequence_to_behavioral(vertex_strategy(dag, alloc, actions));
    ASSERT_EQ(p.allocation_mix.size(), 1u);
    EXPECT_EQ(p.allocation_mix[0].first, alloc);
    EXPECT_EQ(p.allocation_mix[0].second, 1.0);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(p.actions[i][alloc[i]][actions[i]], 1.0);
  });
}

TEST(SequenceToBehavioral, ZeroReachIsUniform) {
  const DagPtr dag = build_dag(2, 2, {2, 4});
  const BehavioralProfile p = sequence_to_behavioral(
      vertex_strategy(dag, std::vector<int>{2, 0}, std::vector<int>{0, 0}));
  for (double v : p.actions[1][2]) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(UniformStrategy, SingleBattlefield) {
  const DagPtr dag = build_dag(1, 3, {4});
  const SequenceStrategy u = uniform_strategy(dag);
  EXPECT_DOUBLE_EQ(u.h(0, 3, 0), 1.0);
  for (int a = 0; a < 4; ++a) EXPECT_DOUBLE_EQ(u.x(0, 3, a), 0.25);
}

TEST(UniformStrategy, TwoBattlefieldsOneSoldier) {
  const SequenceStrategy u = uniform_strategy(build_dag(2, 1, {1, 1}));
  EXPECT_DOUBLE_EQ(u.h(0, 1, 1), 0.5);
  EXPECT_DOUBLE_EQ(u.h(0, 1, 0), 0.5);
}

TEST(UniformStrategy, FeasibleOnRandomSizes) {
  SplitMix64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const int m = static_cast<int>(rng.below(9));
    std::vector<int> actions(n);
    for (int& a : actions) a = 1 + static_cast<int>(rng.below(4));
    EXPECT_TRUE(check_sequence_strategy(uniform_strategy(build_dag(n, m, actions))).empty());
  }
}

TEST(CheckSequenceStrategy, FlagsBrokenConservation) {
  SequenceStrategy s = uniform_strategy(build_dag(3, 2, {1, 1, 1}));
  s.values[s.dag->h_index(1, 1, 0)] += 0.1;
  EXPECT_FALSE(check_sequence_strategy(s).empty());
}

// Kuhn equivalence on random behavioral profiles.
TEST(BilinearUtility, EqualsExhaustiveExpectation) {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const int m1 = static_cast<int>(rng.below(6));
    const int m2 = static_cast<int>(rng.below(6));
    const BlottoInstance inst = random_discrete(rng, n, m1, m2, 3);
    const DagPtr d1 = dag_for_player(inst, Player::kOne);
    const DagPtr d2 = dag_for_player(inst, Player::kTwo);
    const auto p1 = random_behavioral(rng, n, m1, action_counts(inst, Player::kOne));
    const auto p2 = random_behavioral(rng, n, m2, action_counts(inst, Player::kTwo));
    EXPECT_NEAR(bilinear_utility(inst, behavioral_to_sequence(d1, p1), behavioral_to_sequence(d2, p2)),
                exhaustive_expectation(inst, p1, p2), 1e-9);
  }
}

TEST(BilinearUtility, OneSidedUsesEmptyAllocationForPlayerOne) {
  SplitMix64 rng(43);
  const BlottoInstance inst = random_discrete(rng, 3, 0, 3, 2, Sidedness::kOneSided);
  EXPECT_EQ(dag_for_player(inst, Player::kOne)->m(), 0);
  const auto p1 = random_behavioral(rng, 3, 0, action_counts(inst, Player::kOne));
  const auto p2 = random_behavioral(rng, 3, 3, action_counts(inst, Player::kTwo));
  EXPECT_NEAR(bilinear_utility(inst, behavioral_to_sequence(dag_for_player(inst, Player::kOne), p1),
                               behavioral_to_sequence(dag_for_player(inst, Player::kTwo), p2)),
              exhaustive_expectation(inst, p1, p2), 1e-9);
}

TEST(BilinearUtility, PureStrategiesSumBattlefieldPayoffs) {
  SplitMix64 rng(47);
  const BlottoInstance inst = random_discrete(rng, 3, 3, 2, 2);
  const auto x1 = vertex_strategy(dag_for_player(inst, Player::kOne), std::vector<int>{1, 0, 2},
                                  std::vector<int>{0, 0, 0});
  const auto x2 = vertex_strategy(dag_for_player(inst, Player::kTwo), std::vector<int>{0, 2, 0},
                                  std::vector<int>{0, 0, 0});
  double want = 0.0;
  const int z1[] = {1, 0, 2}, z2[] = {0, 2, 0};
  for (int i = 0; i < 3; ++i) want += battlefield_payoff(inst.battlefields[i].payoff, 0, 0, z1[i], z2[i]);
  EXPECT_NEAR(bilinear_utility(inst, x1, x2), want, 1e-12);
}

TEST(BilinearUtility, ScalesWithPayoffs) {
  SplitMix64 rng(53);
  BlottoInstance inst = random_discrete(rng, 2, 2, 2, 2);
  const auto x1 = uniform_strategy(dag_for_player(inst, Player::kOne));
  const auto x2 = uniform_strategy(dag_for_player(inst, Player::kTwo));
  const double base = bilinear_utility(inst, x1, x2);
  for (auto& bf : inst.battlefields) {
    for (double& v : std::get<DenseTensor>(bf.payoff).values) v *= 2.0;
  }
  EXPECT_NEAR(bilinear_utility(inst, x1, x2), 2.0 * base, 1e-12);
}

TEST(BilinearUtility, RejectsMinAggregator) {
  SplitMix64 rng(59);
  const BlottoInstance inst = random_discrete(rng, 2, 1, 1, 2, Sidedness::kTwoSided, Aggregator::kMin);
  const auto x1 = uniform_strategy(dag_for_player(inst, Player::kOne));
  const auto x2 = uniform_strategy(dag_for_player(inst, Player::kTwo));
  EXPECT_THROW(bilinear_utility(inst, x1, x2), std::invalid_argument);
}

TEST(BestResponse, MatchesVertexEnumeration) {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(3));
    const int m = static_cast<int>(rng.below(5));
    const BlottoInstance inst = random_discrete(rng, n, m, m, 3);
    const DagPtr d1 = dag_for_player(inst, Player::kOne);
    const DagPtr d2 = dag_for_player(inst, Player::kTwo);
    const auto x1 = behavioral_to_sequence(d1, random_behavioral(rng, n, m, d1->action_counts()));
    const auto x2 = behavioral_to_sequence(d2, random_behavioral(rng, n, m, d2->action_counts()));

    double best2 = -1e300, best1 = 1e300;
    for_each_vertex(d2, [&](const auto& z, const auto& a) {
      best2 = std::max(best2, bilinear_utility(inst, x1, vertex_strategy(d2, z, a)));
    });
    for_each_vertex(d1, [&](const auto& z, const auto& a) {
      best1 = std::min(best1, bilinear_utility(inst, vertex_strategy(d1, z, a), x2));
    });
    const FlowBestResponse r2 = best_response(inst, Player::kTwo, x1);
    const FlowBestResponse r1 = best_response(inst, Player::kOne, x2);
    EXPECT_NEAR(r2.value, best2, 1e-9);
    EXPECT_NEAR(r1.value, best1, 1e-9);
    EXPECT_NEAR(bilinear_utility(inst, x1, r2.strategy), r2.value, 1e-9);
    EXPECT_NEAR(bilinear_utility(inst, r1.strategy, x2), r1.value, 1e-9);
    EXPECT_TRUE(check_sequence_strategy(r2.strategy).empty());
  }
}

TEST(BestResponse, ZeroPayoffsGiveZero) {
  SplitMix64 rng(67);
  BlottoInstance inst = random_discrete(rng, 3, 2, 2, 2);
  for (auto& bf : inst.battlefields) {
    for (double& v : std::get<DenseTensor>(bf.payoff).values) v = 0.0;
  }
  const auto x1 = uniform_strategy(dag_for_player(inst, Player::kOne));
  EXPECT_EQ(best_response(inst, Player::kTwo, x1).value, 0.0);
}

TEST(BestResponse, SingleBattlefieldIsBestColumn) {
  SplitMix64 rng(71);
  const BlottoInstance inst = random_discrete(rng, 1, 2, 3, 3);
  const auto& t = std::get<DenseTensor>(inst.battlefields[0].payoff);
  const auto x1 = uniform_strategy(dag_for_player(inst, Player::kOne));
  double best = -1e300;
  for (int b = 0; b < inst.battlefields[0].a2; ++b) {
    double col = 0.0;
    for (int a = 0; a < inst.battlefields[0].a1; ++a) col += x1.x(0, 2, a) * t.at(a, b, 2, 3);
    best = std::max(best, col);
  }
  EXPECT_NEAR(best_response(inst, Player::kTwo, x1).value, best, 1e-12);
}

TEST(TwoLevel, MakeAndCheck) {
  const TwoLevelSeqStrategy y = make_two_level(SeqPolytope::kQ, 3.0, std::vector<double>{1.0, 2.0},
                                               {{0.5, 0.5}, {1.0}});
  EXPECT_TRUE(check_two_level(y).empty());
  EXPECT_DOUBLE_EQ(y.action[0][1], 0.5);
  EXPECT_DOUBLE_EQ(y.action[1][0], 2.0);
  TwoLevelSeqStrategy bad = y;
  bad.battlefield[0] = 0.5;
  EXPECT_FALSE(check_two_level(bad).empty());
}

TEST(TwoLevel, BestResponseOverP) {
  // Minimizer over P puts all weight on the smallest (battlefield, action) weight.
  const std::vector<std::vector<double>> w{{3.0, 1.5}, {2.0}};
  const TwoLevelBestResponse r = best_response_two_level(SeqPolytope::kP, 1.0, w, false);
  EXPECT_DOUBLE_EQ(r.value, 1.5);
  EXPECT_DOUBLE_EQ(r.strategy.action[0][1], 1.0);
  const TwoLevelBestResponse q = best_response_two_level(SeqPolytope::kQ, 4.0, w, true);
  EXPECT_DOUBLE_EQ(q.value, 12.0);
}

}  // namespace
}  // namespace blotto
