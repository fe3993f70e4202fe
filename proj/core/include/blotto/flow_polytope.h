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

#ifndef BLOTTO_FLOW_POLYTOPE_H_
#define BLOTTO_FLOW_POLYTOPE_H_

// Sequence-form strategy spaces.
//
// A player with budget m and n battlefields is described by a layered graph.
// Layer i (0-based) corresponds to battlefield i; its nodes are the number of
// soldiers still unassigned before battlefield i is visited, and an edge
// a -> b assigns a - b soldiers to battlefield i. Layer 0 starts at the single
// node m and the last layer must end at 0, so every source-sink path is an
// allocation that spends the full budget.
//
// A point of the flow polytope holds one value per edge (h) and one value per
// (battlefield, soldier count, action) triple (x). The x block of battlefield
// i and count k sums to the flow through edges of layer i assigning k.
//
// Variable ids: edges first, ordered by (layer, a, b); then x variables
// ordered by (i, k, action).

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "blotto/model.h"

namespace blotto {

inline constexpr double kFlowTolerance = 1e-8;

struct FlowEdge {
  int layer = 0;
  int from = 0;
  int to = 0;
  int soldiers() const { return from - to; }
};

class LayeredStrategyDag {
 public:
  // Throws std::invalid_argument on bad sizes and std::overflow_error when
  // the variable count does not fit in an int.
  LayeredStrategyDag(int n, int m, std::vector<int> action_counts);

  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<int>& action_counts() const { return action_counts_; }

  int num_h() const { return static_cast<int>(edges_.size()); }
  int num_x() const { return dim_ - num_h(); }
  int dim() const { return dim_; }

  // -1 when the edge does not exist.
  int h_index(int i, int a, int b) const;
  int x_index(int i, int k, int action) const;
  const FlowEdge& edge(int id) const { return edges_[id]; }
  const std::vector<FlowEdge>& edges() const { return edges_; }

  // Edge ids leaving node a of layer i, ordered by decreasing soldiers
  // assigned (increasing b). Empty for nodes that do not exist.
  std::span<const int> out_edges(int i, int a) const;
  // Nodes of layer i with at least one outgoing edge.
  std::span<const int> nodes(int i) const { return layer_nodes_[i]; }

  std::size_t path_count() const;

 private:
  int n_;
  int m_;
  std::vector<int> action_counts_;
  std::vector<FlowEdge> edges_;
  std::vector<int> h_lookup_;
  std::vector<int> x_offset_;
  std::vector<std::vector<int>> out_edges_;
  std::vector<std::vector<int>> layer_nodes_;
  int dim_ = 0;
};

using DagPtr = std::shared_ptr<const LayeredStrategyDag>;

DagPtr build_dag(int n, int m, std::vector<int> action_counts);

// Edge and variable counts from the construction rules, computed without
// building the graph:
//   n = 1: 1 edge; n >= 2: 2(m+1) + (n-2)(m+1)(m+2)/2 edges;
//   plus (m+1) * sum(action_counts) x variables.
std::size_t closed_form_dim(int n, int m, std::span<const int> action_counts);

// Action counts of one player, read from the instance.
std::vector<int> action_counts(const BlottoInstance& inst, Player player);

// Strategy-space graph of a discrete player. Player 1 of a one-sided game
// gets the budget-0 graph, which is the product of per-battlefield simplexes.
DagPtr dag_for_player(const BlottoInstance& inst, Player player);

struct SequenceStrategy {
  DagPtr dag;
  std::vector<double> values;

  double h(int i, int a, int b) const;
  double x(int i, int k, int action) const;
  // Probability of assigning exactly k soldiers to battlefield i.
  double mass(int i, int k) const;
  // Probability of arriving at node a of layer i.
  double reach(int i, int a) const;
};

std::vector<Violation> check_sequence_strategy(
    const SequenceStrategy& s, double tolerance = kFlowTolerance);

// `profile.allocation_mix` must hold budget-exact vectors; `profile.actions`
// must hold m + 1 distributions per battlefield.
SequenceStrategy behavioral_to_sequence(const DagPtr& dag,
                                        const BehavioralProfile& profile);

// Markov decomposition of the flow into paths. Nodes and (i, k) pairs with
// zero probability get uniform splits. Throws std::length_error if more than
// `max_paths` allocations carry positive probability.
BehavioralProfile sequence_to_behavioral(const SequenceStrategy& s,
                                         std::size_t max_paths = 1000000);

SequenceStrategy uniform_strategy(const DagPtr& dag);

// Pure strategy: one allocation and one action per battlefield.
SequenceStrategy vertex_strategy(const DagPtr& dag,
                                 std::span<const int> allocation,
                                 std::span<const int> actions);

// U = sum_i sum u_i(a1, a2, k1, k2) x1[i,k1,a1] x2[i,k2,a2] for discrete sum
// games. x1 lives on dag_for_player(inst, kOne).
double bilinear_utility(const BlottoInstance& inst, const SequenceStrategy& x1,
                        const SequenceStrategy& x2);

// dU/dx of `self` for the bilinear form above, one entry per variable of the
// responder's dag (edge entries are zero).
std::vector<double> utility_gradient(const BlottoInstance& inst, Player self,
                                     const SequenceStrategy& opponent);

struct FlowBestResponse {
  SequenceStrategy strategy;
  double value = 0.0;
};

// Optimizes a linear objective (one weight per dag variable) over the flow
// polytope by dynamic programming over layers. Ties prefer fewer soldiers on
// the current battlefield, then lower action index.
FlowBestResponse best_response_linear(const DagPtr& dag,
                                      std::span<const double> weights,
                                      bool maximize);

// Player 1 minimizes and Player 2 maximizes the bilinear utility.
FlowBestResponse best_response(const BlottoInstance& inst, Player side,
                               const SequenceStrategy& opponent);

// Two-level sequence forms y(i, action) = weight_i * delta_i(action).
//   kP              sum_i y(i) = 1    (mixture over battlefields)
//   kQ              sum_i y(i) = m2   (continuous allocation)
//   kSimplexProduct y(i) = 1 for all i (one mixed action per battlefield)
enum class SeqPolytope { kP, kQ, kSimplexProduct };

struct TwoLevelSeqStrategy {
  SeqPolytope kind = SeqPolytope::kP;
  double root = 1.0;
  std::vector<double> battlefield;
  std::vector<std::vector<double>> action;
};

std::vector<Violation> check_two_level(const TwoLevelSeqStrategy& y,
                                       double tolerance = kFlowTolerance);

TwoLevelSeqStrategy make_two_level(SeqPolytope kind, double root,
                                   std::span<const double> weights,
                                   const std::vector<Distribution>& deltas);

TwoLevelSeqStrategy uniform_two_level(SeqPolytope kind, double root,
                                      std::span<const int> action_counts);

// delta_i = y(i, .) / y(i); battlefields with zero weight get uniform.
std::vector<Distribution> two_level_actions(const TwoLevelSeqStrategy& y);

struct TwoLevelBestResponse {
  TwoLevelSeqStrategy strategy;
  double value = 0.0;
};

// Linear objective sum_i sum_a w[i][a] y(i, a). For kP and kQ the optimum is
// a single (battlefield, action) vertex, lowest indices on ties.
TwoLevelBestResponse best_response_two_level(
    SeqPolytope kind, double root, const std::vector<std::vector<double>>& w,
    bool maximize);

// One-sided discrete min: U = sum_i sum y1(i,a1) u_i(a1,a2,k2) x2[i,k2,a2].
double min_discrete_utility(const BlottoInstance& inst,
                            const TwoLevelSeqStrategy& y1,
                            const SequenceStrategy& x2);
std::vector<std::vector<double>> min_discrete_weights_p1(
    const BlottoInstance& inst, const SequenceStrategy& x2);
std::vector<double> min_discrete_weights_p2(const BlottoInstance& inst,
                                            const TwoLevelSeqStrategy& y1);

// One-sided continuous games with u_i = c_i(a1, a2) * sigma_i:
// U = sum_i sum y1(i,a1) c_i(a1,a2) y2(i,a2).
const ParametricMatrix& linear_payoff(const BlottoInstance& inst, int i);
double linear_utility(const BlottoInstance& inst,
                      const TwoLevelSeqStrategy& y1,
                      const TwoLevelSeqStrategy& y2);
std::vector<std::vector<double>> linear_weights(const BlottoInstance& inst,
                                                Player self,
                                                const TwoLevelSeqStrategy& opp);

}  // namespace blotto

#endif  // BLOTTO_FLOW_POLYTOPE_H_
