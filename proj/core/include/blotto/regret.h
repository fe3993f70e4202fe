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

#ifndef BLOTTO_REGRET_H_
#define BLOTTO_REGRET_H_

// Regret-matching self-play on the flow polytope. Every decision node of the
// layered graph (how many soldiers to leave for the remaining battlefields)
// and every (battlefield, soldier count) action choice owns a local regret
// minimizer; the global strategy is their composition scaled by reach.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "blotto/flow_polytope.h"
#include "blotto/lp_builders.h"
#include "blotto/model.h"

namespace blotto {

enum class RegretAlgorithm { kRM, kRMPlus, kPRM, kPRMPlus };
enum class UpdateMode { kSimultaneous, kAlternating };
enum class Averaging { kUniform, kQuadratic };

std::string to_string(RegretAlgorithm algorithm);
std::string to_string(UpdateMode mode);
std::string to_string(Averaging averaging);
// Throw std::invalid_argument on unknown names.
RegretAlgorithm parse_regret_algorithm(const std::string& name);
UpdateMode parse_update_mode(const std::string& name);
Averaging parse_averaging(const std::string& name);

// Regret matching over one simplex. Utilities are gains.
class LocalLearner {
 public:
  LocalLearner(int num_actions, RegretAlgorithm algorithm);

  // Proportional to the positive part of the cumulative regrets (plus the
  // last instantaneous regret for the predictive variants); uniform when
  // nothing is positive.
  Distribution recommend() const;
  // Throws std::invalid_argument on a length mismatch.
  void observe(std::span<const double> utility);

  int size() const { return static_cast<int>(regrets_.size()); }
  RegretAlgorithm algorithm() const { return algorithm_; }
  const std::vector<double>& regrets() const { return regrets_; }

 private:
  RegretAlgorithm algorithm_;
  std::vector<double> regrets_;
  std::vector<double> prediction_;
};

// Composition of local learners over a layered strategy graph.
class DagLearner {
 public:
  DagLearner(DagPtr dag, RegretAlgorithm algorithm);

  const DagPtr& dag() const { return dag_; }

  // Top-down: each node splits its reach by its learner's distribution.
  SequenceStrategy recommend() const;

  // `utility` holds one gain per dag variable (edge entries are ignored).
  // Bottom-up: the (i, k) learners see the action gains; node learners see,
  // per outgoing edge a -> b, Q(i, a - b) + V(i + 1, b), where
  // Q(i, k) = sum_action delta_{i,k}(action) * utility[i, k, action] and
  // V(i, a) = sum_b pi_{i,a}(b) * (Q(i, a - b) + V(i + 1, b)), V(n, 0) = 0.
  void observe(std::span<const double> utility);

  const LocalLearner& node_learner(int i, int a) const;
  const LocalLearner& action_learner(int i, int k) const;

 private:
  DagPtr dag_;
  std::vector<std::vector<LocalLearner>> node_learners_;  // [i][a]
  std::vector<std::vector<LocalLearner>> action_learners_;  // [i][k]
};

struct LearnConfig {
  UpdateMode update_mode = UpdateMode::kSimultaneous;
  Averaging averaging = Averaging::kUniform;
  RegretAlgorithm algorithm = RegretAlgorithm::kRMPlus;
  int gap_check_every = 100;
  double gap_threshold = 0.002;
  int max_iters = 100000;
  // Recorded for provenance; the learners are deterministic.
  std::uint64_t seed = 0;
};

// Throws std::invalid_argument on nonpositive threshold or cadence.
void check_learn_config(const LearnConfig& config);

struct LearnRecord {
  int iteration = 0;
  double time_s = 0.0;
  double gap = 0.0;
  double value = 0.0;
};

struct LearnTrace {
  std::vector<LearnRecord> records;
  bool converged = false;
  int iterations = 0;
};

// "iteration,time_s,gap,value" with one line per record.
std::string trace_to_csv(const LearnTrace& trace);

// max_{x2'} U(x1, x2') - min_{x1'} U(x1', x2) for every setting with an LP
// formulation. Both strategies must match lp_setting_for(inst).
double saddle_point_gap(const BlottoInstance& inst, const SeqForm& x1,
                        const SeqForm& x2);
double saddle_point_gap(const BlottoInstance& inst, const SequenceStrategy& x1,
                        const SequenceStrategy& x2);
// Expected utility U(x1, x2) for the same settings.
double profile_value(const BlottoInstance& inst, const SeqForm& x1,
                     const SeqForm& x2);

// Self-play state for discrete sum-aggregated games (Player 1 of a one-sided
// game plays on the budget-0 graph).
class SelfPlaySession {
 public:
  SelfPlaySession(const BlottoInstance& inst, const LearnConfig& config);

  // One iteration. Simultaneous: both learners observe against the other's
  // current recommendation. Alternating: Player 2 observes first, then
  // Player 1 observes against Player 2's updated recommendation.
  void step();

  int iteration() const { return t_; }
  SequenceStrategy average(Player player) const;
  SequenceStrategy current(Player player) const;
  double average_gap() const;
  double average_value() const;

  // Regret of `player` after t iterations against the best fixed strategy in
  // hindsight, measured on the utilities it actually observed.
  double cumulative_regret(Player player) const;

 private:
  BlottoInstance inst_;
  LearnConfig config_;
  DagLearner learner1_;
  DagLearner learner2_;
  std::vector<double> avg1_;
  std::vector<double> avg2_;
  double weight_sum_ = 0.0;
  // Sum of observed gain vectors and of realized gains, per player.
  std::vector<double> grad_sum1_;
  std::vector<double> grad_sum2_;
  double realized1_ = 0.0;
  double realized2_ = 0.0;
  int t_ = 0;
};

struct SelfPlayResult {
  SequenceStrategy average1;
  SequenceStrategy average2;
  LearnTrace trace;
  double value = 0.0;
  double gap = 0.0;
};

// Runs until the average profile's gap is at most the threshold (checked
// every gap_check_every iterations) or max_iters is reached.
SelfPlayResult self_play(const BlottoInstance& inst, const LearnConfig& config);

}  // namespace blotto

#endif  // BLOTTO_REGRET_H_
