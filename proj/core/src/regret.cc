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

#include "blotto/regret.h"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <variant>

namespace blotto {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

bool plus_variant(RegretAlgorithm a) {
  return a == RegretAlgorithm::kRMPlus || a == RegretAlgorithm::kPRMPlus;
}

bool predictive(RegretAlgorithm a) {
  return a == RegretAlgorithm::kPRM || a == RegretAlgorithm::kPRMPlus;
}

void require_learnable(const BlottoInstance& inst) {
  require_valid(inst);
  if (!inst.is_discrete() || inst.aggregator != Aggregator::kSum) {
    throw std::invalid_argument(
        "self-play needs a discrete sum-aggregated instance; min-aggregated "
        "games are solved through their LP");
  }
}

}  // namespace

std::string to_string(RegretAlgorithm algorithm) {
  switch (algorithm) {
    case RegretAlgorithm::kRM:
      return "rm";
    case RegretAlgorithm::kRMPlus:
      return "rm+";
    case RegretAlgorithm::kPRM:
      return "prm";
    case RegretAlgorithm::kPRMPlus:
      return "prm+";
  }
  return "unknown";
}

std::string to_string(UpdateMode mode) {
  return mode == UpdateMode::kSimultaneous ? "simultaneous" : "alternating";
}

std::string to_string(Averaging averaging) {
  return averaging == Averaging::kUniform ? "uniform" : "quadratic";
}

RegretAlgorithm parse_regret_algorithm(const std::string& name) {
  for (auto a : {RegretAlgorithm::kRM, RegretAlgorithm::kRMPlus,
                 RegretAlgorithm::kPRM, RegretAlgorithm::kPRMPlus}) {
    if (to_string(a) == name) return a;
  }
  throw std::invalid_argument("unknown regret algorithm '" + name +
                              "' (expected rm, rm+, prm or prm+)");
}

UpdateMode parse_update_mode(const std::string& name) {
  if (name == "simultaneous") return UpdateMode::kSimultaneous;
  if (name == "alternating") return UpdateMode::kAlternating;
  throw std::invalid_argument("unknown update mode '" + name + "'");
}

Averaging parse_averaging(const std::string& name) {
  if (name == "uniform") return Averaging::kUniform;
  if (name == "quadratic") return Averaging::kQuadratic;
  throw std::invalid_argument("unknown averaging '" + name + "'");
}

LocalLearner::LocalLearner(int num_actions, RegretAlgorithm algorithm)
    : algorithm_(algorithm) {
  if (num_actions < 1) {
    throw std::invalid_argument("a local learner needs at least one action");
  }
  regrets_.assign(num_actions, 0.0);
  prediction_.assign(num_actions, 0.0);
}

Distribution LocalLearner::recommend() const {
  const std::size_t n = regrets_.size();
  Distribution p(n, 0.0);
  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    double r = regrets_[a];
    if (predictive(algorithm_)) r += prediction_[a];
    p[a] = std::max(r, 0.0);
    total += p[a];
  }
  if (total <= 0.0) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(n));
    return p;
  }
  for (double& v : p) v /= total;
  return p;
}

void LocalLearner::observe(std::span<const double> utility) {
  if (utility.size() != regrets_.size()) {
    throw std::invalid_argument("utility vector has " +
                                std::to_string(utility.size()) +
                                " entries, learner has " +
                                std::to_string(regrets_.size()));
  }
  const Distribution p = recommend();
  const double expected = dot(p, utility);
  for (std::size_t a = 0; a < regrets_.size(); ++a) {
    const double r = utility[a] - expected;
    regrets_[a] += r;
    if (plus_variant(algorithm_)) regrets_[a] = std::max(regrets_[a], 0.0);
    prediction_[a] = r;
  }
}

DagLearner::DagLearner(DagPtr dag, RegretAlgorithm algorithm)
    : dag_(std::move(dag)) {
  if (!dag_) throw std::invalid_argument("learner needs a dag");
  const int n = dag_->n();
  const int m = dag_->m();
  node_learners_.resize(n);
  action_learners_.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a <= m; ++a) {
      const int out = static_cast<int>(dag_->out_edges(i, a).size());
      node_learners_[i].emplace_back(std::max(out, 1), algorithm);
    }
    for (int k = 0; k <= m; ++k) {
      action_learners_[i].emplace_back(dag_->action_counts()[i], algorithm);
    }
  }
}

const LocalLearner& DagLearner::node_learner(int i, int a) const {
  return node_learners_.at(i).at(a);
}

const LocalLearner& DagLearner::action_learner(int i, int k) const {
  return action_learners_.at(i).at(k);
}

SequenceStrategy DagLearner::recommend() const {
  const LayeredStrategyDag& d = *dag_;
  const int m = d.m();
  SequenceStrategy s{dag_, std::vector<double>(d.dim(), 0.0)};
  std::vector<double> reach(m + 1, 0.0);
  std::vector<double> next(m + 1, 0.0);
  std::vector<double> mass(m + 1, 0.0);
  reach[m] = 1.0;
  for (int i = 0; i < d.n(); ++i) {
    std::fill(next.begin(), next.end(), 0.0);
    std::fill(mass.begin(), mass.end(), 0.0);
    for (int a : d.nodes(i)) {
      if (reach[a] <= 0.0) continue;
      const Distribution pi = node_learners_[i][a].recommend();
      const auto edges = d.out_edges(i, a);
      for (std::size_t j = 0; j < edges.size(); ++j) {
        const FlowEdge& e = d.edge(edges[j]);
        const double h = reach[a] * pi[j];
        s.values[edges[j]] = h;
        next[e.to] += h;
        mass[e.soldiers()] += h;
      }
    }
    for (int k = 0; k <= m; ++k) {
      if (mass[k] <= 0.0) continue;
      const Distribution delta = action_learners_[i][k].recommend();
      for (std::size_t a = 0; a < delta.size(); ++a) {
        s.values[d.x_index(i, k, static_cast<int>(a))] = mass[k] * delta[a];
      }
    }
    std::swap(reach, next);
  }
  return s;
}

void DagLearner::observe(std::span<const double> utility) {
  const LayeredStrategyDag& d = *dag_;
  if (static_cast<int>(utility.size()) != d.dim()) {
    throw std::invalid_argument("utility vector length does not match dag");
  }
  const int m = d.m();
  std::vector<double> v_next(m + 1, 0.0);
  std::vector<double> v_cur(m + 1, 0.0);
  std::vector<double> q(m + 1, 0.0);
  std::vector<double> edge_util;
  for (int i = d.n() - 1; i >= 0; --i) {
    const int na = d.action_counts()[i];
    for (int k = 0; k <= m; ++k) {
      const auto slice = utility.subspan(d.x_index(i, k, 0), na);
      q[k] = dot(action_learners_[i][k].recommend(), slice);
      action_learners_[i][k].observe(slice);
    }
    std::fill(v_cur.begin(), v_cur.end(), 0.0);
    for (int a : d.nodes(i)) {
      const auto edges = d.out_edges(i, a);
      edge_util.resize(edges.size());
      for (std::size_t j = 0; j < edges.size(); ++j) {
        const FlowEdge& e = d.edge(edges[j]);
        edge_util[j] = q[e.soldiers()] + v_next[e.to];
      }
      LocalLearner& learner = node_learners_[i][a];
      v_cur[a] = dot(learner.recommend(), edge_util);
      learner.observe(edge_util);
    }
    std::swap(v_next, v_cur);
  }
}

void check_learn_config(const LearnConfig& config) {
  if (!(config.gap_threshold > 0.0)) {
    throw std::invalid_argument("gap threshold must be positive");
  }
  if (config.gap_check_every < 1) {
    throw std::invalid_argument("gap check cadence must be at least 1");
  }
  if (config.max_iters < 0) {
    throw std::invalid_argument("max_iters must be nonnegative");
  }
}

std::string trace_to_csv(const LearnTrace& trace) {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,time_s,gap,value\n";
  for (const auto& r : trace.records) {
    out << r.iteration << ',' << r.time_s << ',' << r.gap << ',' << r.value
        << '\n';
  }
  return out.str();
}

double saddle_point_gap(const BlottoInstance& inst, const SeqForm& x1,
                        const SeqForm& x2) {
  switch (lp_setting_for(inst)) {
    case LpSetting::kTwoSidedSum: {
      const auto& s1 = std::get<SequenceStrategy>(x1);
      const auto& s2 = std::get<SequenceStrategy>(x2);
      return best_response(inst, Player::kTwo, s1).value -
             best_response(inst, Player::kOne, s2).value;
    }
    case LpSetting::kOneSidedMinDiscrete: {
      const auto& y1 = std::get<TwoLevelSeqStrategy>(x1);
      const auto& s2 = std::get<SequenceStrategy>(x2);
      const auto w2 = min_discrete_weights_p2(inst, y1);
      const double br2 =
          best_response_linear(dag_for_player(inst, Player::kTwo), w2, true).value;
      const double br1 = best_response_two_level(
          SeqPolytope::kP, 1.0, min_discrete_weights_p1(inst, s2), false).value;
      return br2 - br1;
    }
    case LpSetting::kOneSidedSumLinear:
    case LpSetting::kOneSidedMinLinear: {
      const auto& y1 = std::get<TwoLevelSeqStrategy>(x1);
      const auto& y2 = std::get<TwoLevelSeqStrategy>(x2);
      const double br2 =
          best_response_two_level(SeqPolytope::kQ, inst.m2,
                                  linear_weights(inst, Player::kTwo, y1), true)
              .value;
      const SeqPolytope p1 = inst.aggregator == Aggregator::kSum
                                 ? SeqPolytope::kSimplexProduct
                                 : SeqPolytope::kP;
      const double br1 = best_response_two_level(
          p1, 1.0, linear_weights(inst, Player::kOne, y2), false).value;
      return br2 - br1;
    }
  }
  throw std::logic_error("unreachable");
}

double saddle_point_gap(const BlottoInstance& inst, const SequenceStrategy& x1,
                        const SequenceStrategy& x2) {
  return saddle_point_gap(inst, SeqForm(x1), SeqForm(x2));
}

double profile_value(const BlottoInstance& inst, const SeqForm& x1,
                     const SeqForm& x2) {
  switch (lp_setting_for(inst)) {
    case LpSetting::kTwoSidedSum:
      return bilinear_utility(inst, std::get<SequenceStrategy>(x1),
                              std::get<SequenceStrategy>(x2));
    case LpSetting::kOneSidedMinDiscrete:
      return min_discrete_utility(inst, std::get<TwoLevelSeqStrategy>(x1),
                                  std::get<SequenceStrategy>(x2));
    case LpSetting::kOneSidedSumLinear:
    case LpSetting::kOneSidedMinLinear:
      return linear_utility(inst, std::get<TwoLevelSeqStrategy>(x1),
                            std::get<TwoLevelSeqStrategy>(x2));
  }
  throw std::logic_error("unreachable");
}

SelfPlaySession::SelfPlaySession(const BlottoInstance& inst,
                                 const LearnConfig& config)
    : inst_((require_learnable(inst), inst)),
      config_(config),
      learner1_(dag_for_player(inst, Player::kOne), config.algorithm),
      learner2_(dag_for_player(inst, Player::kTwo), config.algorithm) {
  check_learn_config(config);
  avg1_.assign(learner1_.dag()->dim(), 0.0);
  avg2_.assign(learner2_.dag()->dim(), 0.0);
  grad_sum1_.assign(avg1_.size(), 0.0);
  grad_sum2_.assign(avg2_.size(), 0.0);
}

void SelfPlaySession::step() {
  ++t_;
  const SequenceStrategy x1 = learner1_.recommend();
  const SequenceStrategy x2 = learner2_.recommend();

  const std::vector<double> g2 = utility_gradient(inst_, Player::kTwo, x1);
  std::vector<double> g1;
  if (config_.update_mode == UpdateMode::kSimultaneous) {
    g1 = utility_gradient(inst_, Player::kOne, x2);
    learner2_.observe(g2);
  } else {
    learner2_.observe(g2);
    g1 = utility_gradient(inst_, Player::kOne, learner2_.recommend());
  }
  for (double& v : g1) v = -v;  // Player 1's gain
  learner1_.observe(g1);

  realized1_ += dot(g1, x1.values);
  realized2_ += dot(g2, x2.values);
  for (std::size_t j = 0; j < g1.size(); ++j) grad_sum1_[j] += g1[j];
  for (std::size_t j = 0; j < g2.size(); ++j) grad_sum2_[j] += g2[j];

  const double w = config_.averaging == Averaging::kUniform
                       ? 1.0
                       : static_cast<double>(t_) * static_cast<double>(t_);
  weight_sum_ += w;
  const double keep = (weight_sum_ - w) / weight_sum_;
  const double add = w / weight_sum_;
  for (std::size_t j = 0; j < avg1_.size(); ++j) {
    avg1_[j] = keep * avg1_[j] + add * x1.values[j];
  }
  for (std::size_t j = 0; j < avg2_.size(); ++j) {
    avg2_[j] = keep * avg2_[j] + add * x2.values[j];
  }
}

SequenceStrategy SelfPlaySession::average(Player player) const {
  if (t_ == 0) return current(player);
  return player == Player::kOne ? SequenceStrategy{learner1_.dag(), avg1_}
                                : SequenceStrategy{learner2_.dag(), avg2_};
}

SequenceStrategy SelfPlaySession::current(Player player) const {
  return player == Player::kOne ? learner1_.recommend() : learner2_.recommend();
}

double SelfPlaySession::average_gap() const {
  return saddle_point_gap(inst_, average(Player::kOne), average(Player::kTwo));
}

double SelfPlaySession::average_value() const {
  return bilinear_utility(inst_, average(Player::kOne), average(Player::kTwo));
}

double SelfPlaySession::cumulative_regret(Player player) const {
  if (player == Player::kOne) {
    return best_response_linear(learner1_.dag(), grad_sum1_, true).value -
           realized1_;
  }
  return best_response_linear(learner2_.dag(), grad_sum2_, true).value -
         realized2_;
}

SelfPlayResult self_play(const BlottoInstance& inst, const LearnConfig& config) {
  SelfPlaySession session(inst, config);
  SelfPlayResult result;
  const auto start = std::chrono::steady_clock::now();
  double gap = session.average_gap();
  while (session.iteration() < config.max_iters) {
    session.step();
    const int t = session.iteration();
    if (t % config.gap_check_every != 0 && t != config.max_iters) continue;
    gap = session.average_gap();
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    result.trace.records.push_back({t, elapsed, gap, session.average_value()});
    if (gap <= config.gap_threshold) {
      result.trace.converged = true;
      break;
    }
  }
  result.trace.iterations = session.iteration();
  result.average1 = session.average(Player::kOne);
  result.average2 = session.average(Player::kTwo);
  result.value = session.average_value();
  result.gap = gap;
  return result;
}

}  // namespace blotto
