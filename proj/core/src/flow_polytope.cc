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

#include "blotto/flow_polytope.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace blotto {
namespace {

// Flow values at or below this are treated as zero when decomposing.
constexpr double kZeroFlow = 1e-13;

bool better(double candidate, double incumbent, bool maximize) {
  const double slack = 1e-12 * (1.0 + std::abs(incumbent));
  return maximize ? candidate > incumbent + slack
                  : candidate < incumbent - slack;
}

const DenseTensor& tensor_of(const BlottoInstance& inst, int i) {
  const auto* t = std::get_if<DenseTensor>(&inst.battlefields[i].payoff);
  if (t == nullptr) {
    throw std::invalid_argument("battlefield " + std::to_string(i) +
                                " needs a tensor payoff");
  }
  return *t;
}

void require_discrete_sum(const BlottoInstance& inst) {
  if (!inst.is_discrete() || inst.aggregator != Aggregator::kSum) {
    throw std::invalid_argument(
        "bilinear flow utility needs a discrete sum-aggregated instance");
  }
}

void require_dag_matches(const BlottoInstance& inst, Player player,
                         const SequenceStrategy& s) {
  if (!s.dag) throw std::invalid_argument("strategy has no dag");
  if (s.dag->n() != inst.n || s.dag->m() != inst.discrete_budget(player)) {
    throw std::invalid_argument("strategy dag does not match the instance");
  }
  if (static_cast<int>(s.values.size()) != s.dag->dim()) {
    throw std::invalid_argument("strategy length does not match its dag");
  }
}

}  // namespace

LayeredStrategyDag::LayeredStrategyDag(int n, int m,
                                       std::vector<int> action_counts)
    : n_(n), m_(m), action_counts_(std::move(action_counts)) {
  if (n < 1) throw std::invalid_argument("dag needs n >= 1");
  if (m < 0) throw std::invalid_argument("dag needs m >= 0");
  if (action_counts_.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("one action count per battlefield required");
  }
  for (int a : action_counts_) {
    if (a < 1) throw std::invalid_argument("action counts must be >= 1");
  }
  const std::size_t total = closed_form_dim(n, m, action_counts_);
  const std::size_t lookup = static_cast<std::size_t>(n) * (m + 1) * (m + 1);
  constexpr auto kMax = static_cast<std::size_t>(std::numeric_limits<int>::max());
  if (total > kMax || lookup > kMax) {
    throw std::overflow_error("strategy dag variable count overflows int");
  }

  const int width = m + 1;
  h_lookup_.assign(lookup, -1);
  out_edges_.assign(static_cast<std::size_t>(n) * width, {});
  layer_nodes_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    const int a_lo = i == 0 ? m : 0;
    for (int a = a_lo; a <= m; ++a) {
      const int b_hi = i == n - 1 ? 0 : a;
      for (int b = 0; b <= b_hi; ++b) {
        const int id = static_cast<int>(edges_.size());
        edges_.push_back({i, a, b});
        h_lookup_[(static_cast<std::size_t>(i) * width + a) * width + b] = id;
        out_edges_[static_cast<std::size_t>(i) * width + a].push_back(id);
      }
      layer_nodes_[i].push_back(a);
    }
  }
  int next = static_cast<int>(edges_.size());
  x_offset_.assign(static_cast<std::size_t>(n) * width, 0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= m; ++k) {
      x_offset_[static_cast<std::size_t>(i) * width + k] = next;
      next += action_counts_[i];
    }
  }
  dim_ = next;
}

int LayeredStrategyDag::h_index(int i, int a, int b) const {
  if (i < 0 || i >= n_ || a < 0 || a > m_ || b < 0 || b > m_) return -1;
  const std::size_t width = m_ + 1;
  return h_lookup_[(static_cast<std::size_t>(i) * width + a) * width + b];
}

int LayeredStrategyDag::x_index(int i, int k, int action) const {
  if (i < 0 || i >= n_ || k < 0 || k > m_ || action < 0 ||
      action >= action_counts_[i]) {
    throw std::out_of_range("x variable index out of range");
  }
  return x_offset_[static_cast<std::size_t>(i) * (m_ + 1) + k] + action;
}

std::span<const int> LayeredStrategyDag::out_edges(int i, int a) const {
  if (i < 0 || i >= n_ || a < 0 || a > m_) return {};
  return out_edges_[static_cast<std::size_t>(i) * (m_ + 1) + a];
}

std::size_t LayeredStrategyDag::path_count() const {
  constexpr std::size_t kCap = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> ways(m_ + 1, 0);
  ways[0] = 1;
  for (int i = n_ - 1; i >= 0; --i) {
    std::vector<std::size_t> next(m_ + 1, 0);
    for (int a : nodes(i)) {
      std::size_t total = 0;
      for (int id : out_edges(i, a)) {
        const std::size_t w = i == n_ - 1 ? 1 : ways[edges_[id].to];
        total = (kCap - total < w) ? kCap : total + w;
      }
      next[a] = total;
    }
    ways = std::move(next);
  }
  return ways[m_];
}

DagPtr build_dag(int n, int m, std::vector<int> action_counts) {
  return std::make_shared<const LayeredStrategyDag>(n, m,
                                                    std::move(action_counts));
}

std::size_t closed_form_dim(int n, int m, std::span<const int> action_counts) {
  const std::size_t w = static_cast<std::size_t>(m) + 1;
  std::size_t edges = 1;
  if (n >= 2) {
    edges = 2 * w + static_cast<std::size_t>(n - 2) * w * (w + 1) / 2;
  }
  std::size_t actions = 0;
  for (int a : action_counts) actions += static_cast<std::size_t>(a);
  return edges + w * actions;
}

std::vector<int> action_counts(const BlottoInstance& inst, Player player) {
  std::vector<int> out;
  out.reserve(inst.battlefields.size());
  for (const auto& bf : inst.battlefields) {
    out.push_back(player == Player::kOne ? bf.a1 : bf.a2);
  }
  return out;
}

DagPtr dag_for_player(const BlottoInstance& inst, Player player) {
  if (!inst.is_discrete()) {
    throw std::invalid_argument("flow polytopes describe discrete players");
  }
  return build_dag(inst.n, inst.discrete_budget(player),
                   action_counts(inst, player));
}

double SequenceStrategy::h(int i, int a, int b) const {
  const int id = dag->h_index(i, a, b);
  return id < 0 ? 0.0 : values[id];
}

double SequenceStrategy::x(int i, int k, int action) const {
  return values[dag->x_index(i, k, action)];
}

double SequenceStrategy::mass(int i, int k) const {
  double total = 0.0;
  for (int r = k; r <= dag->m(); ++r) total += h(i, r, r - k);
  return total;
}

double SequenceStrategy::reach(int i, int a) const {
  if (i == 0) return a == dag->m() ? 1.0 : 0.0;
  double total = 0.0;
  for (int from = a; from <= dag->m(); ++from) total += h(i - 1, from, a);
  return total;
}

std::vector<Violation> check_sequence_strategy(const SequenceStrategy& s,
                                               double tolerance) {
  std::vector<Violation> out;
  if (!s.dag) return {{"dag", "missing"}};
  const LayeredStrategyDag& d = *s.dag;
  if (static_cast<int>(s.values.size()) != d.dim()) {
    return {{"values", "length " + std::to_string(s.values.size()) +
                           ", expected " + std::to_string(d.dim())}};
  }
  for (int v = 0; v < d.dim(); ++v) {
    const double x = s.values[v];
    if (!std::isfinite(x) || x < -tolerance || x > 1.0 + tolerance) {
      out.push_back({"values[" + std::to_string(v) + "]",
                     "outside [0, 1]: " + std::to_string(x)});
    }
  }
  const int n = d.n();
  const int m = d.m();
  double source = 0.0;
  for (int id : d.out_edges(0, m)) source += s.values[id];
  if (std::abs(source - 1.0) > tolerance) {
    out.push_back({"source", "outflow " + std::to_string(source)});
  }
  double sink = 0.0;
  for (int a = 0; a <= m; ++a) sink += s.h(n - 1, a, 0);
  if (std::abs(sink - 1.0) > tolerance) {
    out.push_back({"sink", "inflow " + std::to_string(sink)});
  }
  for (int i = 1; i < n; ++i) {
    for (int c = 0; c <= m; ++c) {
      double outflow = 0.0;
      for (int id : d.out_edges(i, c)) outflow += s.values[id];
      const double inflow = s.reach(i, c);
      if (std::abs(inflow - outflow) > tolerance) {
        out.push_back({"node(" + std::to_string(i) + "," + std::to_string(c) +
                           ")",
                       "inflow " + std::to_string(inflow) + " != outflow " +
                           std::to_string(outflow)});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= m; ++k) {
      double split = 0.0;
      for (int a = 0; a < d.action_counts()[i]; ++a) split += s.x(i, k, a);
      const double mass = s.mass(i, k);
      if (std::abs(split - mass) > tolerance) {
        out.push_back({"x(" + std::to_string(i) + "," + std::to_string(k) + ")",
                       "actions sum to " + std::to_string(split) +
                           " but allocation mass is " + std::to_string(mass)});
      }
    }
  }
  return out;
}

SequenceStrategy behavioral_to_sequence(const DagPtr& dag,
                                        const BehavioralProfile& profile) {
  const int n = dag->n();
  const int m = dag->m();
  if (profile.actions.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("need action distributions for every battlefield");
  }
  for (int i = 0; i < n; ++i) {
    if (profile.actions[i].size() != static_cast<std::size_t>(m) + 1) {
      throw std::invalid_argument("battlefield " + std::to_string(i) +
                                  " needs one distribution per soldier count");
    }
    for (const auto& delta : profile.actions[i]) {
      if (delta.size() != static_cast<std::size_t>(dag->action_counts()[i]) ||
          !is_distribution(delta)) {
        throw std::invalid_argument("invalid action distribution on battlefield " +
                                    std::to_string(i));
      }
    }
  }
  std::vector<double> probs;
  for (const auto& [alloc, p] : profile.allocation_mix) {
    if (alloc.size() != static_cast<std::size_t>(n)) {
      throw std::invalid_argument("allocation vector has wrong length");
    }
    long total = 0;
    for (int k : alloc) {
      if (k < 0) throw std::invalid_argument("negative allocation");
      total += k;
    }
    if (total != m) {
      throw std::invalid_argument("allocation does not spend the budget exactly");
    }
    probs.push_back(p);
  }
  if (!is_distribution(probs)) {
    throw std::invalid_argument("allocation probabilities must form a distribution");
  }

  SequenceStrategy s{dag, std::vector<double>(dag->dim(), 0.0)};
  for (const auto& [alloc, p] : profile.allocation_mix) {
    int remaining = m;
    for (int i = 0; i < n; ++i) {
      const int k = alloc[i];
      s.values[dag->h_index(i, remaining, remaining - k)] += p;
      remaining -= k;
      const Distribution& delta = profile.actions[i][k];
      for (int a = 0; a < dag->action_counts()[i]; ++a) {
        s.values[dag->x_index(i, k, a)] += p * delta[a];
      }
    }
  }
  return s;
}

BehavioralProfile sequence_to_behavioral(const SequenceStrategy& s,
                                         std::size_t max_paths) {
  const LayeredStrategyDag& d = *s.dag;
  const int n = d.n();
  const int m = d.m();
  auto clean = [](double v) { return v > kZeroFlow ? v : 0.0; };

  BehavioralProfile out;
  out.actions.resize(n);
  for (int i = 0; i < n; ++i) {
    const int na = d.action_counts()[i];
    out.actions[i].resize(m + 1);
    for (int k = 0; k <= m; ++k) {
      Distribution delta(na);
      double total = 0.0;
      for (int a = 0; a < na; ++a) {
        delta[a] = clean(s.x(i, k, a));
        total += delta[a];
      }
      for (double& v : delta) {
        v = total > 0.0 ? v / total : 1.0 / na;
      }
      out.actions[i][k] = std::move(delta);
    }
  }

  std::vector<int> alloc(n, 0);
  // Depth-first walk; splits at each node are edge flow over node outflow.
  auto recurse = [&](auto&& self, int layer, int node, double prob) -> void {
    if (layer == n) {
      if (out.allocation_mix.size() >= max_paths) {
        throw std::length_error("flow decomposes into more than max_paths paths");
      }
      out.allocation_mix.emplace_back(alloc, prob);
      return;
    }
    const auto edges = d.out_edges(layer, node);
    double outflow = 0.0;
    for (int id : edges) outflow += clean(s.values[id]);
    for (int id : edges) {
      const double split = outflow > 0.0 ? clean(s.values[id]) / outflow
                                         : 1.0 / static_cast<double>(edges.size());
      if (split <= 0.0) continue;
      alloc[layer] = d.edge(id).soldiers();
      self(self, layer + 1, d.edge(id).to, prob * split);
    }
  };
  recurse(recurse, 0, m, 1.0);
  return out;
}

SequenceStrategy uniform_strategy(const DagPtr& dag) {
  const LayeredStrategyDag& d = *dag;
  SequenceStrategy s{dag, std::vector<double>(d.dim(), 0.0)};
  std::vector<double> reach(d.m() + 1, 0.0);
  reach[d.m()] = 1.0;
  for (int i = 0; i < d.n(); ++i) {
    std::vector<double> next(d.m() + 1, 0.0);
    for (int a : d.nodes(i)) {
      const auto edges = d.out_edges(i, a);
      const double share = reach[a] / static_cast<double>(edges.size());
      for (int id : edges) {
        s.values[id] = share;
        next[d.edge(id).to] += share;
      }
    }
    reach = std::move(next);
  }
  for (int i = 0; i < d.n(); ++i) {
    const int na = d.action_counts()[i];
    for (int k = 0; k <= d.m(); ++k) {
      const double mass = s.mass(i, k);
      for (int a = 0; a < na; ++a) s.values[d.x_index(i, k, a)] = mass / na;
    }
  }
  return s;
}

SequenceStrategy vertex_strategy(const DagPtr& dag,
                                 std::span<const int> allocation,
                                 std::span<const int> actions) {
  const int n = dag->n();
  if (allocation.size() != static_cast<std::size_t>(n) ||
      actions.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("vertex needs one allocation and action per battlefield");
  }
  BehavioralProfile p;
  p.allocation_mix.emplace_back(
      std::vector<int>(allocation.begin(), allocation.end()), 1.0);
  p.actions.resize(n);
  for (int i = 0; i < n; ++i) {
    const int na = dag->action_counts()[i];
    if (actions[i] < 0 || actions[i] >= na) {
      throw std::out_of_range("vertex action out of range");
    }
    Distribution pure(na, 0.0);
    pure[actions[i]] = 1.0;
    p.actions[i].assign(dag->m() + 1, pure);
  }
  return behavioral_to_sequence(dag, p);
}

double bilinear_utility(const BlottoInstance& inst, const SequenceStrategy& x1,
                        const SequenceStrategy& x2) {
  require_discrete_sum(inst);
  require_dag_matches(inst, Player::kOne, x1);
  require_dag_matches(inst, Player::kTwo, x2);
  const int m1 = x1.dag->m();
  const int m2 = x2.dag->m();
  double total = 0.0;
  for (int i = 0; i < inst.n; ++i) {
    const DenseTensor& u = tensor_of(inst, i);
    const auto& bf = inst.battlefields[i];
    for (int k1 = 0; k1 <= m1; ++k1) {
      for (int a1 = 0; a1 < bf.a1; ++a1) {
        const double p1 = x1.x(i, k1, a1);
        if (p1 == 0.0) continue;
        double inner = 0.0;
        for (int a2 = 0; a2 < bf.a2; ++a2) {
          for (int k2 = 0; k2 <= m2; ++k2) {
            inner += u.at(a1, a2, k1, k2) * x2.x(i, k2, a2);
          }
        }
        total += p1 * inner;
      }
    }
  }
  return total;
}

std::vector<double> utility_gradient(const BlottoInstance& inst, Player self,
                                     const SequenceStrategy& opponent) {
  require_discrete_sum(inst);
  const Player other = self == Player::kOne ? Player::kTwo : Player::kOne;
  require_dag_matches(inst, other, opponent);
  const int m_self = inst.discrete_budget(self);
  const int m_opp = opponent.dag->m();
  const std::vector<int> counts = action_counts(inst, self);
  const std::size_t width = m_self + 1;
  std::size_t num_h = closed_form_dim(inst.n, m_self, std::vector<int>(inst.n, 0));
  std::size_t dim = closed_form_dim(inst.n, m_self, counts);
  std::vector<double> g(dim, 0.0);
  std::size_t pos = num_h;
  for (int i = 0; i < inst.n; ++i) {
    const DenseTensor& u = tensor_of(inst, i);
    const auto& bf = inst.battlefields[i];
    const int na_self = counts[i];
    for (std::size_t k = 0; k < width; ++k) {
      for (int a = 0; a < na_self; ++a, ++pos) {
        double v = 0.0;
        if (self == Player::kOne) {
          for (int a2 = 0; a2 < bf.a2; ++a2) {
            for (int k2 = 0; k2 <= m_opp; ++k2) {
              v += u.at(a, a2, static_cast<int>(k), k2) * opponent.x(i, k2, a2);
            }
          }
        } else {
          for (int a1 = 0; a1 < bf.a1; ++a1) {
            for (int k1 = 0; k1 <= m_opp; ++k1) {
              v += u.at(a1, a, k1, static_cast<int>(k)) * opponent.x(i, k1, a1);
            }
          }
        }
        g[pos] = v;
      }
    }
  }
  return g;
}

FlowBestResponse best_response_linear(const DagPtr& dag,
                                      std::span<const double> weights,
                                      bool maximize) {
  const LayeredStrategyDag& d = *dag;
  if (static_cast<int>(weights.size()) != d.dim()) {
    throw std::invalid_argument("weight vector length does not match dag");
  }
  const int n = d.n();
  const int m = d.m();
  const int width = m + 1;
  // Best action and its weight for every (battlefield, soldier count).
  std::vector<int> best_action(static_cast<std::size_t>(n) * width, 0);
  std::vector<double> best_q(static_cast<std::size_t>(n) * width, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= m; ++k) {
      double q = weights[d.x_index(i, k, 0)];
      int arg = 0;
      for (int a = 1; a < d.action_counts()[i]; ++a) {
        const double w = weights[d.x_index(i, k, a)];
        if (better(w, q, maximize)) {
          q = w;
          arg = a;
        }
      }
      best_q[static_cast<std::size_t>(i) * width + k] = q;
      best_action[static_cast<std::size_t>(i) * width + k] = arg;
    }
  }
  // value[i][a]: optimum from node a of layer i to the sink.
  std::vector<std::vector<double>> value(n + 1, std::vector<double>(width, 0.0));
  std::vector<std::vector<int>> choice(n, std::vector<int>(width, -1));
  for (int i = n - 1; i >= 0; --i) {
    for (int a : d.nodes(i)) {
      const auto edges = d.out_edges(i, a);
      // Edges are ordered by increasing b; scan from the fewest soldiers
      // assigned so ties keep the smaller assignment.
      double best = 0.0;
      int arg = -1;
      for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
        const FlowEdge& e = d.edge(*it);
        const double v =
            best_q[static_cast<std::size_t>(i) * width + e.soldiers()] +
            value[i + 1][e.to];
        if (arg < 0 || better(v, best, maximize)) {
          best = v;
          arg = *it;
        }
      }
      value[i][a] = best;
      choice[i][a] = arg;
    }
  }
  std::vector<int> allocation(n);
  std::vector<int> actions(n);
  int node = m;
  for (int i = 0; i < n; ++i) {
    const FlowEdge& e = d.edge(choice[i][node]);
    allocation[i] = e.soldiers();
    actions[i] = best_action[static_cast<std::size_t>(i) * width + e.soldiers()];
    node = e.to;
  }
  return {vertex_strategy(dag, allocation, actions), value[0][m]};
}

FlowBestResponse best_response(const BlottoInstance& inst, Player side,
                               const SequenceStrategy& opponent) {
  const std::vector<double> g = utility_gradient(inst, side, opponent);
  return best_response_linear(dag_for_player(inst, side), g,
                              side == Player::kTwo);
}

std::vector<Violation> check_two_level(const TwoLevelSeqStrategy& y,
                                       double tolerance) {
  std::vector<Violation> out;
  if (y.battlefield.size() != y.action.size()) {
    return {{"battlefield", "length does not match action blocks"}};
  }
  const double n = static_cast<double>(y.battlefield.size());
  if (y.kind == SeqPolytope::kP && std::abs(y.root - 1.0) > tolerance) {
    out.push_back({"root", "P polytope root must be 1"});
  }
  if (y.kind == SeqPolytope::kSimplexProduct && std::abs(y.root - n) > tolerance) {
    out.push_back({"root", "simplex product root must equal battlefield count"});
  }
  double total = 0.0;
  for (std::size_t i = 0; i < y.battlefield.size(); ++i) {
    const std::string path = "y(" + std::to_string(i) + ")";
    const double yi = y.battlefield[i];
    total += yi;
    if (!std::isfinite(yi) || yi < -tolerance) out.push_back({path, "negative"});
    if (y.kind == SeqPolytope::kSimplexProduct && std::abs(yi - 1.0) > tolerance) {
      out.push_back({path, "must be 1 in a simplex product"});
    }
    double split = 0.0;
    for (double v : y.action[i]) {
      if (!std::isfinite(v) || v < -tolerance) {
        out.push_back({path, "negative action weight"});
      }
      split += v;
    }
    if (std::abs(split - yi) > tolerance * std::max(1.0, y.root)) {
      out.push_back({path, "action weights sum to " + std::to_string(split)});
    }
  }
  if (std::abs(total - y.root) > tolerance * std::max(1.0, y.root)) {
    out.push_back({"root", "battlefield weights sum to " + std::to_string(total)});
  }
  return out;
}

TwoLevelSeqStrategy make_two_level(SeqPolytope kind, double root,
                                   std::span<const double> weights,
                                   const std::vector<Distribution>& deltas) {
  if (weights.size() != deltas.size()) {
    throw std::invalid_argument("one weight per battlefield required");
  }
  TwoLevelSeqStrategy y{kind, root, {weights.begin(), weights.end()}, {}};
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!is_distribution(deltas[i])) {
      throw std::invalid_argument("invalid action distribution");
    }
    std::vector<double> row(deltas[i].size());
    for (std::size_t a = 0; a < row.size(); ++a) row[a] = weights[i] * deltas[i][a];
    y.action.push_back(std::move(row));
  }
  return y;
}

TwoLevelSeqStrategy uniform_two_level(SeqPolytope kind, double root,
                                      std::span<const int> action_counts) {
  const std::size_t n = action_counts.size();
  std::vector<double> weights(n, kind == SeqPolytope::kSimplexProduct
                                     ? 1.0
                                     : root / static_cast<double>(n));
  std::vector<Distribution> deltas;
  for (int a : action_counts) deltas.emplace_back(a, 1.0 / a);
  return make_two_level(kind, root, weights, deltas);
}

std::vector<Distribution> two_level_actions(const TwoLevelSeqStrategy& y) {
  std::vector<Distribution> out;
  for (std::size_t i = 0; i < y.action.size(); ++i) {
    const auto& row = y.action[i];
    Distribution delta(row.size());
    double total = 0.0;
    for (std::size_t a = 0; a < row.size(); ++a) {
      delta[a] = row[a] > kZeroFlow ? row[a] : 0.0;
      total += delta[a];
    }
    for (double& v : delta) {
      v = total > 0.0 ? v / total : 1.0 / static_cast<double>(row.size());
    }
    out.push_back(std::move(delta));
  }
  return out;
}

TwoLevelBestResponse best_response_two_level(
    SeqPolytope kind, double root, const std::vector<std::vector<double>>& w,
    bool maximize) {
  TwoLevelBestResponse br;
  br.strategy.kind = kind;
  br.strategy.root = root;
  br.strategy.battlefield.assign(w.size(), 0.0);
  for (const auto& row : w) br.strategy.action.emplace_back(row.size(), 0.0);
  if (kind == SeqPolytope::kSimplexProduct) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::size_t arg = 0;
      for (std::size_t a = 1; a < w[i].size(); ++a) {
        if (better(w[i][a], w[i][arg], maximize)) arg = a;
      }
      br.strategy.battlefield[i] = 1.0;
      br.strategy.action[i][arg] = 1.0;
      br.value += w[i][arg];
    }
    return br;
  }
  std::size_t bi = 0;
  std::size_t ba = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t a = 0; a < w[i].size(); ++a) {
      if (better(w[i][a], w[bi][ba], maximize)) {
        bi = i;
        ba = a;
      }
    }
  }
  br.strategy.battlefield[bi] = root;
  br.strategy.action[bi][ba] = root;
  br.value = root * w[bi][ba];
  return br;
}

namespace {

void require_one_sided_discrete_min(const BlottoInstance& inst) {
  if (!inst.is_discrete() || !inst.is_one_sided() ||
      inst.aggregator != Aggregator::kMin) {
    throw std::invalid_argument(
        "needs a discrete one-sided min-aggregated instance");
  }
}

}  // namespace

double min_discrete_utility(const BlottoInstance& inst,
                            const TwoLevelSeqStrategy& y1,
                            const SequenceStrategy& x2) {
  const auto w = min_discrete_weights_p1(inst, x2);
  if (y1.action.size() != w.size()) {
    throw std::invalid_argument("strategy does not match instance");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t a = 0; a < w[i].size(); ++a) total += y1.action[i][a] * w[i][a];
  }
  return total;
}

std::vector<std::vector<double>> min_discrete_weights_p1(
    const BlottoInstance& inst, const SequenceStrategy& x2) {
  require_one_sided_discrete_min(inst);
  require_dag_matches(inst, Player::kTwo, x2);
  std::vector<std::vector<double>> w(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    const DenseTensor& u = tensor_of(inst, i);
    const auto& bf = inst.battlefields[i];
    w[i].assign(bf.a1, 0.0);
    for (int a1 = 0; a1 < bf.a1; ++a1) {
      for (int a2 = 0; a2 < bf.a2; ++a2) {
        for (int k2 = 0; k2 <= x2.dag->m(); ++k2) {
          w[i][a1] += u.at(a1, a2, 0, k2) * x2.x(i, k2, a2);
        }
      }
    }
  }
  return w;
}

std::vector<double> min_discrete_weights_p2(const BlottoInstance& inst,
                                            const TwoLevelSeqStrategy& y1) {
  require_one_sided_discrete_min(inst);
  if (y1.action.size() != static_cast<std::size_t>(inst.n)) {
    throw std::invalid_argument("strategy does not match instance");
  }
  const DagPtr dag = dag_for_player(inst, Player::kTwo);
  std::vector<double> g(dag->dim(), 0.0);
  for (int i = 0; i < inst.n; ++i) {
    const DenseTensor& u = tensor_of(inst, i);
    const auto& bf = inst.battlefields[i];
    for (int k2 = 0; k2 <= dag->m(); ++k2) {
      for (int a2 = 0; a2 < bf.a2; ++a2) {
        double v = 0.0;
        for (int a1 = 0; a1 < bf.a1; ++a1) v += y1.action[i][a1] * u.at(a1, a2, 0, k2);
        g[dag->x_index(i, k2, a2)] = v;
      }
    }
  }
  return g;
}

const ParametricMatrix& linear_payoff(const BlottoInstance& inst, int i) {
  if (inst.is_discrete() || !inst.is_one_sided()) {
    throw std::invalid_argument(
        "linear sequence forms need a continuous one-sided instance");
  }
  const auto* p = std::get_if<ParametricMatrix>(&inst.battlefields[i].payoff);
  bool linear = p != nullptr && p->kind == ParametricKind::kAffine;
  if (linear) {
    linear = std::all_of(p->constant.begin(), p->constant.end(),
                         [](double d) { return d == 0.0; });
  }
  if (!linear) {
    throw std::invalid_argument(
        "battlefield " + std::to_string(i) +
        " is not linear in the allocation (needs affine payoffs with d = 0); "
        "solve general increasing payoffs with subgradient ascent instead");
  }
  return *p;
}

double linear_utility(const BlottoInstance& inst,
                      const TwoLevelSeqStrategy& y1,
                      const TwoLevelSeqStrategy& y2) {
  const auto w = linear_weights(inst, Player::kOne, y2);
  if (y1.action.size() != w.size()) {
    throw std::invalid_argument("strategy does not match instance");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t a = 0; a < w[i].size(); ++a) total += y1.action[i][a] * w[i][a];
  }
  return total;
}

std::vector<std::vector<double>> linear_weights(const BlottoInstance& inst,
                                                Player self,
                                                const TwoLevelSeqStrategy& opp) {
  if (opp.action.size() != static_cast<std::size_t>(inst.n)) {
    throw std::invalid_argument("strategy does not match instance");
  }
  std::vector<std::vector<double>> w(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    const ParametricMatrix& c = linear_payoff(inst, i);
    if (self == Player::kOne) {
      w[i].assign(c.rows, 0.0);
      for (int a1 = 0; a1 < c.rows; ++a1) {
        for (int a2 = 0; a2 < c.cols; ++a2) {
          w[i][a1] += c.lin[c.index(a1, a2)] * opp.action[i][a2];
        }
      }
    } else {
      w[i].assign(c.cols, 0.0);
      for (int a1 = 0; a1 < c.rows; ++a1) {
        for (int a2 = 0; a2 < c.cols; ++a2) {
          w[i][a2] += opp.action[i][a1] * c.lin[c.index(a1, a2)];
        }
      }
    }
  }
  return w;
}

}  // namespace blotto
