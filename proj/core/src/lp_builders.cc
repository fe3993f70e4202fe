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

#include "blotto/lp_builders.h"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace blotto {
namespace {

// Shadow prices below this are read as zero probability.
constexpr double kPriceZero = 1e-12;

std::string cat(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += '_';
    out += p;
  }
  return out;
}

std::string str(int v) { return std::to_string(v); }

// Strategy space of one player inside an LP.
struct Space {
  Player player = Player::kOne;
  std::string tag;  // "1" or "2"
  bool flow = false;
  DagPtr dag;
  SeqPolytope kind = SeqPolytope::kP;
  double root = 1.0;
  std::vector<int> actions;
  int n = 0;
  int max_k = 0;  // soldier counts per battlefield are 0..max_k
  std::vector<int> slot_offset;

  int slot(int i, int k, int a) const {
    return slot_offset[i] + k * actions[i] + a;
  }
  int num_slots() const { return slot_offset.back(); }
};

Space make_space(const BlottoInstance& inst, LpSetting setting, Player p) {
  Space s;
  s.player = p;
  s.tag = p == Player::kOne ? "1" : "2";
  s.n = inst.n;
  s.actions = action_counts(inst, p);
  switch (setting) {
    case LpSetting::kTwoSidedSum:
      s.flow = true;
      break;
    case LpSetting::kOneSidedMinDiscrete:
      s.flow = p == Player::kTwo;
      s.kind = SeqPolytope::kP;
      break;
    case LpSetting::kOneSidedSumLinear:
      s.kind = p == Player::kOne ? SeqPolytope::kSimplexProduct
                                 : SeqPolytope::kQ;
      break;
    case LpSetting::kOneSidedMinLinear:
      s.kind = p == Player::kOne ? SeqPolytope::kP : SeqPolytope::kQ;
      break;
  }
  if (s.flow) {
    s.dag = dag_for_player(inst, p);
    s.max_k = s.dag->m();
  } else {
    s.root = s.kind == SeqPolytope::kQ ? inst.m2 : 1.0;
  }
  s.slot_offset.assign(s.n + 1, 0);
  for (int i = 0; i < s.n; ++i) {
    s.slot_offset[i + 1] = s.slot_offset[i] + (s.max_k + 1) * s.actions[i];
  }
  return s;
}

// Coefficient of the pair (slot of Player 1, slot of Player 2) in the
// bilinear utility.
double coupling(const BlottoInstance& inst, LpSetting setting, int i, int a1,
                int a2, int k1, int k2) {
  if (setting == LpSetting::kOneSidedSumLinear ||
      setting == LpSetting::kOneSidedMinLinear) {
    const ParametricMatrix& c = linear_payoff(inst, i);
    return c.lin[c.index(a1, a2)];
  }
  return battlefield_payoff(inst.battlefields[i].payoff, a1, a2, k1, k2);
}

std::string h_name(const Space& s, const FlowEdge& e) {
  return cat({"h" + s.tag, str(e.layer), str(e.from), str(e.to)});
}

std::string x_name(const Space& s, int i, int k, int a) {
  if (s.flow) return cat({"x" + s.tag, str(i), str(k), str(a)});
  return cat({"y" + s.tag, str(i), str(a)});
}

// Primal variables and feasibility rows. Returns the variable id of every
// action slot.
std::vector<int> add_primal(LpModel& model, const Space& s,
                            std::vector<int>* edge_vars,
                            std::vector<int>* weight_vars) {
  std::vector<int> slot_var(s.num_slots(), -1);
  if (s.flow) {
    const auto& dag = *s.dag;
    edge_vars->clear();
    for (const FlowEdge& e : dag.edges()) {
      edge_vars->push_back(model.add_variable(h_name(s, e)));
    }
    for (int i = 0; i < s.n; ++i) {
      for (int k = 0; k <= s.max_k; ++k) {
        for (int a = 0; a < s.actions[i]; ++a) {
          slot_var[s.slot(i, k, a)] = model.add_variable(x_name(s, i, k, a));
        }
      }
    }
    const int m = dag.m();
    std::vector<LpTerm> src;
    for (int e : dag.out_edges(0, m)) src.push_back({(*edge_vars)[e], 1.0});
    model.add_constraint("src" + s.tag, src, RowSense::kEqual, 1.0);
    for (int i = 1; i < s.n; ++i) {
      for (int c : dag.nodes(i)) {
        std::vector<LpTerm> terms;
        for (int e : dag.out_edges(i, c)) terms.push_back({(*edge_vars)[e], 1.0});
        for (int a : dag.nodes(i - 1)) {
          const int e = dag.h_index(i - 1, a, c);
          if (e >= 0) terms.push_back({(*edge_vars)[e], -1.0});
        }
        model.add_constraint(cat({"flow" + s.tag, str(i), str(c)}), terms,
                             RowSense::kEqual, 0.0);
      }
    }
    std::vector<LpTerm> sink;
    for (int a : dag.nodes(s.n - 1)) {
      const int e = dag.h_index(s.n - 1, a, 0);
      if (e >= 0) sink.push_back({(*edge_vars)[e], 1.0});
    }
    model.add_constraint("sink" + s.tag, sink, RowSense::kEqual, 1.0);
    for (int i = 0; i < s.n; ++i) {
      for (int k = 0; k <= s.max_k; ++k) {
        std::vector<LpTerm> terms;
        for (int a = 0; a < s.actions[i]; ++a) {
          terms.push_back({slot_var[s.slot(i, k, a)], 1.0});
        }
        for (int id = 0; id < dag.num_h(); ++id) {
          const FlowEdge& e = dag.edge(id);
          if (e.layer == i && e.soldiers() == k) {
            terms.push_back({(*edge_vars)[id], -1.0});
          }
        }
        model.add_constraint(cat({"split" + s.tag, str(i), str(k)}), terms,
                             RowSense::kEqual, 0.0);
      }
    }
    return slot_var;
  }

  const bool product = s.kind == SeqPolytope::kSimplexProduct;
  weight_vars->clear();
  for (int i = 0; i < s.n; ++i) {
    if (!product) weight_vars->push_back(model.add_variable(cat({"y" + s.tag, str(i)})));
    for (int a = 0; a < s.actions[i]; ++a) {
      slot_var[s.slot(i, 0, a)] = model.add_variable(x_name(s, i, 0, a));
    }
  }
  if (product) {
    for (int i = 0; i < s.n; ++i) {
      std::vector<LpTerm> terms;
      for (int a = 0; a < s.actions[i]; ++a) terms.push_back({slot_var[s.slot(i, 0, a)], 1.0});
      model.add_constraint(cat({"simplex" + s.tag, str(i)}), terms,
                           RowSense::kEqual, 1.0);
    }
    return slot_var;
  }
  std::vector<LpTerm> sum;
  for (int v : *weight_vars) sum.push_back({v, 1.0});
  model.add_constraint("sum" + s.tag, sum, RowSense::kEqual, s.root);
  for (int i = 0; i < s.n; ++i) {
    std::vector<LpTerm> terms;
    for (int a = 0; a < s.actions[i]; ++a) terms.push_back({slot_var[s.slot(i, 0, a)], 1.0});
    terms.push_back({(*weight_vars)[i], -1.0});
    model.add_constraint(cat({"split" + s.tag, str(i)}), terms,
                         RowSense::kEqual, 0.0);
  }
  return slot_var;
}

std::string dh_row(const Space& s, const FlowEdge& e) {
  return cat({"dh" + s.tag, str(e.layer), str(e.from), str(e.to)});
}
std::string dx_row(const Space& s, int i, int k, int a) {
  if (s.flow) return cat({"dx" + s.tag, str(i), str(k), str(a)});
  return cat({"dx" + s.tag, str(i), str(a)});
}
std::string dlam_row(const Space& s, int i) {
  return cat({"dlam" + s.tag, str(i)});
}

struct DualVars {
  int lam_src = -1;
  int lam_sink = -1;
  int lam = -1;
  std::vector<std::vector<int>> lam_node;  // [layer][node], flow only
  std::vector<std::vector<int>> mu;        // [i][k]
};

// Multipliers of the responder's feasibility rows; added before the primal
// block so that they lead the variable order.
DualVars add_dual_vars(LpModel& model, const Space& s) {
  DualVars d;
  d.mu.resize(s.n);
  if (s.flow) {
    const auto& dag = *s.dag;
    d.lam_src = model.add_variable("lam" + s.tag + "_src", -kInf, kInf);
    d.lam_node.assign(s.n, std::vector<int>(dag.m() + 1, -1));
    for (int i = 1; i < s.n; ++i) {
      for (int c : dag.nodes(i)) {
        d.lam_node[i][c] = model.add_variable(
            cat({"lam" + s.tag, str(i), str(c)}), -kInf, kInf);
      }
    }
    d.lam_sink = model.add_variable("lam" + s.tag + "_sink", -kInf, kInf);
    for (int i = 0; i < s.n; ++i) {
      for (int k = 0; k <= s.max_k; ++k) {
        d.mu[i].push_back(
            model.add_variable(cat({"mu" + s.tag, str(i), str(k)}), -kInf, kInf));
      }
    }
    return d;
  }
  if (s.kind != SeqPolytope::kSimplexProduct) {
    d.lam = model.add_variable("lam" + s.tag, -kInf, kInf);
  }
  for (int i = 0; i < s.n; ++i) {
    d.mu[i].push_back(model.add_variable(cat({"mu" + s.tag, str(i)}), -kInf, kInf));
  }
  return d;
}

std::vector<LpTerm> dual_objective(const Space& s, const DualVars& d) {
  if (s.flow) return {{d.lam_src, 1.0}, {d.lam_sink, 1.0}};
  if (s.kind == SeqPolytope::kSimplexProduct) {
    std::vector<LpTerm> terms;
    for (int i = 0; i < s.n; ++i) terms.push_back({d.mu[i][0], 1.0});
    return terms;
  }
  return {{d.lam, s.root}};
}

// Rows A^T (lam, mu) <= w (responder minimizes) or >= w (maximizes), where w
// is the responder's utility weight as a linear form in the opponent's slots.
void add_dual_rows(LpModel& model, const BlottoInstance& inst,
                   LpSetting setting, const Space& s, const DualVars& d,
                   const Space& opp, const std::vector<int>& opp_slot_var) {
  const RowSense sense = s.player == Player::kOne ? RowSense::kLessEqual
                                                  : RowSense::kGreaterEqual;
  if (s.flow) {
    const auto& dag = *s.dag;
    for (const FlowEdge& e : dag.edges()) {
      std::vector<LpTerm> terms;
      if (e.layer == 0) terms.push_back({d.lam_src, 1.0});
      if (e.layer >= 1) terms.push_back({d.lam_node[e.layer][e.from], 1.0});
      if (e.layer + 1 < s.n) terms.push_back({d.lam_node[e.layer + 1][e.to], -1.0});
      if (e.layer == s.n - 1 && e.to == 0) terms.push_back({d.lam_sink, 1.0});
      terms.push_back({d.mu[e.layer][e.soldiers()], -1.0});
      model.add_constraint(dh_row(s, e), terms, sense, 0.0);
    }
  } else if (s.kind != SeqPolytope::kSimplexProduct) {
    for (int i = 0; i < s.n; ++i) {
      model.add_constraint(dlam_row(s, i), {{d.lam, 1.0}, {d.mu[i][0], -1.0}},
                           sense, 0.0);
    }
  }
  for (int i = 0; i < s.n; ++i) {
    for (int k = 0; k <= s.max_k; ++k) {
      for (int a = 0; a < s.actions[i]; ++a) {
        std::vector<LpTerm> terms{{d.mu[i][k], 1.0}};
        for (int ko = 0; ko <= opp.max_k; ++ko) {
          for (int ao = 0; ao < opp.actions[i]; ++ao) {
            const bool one = s.player == Player::kOne;
            const double u = coupling(inst, setting, i, one ? a : ao,
                                      one ? ao : a, one ? k : ko, one ? ko : k);
            terms.push_back({opp_slot_var[opp.slot(i, ko, ao)], -u});
          }
        }
        model.add_constraint(dx_row(s, i, k, a), terms, sense, 0.0);
      }
    }
  }
}

LpModel build(const BlottoInstance& inst, LpSetting setting, LpSide side) {
  const Space s1 = make_space(inst, setting, Player::kOne);
  const Space s2 = make_space(inst, setting, Player::kTwo);
  const Space& primal = side == LpSide::kMaxMin ? s2 : s1;
  const Space& resp = side == LpSide::kMaxMin ? s1 : s2;

  LpModel model;
  model.setting = to_string(setting) + "/" + to_string(side);
  model.sense = side == LpSide::kMaxMin ? ObjectiveSense::kMaximize
                                        : ObjectiveSense::kMinimize;
  const DualVars d = add_dual_vars(model, resp);
  std::vector<int> edge_vars, weight_vars;
  const std::vector<int> slot_var =
      add_primal(model, primal, &edge_vars, &weight_vars);
  model.objective = dual_objective(resp, d);

  // The dual rows lead the primal feasibility rows.
  LpModel out;
  out.setting = model.setting;
  out.sense = model.sense;
  for (const auto& v : model.variables) out.add_variable(v.name, v.lower, v.upper);
  out.objective = model.objective;
  add_dual_rows(out, inst, setting, resp, d, primal, slot_var);
  for (auto& c : model.constraints) {
    out.add_constraint(c.name, std::move(c.terms), c.sense, c.rhs);
  }
  return out;
}

std::pair<LpSetting, LpSide> parse_setting(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    throw std::invalid_argument("LP model has no equilibrium setting: '" +
                                text + "'");
  }
  const std::string a = text.substr(0, slash);
  const std::string b = text.substr(slash + 1);
  LpSetting setting;
  if (a == to_string(LpSetting::kTwoSidedSum)) {
    setting = LpSetting::kTwoSidedSum;
  } else if (a == to_string(LpSetting::kOneSidedMinDiscrete)) {
    setting = LpSetting::kOneSidedMinDiscrete;
  } else if (a == to_string(LpSetting::kOneSidedSumLinear)) {
    setting = LpSetting::kOneSidedSumLinear;
  } else if (a == to_string(LpSetting::kOneSidedMinLinear)) {
    setting = LpSetting::kOneSidedMinLinear;
  } else {
    throw std::invalid_argument("unknown LP setting '" + a + "'");
  }
  LpSide side;
  if (b == "maxmin") {
    side = LpSide::kMaxMin;
  } else if (b == "minmax") {
    side = LpSide::kMinMax;
  } else {
    throw std::invalid_argument("unknown LP side '" + b + "'");
  }
  return {setting, side};
}

double clean(double v) { return v > kPriceZero ? v : 0.0; }

SeqForm read_primal(const Space& s, const LpModel& model,
                    const LpSolution& sol) {
  auto value = [&](const std::string& name) {
    return clean(sol.primal[model.variable(name)]);
  };
  if (s.flow) {
    SequenceStrategy out{s.dag, std::vector<double>(s.dag->dim(), 0.0)};
    for (int id = 0; id < s.dag->num_h(); ++id) {
      out.values[id] = value(h_name(s, s.dag->edge(id)));
    }
    for (int i = 0; i < s.n; ++i) {
      for (int k = 0; k <= s.max_k; ++k) {
        for (int a = 0; a < s.actions[i]; ++a) {
          out.values[s.dag->x_index(i, k, a)] = value(x_name(s, i, k, a));
        }
      }
    }
    return out;
  }
  TwoLevelSeqStrategy out;
  out.kind = s.kind;
  out.root = s.root;
  for (int i = 0; i < s.n; ++i) {
    out.battlefield.push_back(s.kind == SeqPolytope::kSimplexProduct
                                  ? 1.0
                                  : value(cat({"y" + s.tag, str(i)})));
    std::vector<double> row;
    for (int a = 0; a < s.actions[i]; ++a) row.push_back(value(x_name(s, i, 0, a)));
    out.action.push_back(std::move(row));
  }
  return out;
}

SeqForm read_prices(const Space& s, const LpModel& model,
                    const LpSolution& sol) {
  auto price = [&](const std::string& row) {
    return clean(sol.dual[model.constraint(row)]);
  };
  if (s.flow) {
    SequenceStrategy out{s.dag, std::vector<double>(s.dag->dim(), 0.0)};
    for (int id = 0; id < s.dag->num_h(); ++id) {
      out.values[id] = price(dh_row(s, s.dag->edge(id)));
    }
    for (int i = 0; i < s.n; ++i) {
      for (int k = 0; k <= s.max_k; ++k) {
        for (int a = 0; a < s.actions[i]; ++a) {
          out.values[s.dag->x_index(i, k, a)] = price(dx_row(s, i, k, a));
        }
      }
    }
    return out;
  }
  TwoLevelSeqStrategy out;
  out.kind = s.kind;
  out.root = s.root;
  for (int i = 0; i < s.n; ++i) {
    out.battlefield.push_back(s.kind == SeqPolytope::kSimplexProduct
                                  ? 1.0
                                  : price(dlam_row(s, i)));
    std::vector<double> row;
    for (int a = 0; a < s.actions[i]; ++a) row.push_back(price(dx_row(s, i, 0, a)));
    out.action.push_back(std::move(row));
  }
  return out;
}

}  // namespace

std::string to_string(LpSetting setting) {
  switch (setting) {
    case LpSetting::kTwoSidedSum:
      return "two_sided_sum";
    case LpSetting::kOneSidedMinDiscrete:
      return "one_sided_min_discrete";
    case LpSetting::kOneSidedSumLinear:
      return "one_sided_sum_linear";
    case LpSetting::kOneSidedMinLinear:
      return "one_sided_min_linear";
  }
  return "unknown";
}

std::string to_string(LpSide side) {
  return side == LpSide::kMaxMin ? "maxmin" : "minmax";
}

LpSetting lp_setting_for(const BlottoInstance& inst) {
  require_valid(inst);
  if (inst.is_discrete()) {
    if (inst.aggregator == Aggregator::kSum) return LpSetting::kTwoSidedSum;
    if (inst.is_one_sided()) return LpSetting::kOneSidedMinDiscrete;
    throw std::invalid_argument(
        "no equilibrium LP for two-sided games with the min aggregator; use "
        "regret learning instead");
  }
  if (!inst.is_one_sided()) {
    throw std::invalid_argument(
        "no equilibrium LP for two-sided continuous games");
  }
  for (int i = 0; i < inst.n; ++i) linear_payoff(inst, i);
  return inst.aggregator == Aggregator::kSum ? LpSetting::kOneSidedSumLinear
                                             : LpSetting::kOneSidedMinLinear;
}

LpModel build_lp_two_sided_sum(const BlottoInstance& inst, LpSide side) {
  require_valid(inst);
  if (!inst.is_discrete() || inst.aggregator != Aggregator::kSum) {
    throw std::invalid_argument(
        "two_sided_sum LP needs a discrete sum-aggregated instance");
  }
  return build(inst, LpSetting::kTwoSidedSum, side);
}

LpModel build_lp_one_sided_min_discrete(const BlottoInstance& inst,
                                        LpSide side) {
  require_valid(inst);
  if (!inst.is_discrete() || !inst.is_one_sided() ||
      inst.aggregator != Aggregator::kMin) {
    throw std::invalid_argument(
        "one_sided_min_discrete LP needs a discrete one-sided min-aggregated "
        "instance");
  }
  return build(inst, LpSetting::kOneSidedMinDiscrete, side);
}

LpModel build_lp_one_sided_linear_continuous(const BlottoInstance& inst,
                                             Aggregator aggregator,
                                             LpSide side) {
  require_valid(inst);
  if (inst.is_discrete() || !inst.is_one_sided()) {
    throw std::invalid_argument(
        "linear continuous LP needs a continuous one-sided instance");
  }
  if (inst.aggregator != aggregator) {
    throw std::invalid_argument("aggregator does not match the instance");
  }
  for (int i = 0; i < inst.n; ++i) linear_payoff(inst, i);
  return build(inst,
               aggregator == Aggregator::kSum ? LpSetting::kOneSidedSumLinear
                                              : LpSetting::kOneSidedMinLinear,
               side);
}

LpModel build_lp(const BlottoInstance& inst, LpSide side) {
  switch (lp_setting_for(inst)) {
    case LpSetting::kTwoSidedSum:
      return build_lp_two_sided_sum(inst, side);
    case LpSetting::kOneSidedMinDiscrete:
      return build_lp_one_sided_min_discrete(inst, side);
    case LpSetting::kOneSidedSumLinear:
      return build_lp_one_sided_linear_continuous(inst, Aggregator::kSum, side);
    case LpSetting::kOneSidedMinLinear:
      return build_lp_one_sided_linear_continuous(inst, Aggregator::kMin, side);
  }
  throw std::logic_error("unreachable");
}

Equilibrium extract_equilibrium(const BlottoInstance& inst,
                                const LpModel& model,
                                const LpSolution& solution) {
  if (solution.status != LpStatus::kOptimal) {
    throw std::runtime_error("LP solve ended with status " +
                             to_string(solution.status));
  }
  if (solution.primal.size() != model.variables.size() ||
      solution.dual.size() != model.constraints.size()) {
    throw std::invalid_argument("solution does not match the LP model");
  }
  const auto [setting, side] = parse_setting(model.setting);
  if (setting != lp_setting_for(inst)) {
    throw std::invalid_argument("LP model was built for a different setting");
  }
  const Space s1 = make_space(inst, setting, Player::kOne);
  const Space s2 = make_space(inst, setting, Player::kTwo);

  Equilibrium eq;
  eq.setting = setting;
  eq.side = side;
  eq.value = solution.objective;
  if (side == LpSide::kMaxMin) {
    eq.seq2 = read_primal(s2, model, solution);
    eq.seq1 = read_prices(s1, model, solution);
  } else {
    eq.seq1 = read_primal(s1, model, solution);
    eq.seq2 = read_prices(s2, model, solution);
  }
  eq.profile1 = to_behavioral(inst, Player::kOne, eq.seq1, eq.seq2);
  eq.profile2 = to_behavioral(inst, Player::kTwo, eq.seq2, eq.seq1);
  return eq;
}

Equilibrium solve_equilibrium(const BlottoInstance& inst, LpSide side) {
  const LpModel model = build_lp(inst, side);
  const LpSolution sol = solve_lp(model);
  return extract_equilibrium(inst, model, sol);
}

BehavioralProfile to_behavioral(const BlottoInstance& inst, Player player,
                                const SeqForm& own, const SeqForm& opponent) {
  if (const auto* flow = std::get_if<SequenceStrategy>(&own)) {
    BehavioralProfile out = sequence_to_behavioral(*flow);
    if (player == Player::kOne && inst.is_one_sided()) out.allocation_mix.clear();
    return out;
  }
  const auto& y = std::get<TwoLevelSeqStrategy>(own);
  BehavioralProfile out;
  std::vector<Distribution> deltas = two_level_actions(y);
  if (y.kind == SeqPolytope::kP) {
    // Unselected battlefields still need a sensible action distribution.
    std::vector<std::vector<double>> w;
    if (const auto* x2 = std::get_if<SequenceStrategy>(&opponent)) {
      w = min_discrete_weights_p1(inst, *x2);
    } else {
      w = linear_weights(inst, player, std::get<TwoLevelSeqStrategy>(opponent));
    }
    for (int i = 0; i < inst.n; ++i) {
      if (y.battlefield[i] > kPriceZero) continue;
      const auto& wi = w[i];
      const std::size_t best = static_cast<std::size_t>(
          std::min_element(wi.begin(), wi.end()) - wi.begin());
      std::fill(deltas[i].begin(), deltas[i].end(), 0.0);
      deltas[i][best] = 1.0;
    }
  }
  if (y.kind == SeqPolytope::kQ) out.allocation = y.battlefield;
  for (auto& d : deltas) out.actions.push_back({std::move(d)});
  return out;
}

}  // namespace blotto
