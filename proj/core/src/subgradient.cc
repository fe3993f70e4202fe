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

#include "blotto/subgradient.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace blotto {
namespace {

void require_continuous_min(const BlottoInstance& inst) {
  require_valid(inst);
  if (inst.is_discrete() || !inst.is_one_sided() ||
      inst.aggregator != Aggregator::kMin) {
    throw std::invalid_argument(
        "needs a continuous one-sided instance with the min aggregator");
  }
}

const ParametricMatrix& parametric(const BlottoInstance& inst, int i) {
  return std::get<ParametricMatrix>(inst.battlefields[i].payoff);
}

}  // namespace

AggregateValue aggregate_value(const BlottoInstance& inst,
                               const std::vector<double>& sigma) {
  require_continuous_min(inst);
  if (static_cast<int>(sigma.size()) != inst.n) {
    throw std::invalid_argument("allocation length does not match instance");
  }
  AggregateValue out;
  for (int i = 0; i < inst.n; ++i) {
    const double v =
        solve_matrix_game(subgame_at(parametric(inst, i), sigma[i])).value;
    out.per_battlefield.push_back(v);
    if (i == 0 || v < out.value) {
      out.value = v;
      out.active = i;
    }
  }
  return out;
}

double nash_subgradient(const ParametricMatrix& spec, double sigma,
                        const MatrixGameSolution& eq) {
  double g = 0.0;
  for (int a1 = 0; a1 < spec.rows; ++a1) {
    if (eq.p1[a1] == 0.0) continue;
    for (int a2 = 0; a2 < spec.cols; ++a2) {
      g += eq.p1[a1] * eq.p2[a2] * spec.derivative(a1, a2, sigma);
    }
  }
  return g;
}

double nash_subgradient(const BlottoInstance& inst, int i, double sigma_i) {
  if (i < 0 || i >= inst.n) throw std::out_of_range("battlefield index");
  const auto* spec = std::get_if<ParametricMatrix>(&inst.battlefields[i].payoff);
  if (spec == nullptr) {
    throw std::invalid_argument("subgradients need a parametric payoff");
  }
  const MatrixGameSolution eq = solve_matrix_game(subgame_at(*spec, sigma_i));
  return nash_subgradient(*spec, sigma_i, eq);
}

std::vector<double> project_simplex(const std::vector<double>& v,
                                    double budget) {
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be >= 0");
  if (v.empty()) throw std::invalid_argument("cannot project an empty vector");
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - budget) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) theta = candidate;
  }
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = std::max(v[j] - theta, 0.0);
  return out;
}

void check_ascent_config(const AscentConfig& config) {
  if (!(config.eta0 > 0.0)) throw std::invalid_argument("eta0 must be positive");
  if (config.max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  if (config.snapshot_every < 0) {
    throw std::invalid_argument("snapshot cadence must be >= 0");
  }
}

AscentResult run_psa(const BlottoInstance& inst, const AscentConfig& config) {
  require_continuous_min(inst);
  check_ascent_config(config);
  for (int i = 0; i < inst.n; ++i) {
    if (!parametric(inst, i).is_increasing()) {
      throw std::invalid_argument(
          "battlefield " + std::to_string(i) +
          " has a payoff entry that decreases in the allocation (or none that "
          "increases); the aggregate value is then not quasiconcave and "
          "subgradient ascent has no guarantee");
    }
  }
  const int n = inst.n;
  std::vector<double> sigma;
  if (config.init == AscentInit::kUniform) {
    sigma.assign(n, inst.m2 / n);
  } else {
    if (static_cast<int>(config.initial.size()) != n) {
      throw std::invalid_argument("initial allocation length does not match n");
    }
    sigma = project_simplex(config.initial, inst.m2);
  }

  AscentResult result;
  result.value = -std::numeric_limits<double>::infinity();
  for (int t = 0;; ++t) {
    const AggregateValue agg = aggregate_value(inst, sigma);
    if (agg.value > result.value) {
      result.value = agg.value;
      result.sigma = sigma;
    }
    if (t == config.max_iters) break;
    const double eta = config.schedule == StepSchedule::kDiminishing
                           ? config.eta0 / std::sqrt(t + 1.0)
                           : config.eta0;
    AscentRecord rec{t, agg.value, agg.active, eta, {}};
    if (config.snapshot_every > 0 && t % config.snapshot_every == 0) {
      rec.sigma = sigma;
    }
    result.trace.records.push_back(std::move(rec));
    const int i = agg.active;
    const double g = nash_subgradient(inst, i, sigma[i]);
    std::vector<double> next = sigma;
    next[i] += eta * g;
    sigma = project_simplex(next, inst.m2);
  }
  return result;
}

std::string ascent_trace_to_csv(const AscentTrace& trace, int n) {
  std::ostringstream out;
  out.precision(17);
  out << "t,V,i_star,eta";
  for (int i = 0; i < n; ++i) out << ",sigma_" << i;
  out << '\n';
  for (const auto& r : trace.records) {
    out << r.t << ',' << r.value << ',' << r.active << ',' << r.eta;
    for (int i = 0; i < n; ++i) {
      out << ',';
      if (!r.sigma.empty()) out << r.sigma[i];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace blotto
