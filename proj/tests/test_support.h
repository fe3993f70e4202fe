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

#ifndef BLOTTO_TESTS_TEST_SUPPORT_H_
#define BLOTTO_TESTS_TEST_SUPPORT_H_

// Random generators and exhaustive reference evaluations shared by the test
// binaries. Nothing here goes through sequence-form code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "blotto/model.h"
#include "blotto/rng.h"

namespace blotto::testing {

inline std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(parts, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == parts - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, total);
  return out;
}

inline Distribution random_distribution(SplitMix64& rng, int size,
                                        bool sparse = false) {
  Distribution d(size);
  double sum = 0.0;
  for (double& v : d) {
    v = sparse && rng.uniform() < 0.4 ? 0.0 : rng.uniform();
    sum += v;
  }
  if (sum == 0.0) {
    d[rng.below(size)] = 1.0;
    return d;
  }
  for (double& v : d) v /= sum;
  return d;
}

// Discrete instance with U[-1, 1] tensor entries.
inline BlottoInstance random_discrete(SplitMix64& rng, int n, int m1, int m2,
                                      int max_actions,
                                      Sidedness sided = Sidedness::kTwoSided,
                                      Aggregator aggregator = Aggregator::kSum) {
  BlottoInstance inst;
  inst.n = n;
  inst.m1 = sided == Sidedness::kOneSided ? 0 : m1;
  inst.m2 = m2;
  inst.mode = SoldierMode::kDiscrete;
  inst.sided = sided;
  inst.aggregator = aggregator;
  for (int i = 0; i < n; ++i) {
    const int a1 = 1 + static_cast<int>(rng.below(max_actions));
    const int a2 = 1 + static_cast<int>(rng.below(max_actions));
    DenseTensor t = sided == Sidedness::kOneSided
                        ? DenseTensor::one_sided(a1, a2, m2 + 1)
                        : DenseTensor::two_sided(a1, a2, m1 + 1, m2 + 1);
    for (double& v : t.values) v = rng.uniform(-1.0, 1.0);
    inst.battlefields.push_back({a1, a2, t});
  }
  return inst;
}

// One-sided continuous instance with 1x1 subgames u_i = slope_i * sigma.
inline BlottoInstance linear_instance(const std::vector<double>& slopes,
                                      double m2, Aggregator aggregator) {
  BlottoInstance inst;
  inst.n = static_cast<int>(slopes.size());
  inst.m1 = 0.0;
  inst.m2 = m2;
  inst.mode = SoldierMode::kContinuous;
  inst.sided = Sidedness::kOneSided;
  inst.aggregator = aggregator;
  for (double c : slopes) {
    ParametricMatrix p = ParametricMatrix::zeros(ParametricKind::kAffine, 1, 1);
    p.lin[0] = c;
    inst.battlefields.push_back({1, 1, p});
  }
  return inst;
}

// One-sided continuous linear instance u = c * sigma with a1 x a2 matrices of
// U[0, 1] slopes.
inline BlottoInstance random_linear_instance(SplitMix64& rng, int n, double m2,
                                             int max_actions,
                                             Aggregator aggregator) {
  BlottoInstance inst;
  inst.n = n;
  inst.m1 = 0.0;
  inst.m2 = m2;
  inst.mode = SoldierMode::kContinuous;
  inst.sided = Sidedness::kOneSided;
  inst.aggregator = aggregator;
  for (int i = 0; i < n; ++i) {
    const int a1 = 1 + static_cast<int>(rng.below(max_actions));
    const int a2 = 1 + static_cast<int>(rng.below(max_actions));
    ParametricMatrix p = ParametricMatrix::zeros(ParametricKind::kAffine, a1, a2);
    for (double& c : p.lin) c = rng.uniform(0.05, 1.0);
    inst.battlefields.push_back({a1, a2, p});
  }
  return inst;
}

// Random behavioral strategy of a discrete player: a mixture over a few
// budget-exact allocation vectors plus a distribution per (battlefield, k).
inline BehavioralProfile random_behavioral(SplitMix64& rng, int n, int budget,
                                           const std::vector<int>& actions) {
  BehavioralProfile p;
  const auto all = compositions(budget, n);
  const int support = 1 + static_cast<int>(rng.below(std::min<std::size_t>(4, all.size())));
  std::vector<int> picked;
  while (static_cast<int>(picked.size()) < support) {
    const int j = static_cast<int>(rng.below(all.size()));
    if (std::find(picked.begin(), picked.end(), j) == picked.end()) picked.push_back(j);
  }
  const Distribution w = random_distribution(rng, support);
  for (int s = 0; s < support; ++s) p.allocation_mix.emplace_back(all[picked[s]], w[s]);
  p.actions.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= budget; ++k) {
      p.actions[i].push_back(random_distribution(rng, actions[i], true));
    }
  }
  return p;
}

// Expected payoff of two behavioral strategies by summing over allocation
// pairs and action pairs. Player 1's k index is 0 for one-sided tensors.
inline double exhaustive_expectation(const BlottoInstance& inst,
                                     const BehavioralProfile& p1,
                                     const BehavioralProfile& p2) {
  double total = 0.0;
  for (const auto& [z1, w1] : p1.allocation_mix) {
    for (const auto& [z2, w2] : p2.allocation_mix) {
      std::vector<double> per(inst.n, 0.0);
      for (int i = 0; i < inst.n; ++i) {
        const auto& t = std::get<DenseTensor>(inst.battlefields[i].payoff);
        const int k1 = t.has_k1_axis() ? z1[i] : 0;
        const auto& d1 = p1.actions[i][k1];
        const auto& d2 = p2.actions[i][z2[i]];
        for (std::size_t a = 0; a < d1.size(); ++a) {
          for (std::size_t b = 0; b < d2.size(); ++b) {
            per[i] += d1[a] * d2[b] * t.at(static_cast<int>(a), static_cast<int>(b), k1, z2[i]);
          }
        }
      }
      double agg = per[0];
      for (int i = 1; i < inst.n; ++i) {
        agg = inst.aggregator == Aggregator::kSum ? agg + per[i] : std::min(agg, per[i]);
      }
      total += w1 * w2 * agg;
    }
  }
  return total;
}

}  // namespace blotto::testing

#endif  // BLOTTO_TESTS_TEST_SUPPORT_H_
