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

#include <benchmark/benchmark.h>

#include "blotto/flow_polytope.h"
#include "blotto/instances.h"
#include "blotto/lp_builders.h"
#include "blotto/matrix_game.h"
#include "blotto/regret.h"
#include "blotto/subgradient.h"

namespace {

void BM_BuildDag(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<int> actions(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(blotto::build_dag(n, 20, actions));
  }
}
BENCHMARK(BM_BuildDag)->Arg(5)->Arg(10)->Arg(20);

void BM_SolveEquilibriumLp(benchmark::State& state) {
  const auto inst = blotto::gen_soft_blotto_double(static_cast<int>(state.range(0)), 4, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(blotto::solve_equilibrium(inst).value);
  }
}
BENCHMARK(BM_SolveEquilibriumLp)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SelfPlayStep(benchmark::State& state) {
  const auto inst = blotto::gen_soft_blotto_double(static_cast<int>(state.range(0)), 10, 10);
  blotto::SelfPlaySession session(inst, {});
  for (auto _ : state) session.step();
  state.counters["dim"] = blotto::dag_for_player(inst, blotto::Player::kOne)->dim();
}
BENCHMARK(BM_SelfPlayStep)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_SolveMatrixGame(benchmark::State& state) {
  const auto inst = blotto::gen_random_parametric(1, 20, blotto::ParametricKind::kAffine,
                                                  static_cast<int>(state.range(0)),
                                                  static_cast<int>(state.range(0)), 3);
  const auto g = blotto::subgame_at(inst.battlefields[0].payoff, 4.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(blotto::solve_matrix_game(g).value);
  }
}
BENCHMARK(BM_SolveMatrixGame)->Arg(5)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_RunPsa(benchmark::State& state) {
  const auto inst = blotto::gen_random_parametric(5, 20, blotto::ParametricKind::kAffine, 20, 20, 1);
  blotto::AscentConfig cfg;
  cfg.max_iters = static_cast<int>(state.range(0));
  cfg.snapshot_every = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(blotto::run_psa(inst, cfg).value);
  }
}
BENCHMARK(BM_RunPsa)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
