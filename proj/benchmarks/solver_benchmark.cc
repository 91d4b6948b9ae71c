// Copyright 2026 The multinash Authors
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

#include "multinash/generators.h"
#include "multinash/simplex.h"
#include "multinash/solver_global.h"
#include "multinash/solver_local.h"

namespace multinash {
namespace {

Game BenchGame(int players, int strategies, std::uint64_t seed) {
  InstanceSpec spec;
  spec.family = GameFamily::kRandom;
  spec.num_players = players;
  spec.strategy_counts.assign(players, strategies);
  spec.seed = seed;
  return GenerateRandomGame(spec);
}

void BM_RootRelaxationLp(benchmark::State& state) {
  const Game game = BenchGame(3, static_cast<int>(state.range(0)), 1);
  const MultilinearProgram program = BuildMlp2(game);
  BoxNode root;
  for (const Variable& v : program.variables) {
    root.lower.push_back(v.lower);
    root.upper.push_back(v.upper);
  }
  for (auto _ : state) {
    const LinearRelaxation relaxation = Relax(program, root, 1e-7);
    benchmark::DoNotOptimize(SolveLp(relaxation.lp));
  }
}
BENCHMARK(BM_RootRelaxationLp)->Arg(3)->Arg(5);

void BM_GlobalSolveMlp2(benchmark::State& state) {
  const Game game = BenchGame(static_cast<int>(state.range(0)),
                              static_cast<int>(state.range(1)), 2);
  const MultilinearProgram program = BuildMlp2(game);
  GlobalConfig config;
  config.time_limit_s = 120.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveGlobal(program, game, config));
  }
}
BENCHMARK(BM_GlobalSolveMlp2)->Args({2, 4})->Args({3, 3})
    ->Unit(benchmark::kMillisecond);

void BM_Multistart(benchmark::State& state) {
  const Game game = BenchGame(3, static_cast<int>(state.range(0)), 3);
  LocalConfig config;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Multistart(game, config));
  }
}
BENCHMARK(BM_Multistart)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace multinash
