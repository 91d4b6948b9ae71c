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

#include "multinash/formulations.h"
#include "multinash/game.h"
#include "multinash/generators.h"
#include "multinash/solver_local.h"

namespace multinash {
namespace {

Game BenchGame(int players, int strategies) {
  InstanceSpec spec;
  spec.family = GameFamily::kRandom;
  spec.num_players = players;
  spec.strategy_counts.assign(players, strategies);
  spec.seed = 1;
  return GenerateRandomGame(spec);
}

void BM_RegretReport(benchmark::State& state) {
  const Game game =
      BenchGame(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const MixedProfile uniform = UniformProfile(game);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeRegretReport(game, uniform));
  }
}
BENCHMARK(BM_RegretReport)->Args({2, 10})->Args({3, 5})->Args({4, 3});

void BM_MeritGradient(benchmark::State& state) {
  const Game game =
      BenchGame(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const MixedProfile uniform = UniformProfile(game);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MeritGradient(game, uniform));
  }
}
BENCHMARK(BM_MeritGradient)->Args({2, 10})->Args({3, 5});

void BM_BuildFormulation(benchmark::State& state) {
  const Game game = BenchGame(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildMlp2(game));
    benchmark::DoNotOptimize(BuildMimlp(4, game));
  }
}
BENCHMARK(BM_BuildFormulation)->Arg(3)->Arg(5);

}  // namespace
}  // namespace multinash
