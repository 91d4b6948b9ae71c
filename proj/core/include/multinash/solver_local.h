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

#ifndef MULTINASH_SOLVER_LOCAL_H_
#define MULTINASH_SOLVER_LOCAL_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "multinash/game.h"
#include "multinash/solve_report.h"

namespace multinash {

struct LocalConfig {
  int max_starts = 16;
  int max_iters = 2000;
  enum class StepRule { kFixed, kBacktracking };
  StepRule step_rule = StepRule::kBacktracking;
  double eps_regret = 1e-6;
  std::uint64_t seed = 0;
  double fixed_step = 0.05;  // step size under kFixed
  // Cooperative deadline, checked once per iteration/start.
  double time_limit_s = std::numeric_limits<double>::infinity();

  void Validate() const;
};

// Accepts max_starts, max_iters, step_rule ({fixed, backtracking}),
// eps_regret, seed, fixed_step, time_limit.
LocalConfig ParseLocalConfig(const std::string& text);

// Squared exploitability: sum over players of
// (best pure-response value - expected payoff)^2. Zero exactly at Nash
// equilibria, positive elsewhere.
double Merit(const Game& game, const MixedProfile& profile);

// Analytic gradient of Merit, one coordinate per (player, strategy). At best
// response ties the first maximizer is differentiated (a subgradient).
std::vector<std::vector<double>> MeritGradient(const Game& game,
                                               const MixedProfile& profile);

// Euclidean projection onto the probability simplex (sort-and-threshold).
std::vector<double> ProjectToSimplex(std::span<const double> v);

// Projected (sub)gradient descent on Merit from `start`. Stops when
// max regret <= config.eps_regret or after config.max_iters iterations;
// never fails and always returns a valid profile.
struct DescendResult {
  MixedProfile profile;
  double max_regret = 0.0;
  double merit = 0.0;
  long iterations = 0;
};
DescendResult Descend(const Game& game, const MixedProfile& start,
                      const LocalConfig& config);

// Runs Descend from the uniform profile, seeded Dirichlet(1) samples and
// pure-profile vertices (lexicographic), in that order, and reports the best
// result. Status is EquilibriumFound only for a certified profile.
SolveReport Multistart(const Game& game, const LocalConfig& config);

}  // namespace multinash

#endif  // MULTINASH_SOLVER_LOCAL_H_
