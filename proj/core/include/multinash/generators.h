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

#ifndef MULTINASH_GENERATORS_H_
#define MULTINASH_GENERATORS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "multinash/game.h"

namespace multinash {

enum class GameFamily { kRandom, kCovariance, kNamed };

// Description of one benchmark instance. The canonical text encoding is
//   RG(3,5)#seed=7;range=-100..100
//   CG(5,5,-0.2)#seed=7;range=-100..100
//   NAMED(matching_pennies)
// where the fragment after '#' is optional and defaults to seed=0,
// range=-100..100. Strategy counts may differ per player: RG(2,3x4).
struct InstanceSpec {
  GameFamily family = GameFamily::kRandom;
  int num_players = 0;
  std::vector<int> strategy_counts;
  double rho = 0.0;  // Covariance family only.
  std::int64_t payoff_low = -100;
  std::int64_t payoff_high = 100;
  std::uint64_t seed = 0;
  std::string named_id;

  bool operator==(const InstanceSpec&) const = default;
};

// Throws ValidationError on violated invariants (rho outside the positive
// semidefiniteness bound [-1/(n-1), 1], payoff_low >= payoff_high, ...).
void ValidateInstanceSpec(const InstanceSpec& spec);

InstanceSpec ParseInstanceSpec(const std::string& text);
std::string FormatInstanceSpec(const InstanceSpec& spec);

// All payoffs drawn independently, uniformly on {payoff_low..payoff_high},
// keyed by (seed, player, flat profile index). Pure function of the spec.
Game GenerateRandomGame(const InstanceSpec& spec);

// For each pure profile the n payoff entries are jointly normal with unit
// variances and pairwise correlation rho, then scaled to the payoff range,
// rounded to integers and clamped. Pure function of the spec.
Game GenerateCovarianceGame(const InstanceSpec& spec);

// The raw (pre-rounding, pre-clamping) correlated normal draw for one pure
// profile, exposed so tests can check the sampling statistics directly.
std::vector<double> CovarianceSample(const InstanceSpec& spec,
                                     std::int64_t profile_index);

// Canonical fixtures: matching_pennies, rock_paper_scissors,
// coordination_2x2, three_player_majority.
Game NamedGame(const std::string& id);
std::vector<std::string> NamedGameIds();

// Dispatch on spec.family.
Game Generate(const InstanceSpec& spec);

}  // namespace multinash

#endif  // MULTINASH_GENERATORS_H_
