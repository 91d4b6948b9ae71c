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

#ifndef MULTINASH_GAME_H_
#define MULTINASH_GAME_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace multinash {

// Absolute tolerance for simplex membership of mixed strategies. Solver
// outputs carry LP-level noise, so validation must not demand exact sums.
inline constexpr double kProbTolerance = 1e-8;

// A pure-strategy profile: one strategy index per player.
using PureProfile = std::vector<int>;

// A finite n-player normal-form game, n >= 2. One payoff tensor per player,
// stored flat in row-major order with player 0's strategy index varying
// slowest and player n-1's fastest. The layout is part of the contract:
// file formats and oracles rely on it.
class Game {
 public:
  Game(std::vector<int> strategy_counts,
       std::vector<std::vector<double>> payoffs, std::string name = "");

  int num_players() const { return static_cast<int>(strategy_counts_.size()); }
  const std::vector<int>& strategy_counts() const { return strategy_counts_; }
  int num_strategies(int player) const { return strategy_counts_[player]; }
  std::int64_t num_profiles() const { return num_profiles_; }
  const std::string& name() const { return name_; }

  // Flat index of a pure profile under the documented layout.
  std::int64_t FlatIndex(std::span<const int> profile) const;

  double payoff(int player, std::span<const int> profile) const {
    return payoffs_[player][FlatIndex(profile)];
  }
  double payoff_flat(int player, std::int64_t flat) const {
    return payoffs_[player][flat];
  }
  const std::vector<double>& payoff_tensor(int player) const {
    return payoffs_[player];
  }

 private:
  std::vector<int> strategy_counts_;
  std::vector<std::vector<double>> payoffs_;
  std::int64_t num_profiles_ = 0;
  std::string name_;
};

// One probability distribution per player over that player's pure strategies.
struct MixedProfile {
  std::vector<std::vector<double>> distributions;

  bool operator==(const MixedProfile&) const = default;
};

// Uniform distribution for every player.
MixedProfile UniformProfile(const Game& game);

// Point mass on the given pure profile.
MixedProfile PureToMixed(const Game& game, std::span<const int> profile);

// Throws ValidationError unless every distribution has the right length,
// entries in [0,1] and sums to 1, all within kProbTolerance.
void ValidateProfile(const Game& game, const MixedProfile& profile);

// Per-strategy expected utilities u_s^i, per-player best pure response
// value, per-strategy regrets and the profile's maximum exploitability.
struct RegretReport {
  // per_strategy_utility[i][s]: expected payoff of player i committing to
  // pure strategy s against the others' mixed strategies.
  std::vector<std::vector<double>> per_strategy_utility;
  // best_value[i] = max_s per_strategy_utility[i][s], attained exactly.
  std::vector<double> best_value;
  // per_strategy_regret[i][s] = best_value[i] - per_strategy_utility[i][s].
  std::vector<std::vector<double>> per_strategy_regret;
  // expected_payoff[i]: payoff of player i at the profile itself.
  std::vector<double> expected_payoff;
  // max over players of best_value[i] - expected_payoff[i]; the profile is a
  // Nash equilibrium exactly when this is 0.
  double max_regret = 0.0;
};

// Expected utility of `player` committing to pure strategy `pure` while all
// other players follow `profile`. The sum runs lexicographically over the
// opponents' pure profiles so results are reproducible bit for bit.
double ExpectedUtility(const Game& game, const MixedProfile& profile,
                       int player, int pure);

// Expected payoff of `player` at `profile`: the dot product of the player's
// own distribution with their per-strategy utilities.
double ExpectedPayoff(const Game& game, const MixedProfile& profile,
                      int player);

RegretReport ComputeRegretReport(const Game& game, const MixedProfile& profile);

// True iff no player can gain more than eps by a unilateral deviation.
bool IsEpsilonNash(const Game& game, const MixedProfile& profile, double eps);

// Max payoff entry minus min payoff entry of player's tensor (the paper's
// per-player big-M constant).
double PayoffSpread(const Game& game, int player);

// All pure profiles where no player has a profitable unilateral pure
// deviation, in lexicographic order. Guarded: throws CapacityError when the
// game has more than 10^7 pure profiles.
std::vector<PureProfile> EnumeratePureEquilibria(const Game& game);

}  // namespace multinash

#endif  // MULTINASH_GAME_H_
