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

#include "multinash/game.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "multinash/errors.h"

namespace multinash {

namespace {

constexpr std::int64_t kEnumerationGuard = 10'000'000;

// Advances a pure profile over the given counts in lexicographic order
// (last position fastest). Returns false after the last profile.
bool NextProfile(std::span<const int> counts, PureProfile& profile) {
  for (int pos = static_cast<int>(counts.size()) - 1; pos >= 0; --pos) {
    if (++profile[pos] < counts[pos]) return true;
    profile[pos] = 0;
  }
  return false;
}

}  // namespace

Game::Game(std::vector<int> strategy_counts,
           std::vector<std::vector<double>> payoffs, std::string name)
    : strategy_counts_(std::move(strategy_counts)),
      payoffs_(std::move(payoffs)),
      name_(std::move(name)) {
  const int n = static_cast<int>(strategy_counts_.size());
  if (n < 2) throw ValidationError("a game needs at least 2 players");
  num_profiles_ = 1;
  for (int c : strategy_counts_) {
    if (c < 1) throw ValidationError("every player needs at least 1 strategy");
    num_profiles_ *= c;
  }
  if (static_cast<int>(payoffs_.size()) != n) {
    throw ValidationError("expected one payoff tensor per player");
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<std::int64_t>(payoffs_[i].size()) != num_profiles_) {
      throw ValidationError("payoff tensor of player " + std::to_string(i) +
                            " has wrong size");
    }
    for (double v : payoffs_[i]) {
      if (!std::isfinite(v)) {
        throw ValidationError("payoff tensor of player " + std::to_string(i) +
                              " has a non-finite entry");
      }
    }
  }
}

std::int64_t Game::FlatIndex(std::span<const int> profile) const {
  std::int64_t flat = 0;
  for (int i = 0; i < num_players(); ++i) {
    flat = flat * strategy_counts_[i] + profile[i];
  }
  return flat;
}

MixedProfile UniformProfile(const Game& game) {
  MixedProfile p;
  p.distributions.reserve(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    p.distributions.emplace_back(game.num_strategies(i),
                                 1.0 / game.num_strategies(i));
  }
  return p;
}

MixedProfile PureToMixed(const Game& game, std::span<const int> profile) {
  MixedProfile p;
  p.distributions.reserve(game.num_players());
  for (int i = 0; i < game.num_players(); ++i) {
    std::vector<double> d(game.num_strategies(i), 0.0);
    d[profile[i]] = 1.0;
    p.distributions.push_back(std::move(d));
  }
  return p;
}

void ValidateProfile(const Game& game, const MixedProfile& profile) {
  if (static_cast<int>(profile.distributions.size()) != game.num_players()) {
    throw ValidationError("profile has wrong number of players");
  }
  for (int i = 0; i < game.num_players(); ++i) {
    const auto& d = profile.distributions[i];
    if (static_cast<int>(d.size()) != game.num_strategies(i)) {
      throw ValidationError("player " + std::to_string(i) +
                            " distribution has wrong length");
    }
    double sum = 0.0;
    for (double v : d) {
      if (!(v >= -kProbTolerance && v <= 1.0 + kProbTolerance)) {
        throw ValidationError("player " + std::to_string(i) +
                              " probability out of [0,1]");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kProbTolerance) {
      throw ValidationError("player " + std::to_string(i) +
                            " probabilities sum to " + std::to_string(sum));
    }
  }
}

double ExpectedUtility(const Game& game, const MixedProfile& profile,
                       int player, int pure) {
  if (player < 0 || player >= game.num_players()) {
    throw ArgumentError("player index out of range");
  }
  if (pure < 0 || pure >= game.num_strategies(player)) {
    throw ArgumentError("pure strategy index out of range");
  }
  ValidateProfile(game, profile);

  const int n = game.num_players();
  // Lexicographic sweep over the opponents' profiles: we iterate the full
  // profile space with player's coordinate pinned, which visits opponent
  // tuples in lexicographic order because the pinned coordinate is constant.
  PureProfile s(n, 0);
  s[player] = pure;
  double total = 0.0;
  while (true) {
    double prob = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j != player) prob *= profile.distributions[j][s[j]];
    }
    total += prob * game.payoff(player, s);
    // Advance all coordinates except `player`.
    int pos = n - 1;
    for (; pos >= 0; --pos) {
      if (pos == player) continue;
      if (++s[pos] < game.num_strategies(pos)) break;
      s[pos] = 0;
    }
    if (pos < 0) break;
  }
  return total;
}

double ExpectedPayoff(const Game& game, const MixedProfile& profile,
                      int player) {
  if (player < 0 || player >= game.num_players()) {
    throw ArgumentError("player index out of range");
  }
  ValidateProfile(game, profile);
  double total = 0.0;
  for (int s = 0; s < game.num_strategies(player); ++s) {
    const double x = profile.distributions[player][s];
    if (x != 0.0) total += x * ExpectedUtility(game, profile, player, s);
  }
  return total;
}

RegretReport ComputeRegretReport(const Game& game,
                                 const MixedProfile& profile) {
  ValidateProfile(game, profile);
  const int n = game.num_players();
  RegretReport report;
  report.per_strategy_utility.resize(n);
  report.per_strategy_regret.resize(n);
  report.best_value.resize(n);
  report.expected_payoff.resize(n);
  report.max_regret = 0.0;
  for (int i = 0; i < n; ++i) {
    const int k = game.num_strategies(i);
    auto& u = report.per_strategy_utility[i];
    u.resize(k);
    for (int s = 0; s < k; ++s) u[s] = ExpectedUtility(game, profile, i, s);
    const double best = *std::max_element(u.begin(), u.end());
    report.best_value[i] = best;
    auto& r = report.per_strategy_regret[i];
    r.resize(k);
    for (int s = 0; s < k; ++s) r[s] = best - u[s];
    double expected = 0.0;
    for (int s = 0; s < k; ++s) expected += profile.distributions[i][s] * u[s];
    report.expected_payoff[i] = expected;
    report.max_regret = std::max(report.max_regret, best - expected);
  }
  return report;
}

bool IsEpsilonNash(const Game& game, const MixedProfile& profile, double eps) {
  if (eps < 0.0) throw ArgumentError("eps must be non-negative");
  return ComputeRegretReport(game, profile).max_regret <= eps;
}

double PayoffSpread(const Game& game, int player) {
  if (player < 0 || player >= game.num_players()) {
    throw ArgumentError("player index out of range");
  }
  const auto& t = game.payoff_tensor(player);
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  return *hi - *lo;
}

std::vector<PureProfile> EnumeratePureEquilibria(const Game& game) {
  if (game.num_profiles() > kEnumerationGuard) {
    throw CapacityError("game has " + std::to_string(game.num_profiles()) +
                        " pure profiles; enumeration guard is " +
                        std::to_string(kEnumerationGuard));
  }
  const int n = game.num_players();
  std::vector<PureProfile> equilibria;
  PureProfile s(n, 0);
  do {
    bool equilibrium = true;
    const std::int64_t flat = game.FlatIndex(s);
    PureProfile deviated = s;
    for (int i = 0; i < n && equilibrium; ++i) {
      const double own = game.payoff_flat(i, flat);
      for (int alt = 0; alt < game.num_strategies(i); ++alt) {
        if (alt == s[i]) continue;
        deviated[i] = alt;
        if (game.payoff(i, deviated) > own) {
          equilibrium = false;
          break;
        }
      }
      deviated[i] = s[i];
    }
    if (equilibrium) equilibria.push_back(s);
  } while (NextProfile(game.strategy_counts(), s));
  return equilibria;
}

}  // namespace multinash
