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

#include "oracles/support_enum.h"

#include <stdexcept>

#include "multinash/errors.h"

namespace multinash::oracle {

namespace {

// Variable layout of the support system LP:
//   x_0..x_{m-1}  y_0..y_{n-1}  v1p v1n v2p v2n  [d]
// All implicitly >= 0; the best-response values are split into
// positive/negative parts.
struct Layout {
  int m = 0, n = 0;
  int x(int s) const { return s; }
  int y(int t) const { return m + t; }
  int v1p() const { return m + n; }
  int v1n() const { return m + n + 1; }
  int v2p() const { return m + n + 2; }
  int v2n() const { return m + n + 3; }
  int d() const { return m + n + 4; }
  int total(bool with_distance) const { return m + n + 4 + (with_distance ? 1 : 0); }
};

RationalLp BuildSupportSystem(const Game& game, unsigned mask1, unsigned mask2,
                              bool with_distance,
                              const MixedProfile* target) {
  if (game.num_players() != 2) {
    throw ArgumentError("support enumeration needs a 2-player game");
  }
  const Layout L{game.num_strategies(0), game.num_strategies(1)};
  RationalLp lp;
  lp.num_vars = L.total(with_distance);

  auto payoff = [&](int player, int s, int t) {
    return Rational(game.payoff(player, std::vector<int>{s, t}));
  };
  auto row = [&](RationalRelation rel, Rational rhs) {
    RationalLp::Row r;
    r.coeffs.assign(lp.num_vars, 0);
    r.relation = rel;
    r.rhs = std::move(rhs);
    lp.rows.push_back(std::move(r));
    return &lp.rows.back();
  };

  // Simplex constraints.
  {
    auto* r = row(RationalRelation::kEq, 1);
    for (int s = 0; s < L.m; ++s) r->coeffs[L.x(s)] = 1;
  }
  {
    auto* r = row(RationalRelation::kEq, 1);
    for (int t = 0; t < L.n; ++t) r->coeffs[L.y(t)] = 1;
  }
  // Support restrictions.
  for (int s = 0; s < L.m; ++s) {
    if (!(mask1 >> s & 1)) row(RationalRelation::kEq, 0)->coeffs[L.x(s)] = 1;
  }
  for (int t = 0; t < L.n; ++t) {
    if (!(mask2 >> t & 1)) row(RationalRelation::kEq, 0)->coeffs[L.y(t)] = 1;
  }
  // Player 1: strategies in the support are indifferent at value v1, others
  // at most v1.
  for (int s = 0; s < L.m; ++s) {
    auto* r = row((mask1 >> s & 1) ? RationalRelation::kEq
                                   : RationalRelation::kLe,
                  0);
    for (int t = 0; t < L.n; ++t) r->coeffs[L.y(t)] = payoff(0, s, t);
    r->coeffs[L.v1p()] = -1;
    r->coeffs[L.v1n()] = 1;
  }
  // Player 2 symmetric.
  for (int t = 0; t < L.n; ++t) {
    auto* r = row((mask2 >> t & 1) ? RationalRelation::kEq
                                   : RationalRelation::kLe,
                  0);
    for (int s = 0; s < L.m; ++s) r->coeffs[L.x(s)] = payoff(1, s, t);
    r->coeffs[L.v2p()] = -1;
    r->coeffs[L.v2n()] = 1;
  }

  if (with_distance) {
    for (int s = 0; s < L.m; ++s) {
      const Rational p(target->distributions[0][s]);
      auto* above = row(RationalRelation::kLe, p);
      above->coeffs[L.x(s)] = 1;
      above->coeffs[L.d()] = -1;
      auto* below = row(RationalRelation::kLe, -p);
      below->coeffs[L.x(s)] = -1;
      below->coeffs[L.d()] = -1;
    }
    for (int t = 0; t < L.n; ++t) {
      const Rational q(target->distributions[1][t]);
      auto* above = row(RationalRelation::kLe, q);
      above->coeffs[L.y(t)] = 1;
      above->coeffs[L.d()] = -1;
      auto* below = row(RationalRelation::kLe, -q);
      below->coeffs[L.y(t)] = -1;
      below->coeffs[L.d()] = -1;
    }
    lp.objective.assign(lp.num_vars, 0);
    lp.objective[L.d()] = 1;
  }
  return lp;
}

ExactProfile ProfileFromSolution(const Game& game,
                                 const std::vector<Rational>& x) {
  const Layout L{game.num_strategies(0), game.num_strategies(1)};
  ExactProfile profile;
  profile.distributions.resize(2);
  profile.distributions[0].assign(x.begin(), x.begin() + L.m);
  profile.distributions[1].assign(x.begin() + L.m, x.begin() + L.m + L.n);
  return profile;
}

}  // namespace

MixedProfile ToDouble(const ExactProfile& profile) {
  MixedProfile out;
  out.distributions.resize(profile.distributions.size());
  for (std::size_t i = 0; i < profile.distributions.size(); ++i) {
    for (const Rational& v : profile.distributions[i]) {
      out.distributions[i].push_back(v.convert_to<double>());
    }
  }
  return out;
}

Rational ExactMaxRegret(const Game& game, const ExactProfile& profile) {
  const int n = game.num_players();
  Rational worst = 0;
  for (int i = 0; i < n; ++i) {
    // Exact per-strategy utilities by full enumeration.
    std::vector<Rational> utilities(game.num_strategies(i), 0);
    std::vector<int> s(n, 0);
    while (true) {
      Rational prob = 1;
      for (int j = 0; j < n; ++j) {
        if (j != i) prob *= profile.distributions[j][s[j]];
      }
      if (prob != 0) {
        utilities[s[i]] += prob * Rational(game.payoff(i, s));
      }
      int pos = n - 1;
      for (; pos >= 0; --pos) {
        if (++s[pos] < game.num_strategies(pos)) break;
        s[pos] = 0;
      }
      if (pos < 0) break;
    }
    Rational best = utilities[0];
    for (const Rational& u : utilities) best = std::max(best, u);
    Rational expected = 0;
    for (int t = 0; t < game.num_strategies(i); ++t) {
      expected += profile.distributions[i][t] * utilities[t];
    }
    worst = std::max(worst, Rational(best - expected));
  }
  return worst;
}

bool IsExactEquilibrium(const Game& game, const ExactProfile& profile) {
  return ExactMaxRegret(game, profile) == 0;
}

bool SupportFeasible(const Game& game, unsigned mask1, unsigned mask2,
                     ExactProfile* witness) {
  const RationalLp lp =
      BuildSupportSystem(game, mask1, mask2, /*with_distance=*/false, nullptr);
  const RationalLpResult result = SolveRationalLp(lp);
  if (result.status != RationalLpResult::Status::kOptimal) return false;
  if (witness != nullptr) *witness = ProfileFromSolution(game, result.x);
  return true;
}

std::vector<ExactProfile> EnumerateSupportEquilibria(const Game& game) {
  const int m = game.num_strategies(0);
  const int n = game.num_strategies(1);
  std::vector<ExactProfile> out;
  for (unsigned mask1 = 1; mask1 < (1u << m); ++mask1) {
    for (unsigned mask2 = 1; mask2 < (1u << n); ++mask2) {
      ExactProfile witness;
      if (SupportFeasible(game, mask1, mask2, &witness)) {
        out.push_back(std::move(witness));
      }
    }
  }
  return out;
}

Rational DistanceToEquilibriumSet(const Game& game,
                                  const MixedProfile& profile) {
  const int m = game.num_strategies(0);
  const int n = game.num_strategies(1);
  std::optional<Rational> best;
  for (unsigned mask1 = 1; mask1 < (1u << m); ++mask1) {
    for (unsigned mask2 = 1; mask2 < (1u << n); ++mask2) {
      const RationalLp lp = BuildSupportSystem(game, mask1, mask2,
                                               /*with_distance=*/true,
                                               &profile);
      const RationalLpResult result = SolveRationalLp(lp);
      if (result.status != RationalLpResult::Status::kOptimal) continue;
      if (!best.has_value() || result.value < *best) best = result.value;
      if (*best == 0) return 0;
    }
  }
  if (!best.has_value()) {
    throw std::logic_error("every finite game has an equilibrium");
  }
  return *best;
}

}  // namespace multinash::oracle
