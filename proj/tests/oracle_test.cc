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

// Self-checks of the exact oracles plus the support-pattern equivalence of
// the MIMLP1 feasibility system with definition-based support enumeration.

#include <map>

#include "doctest.h"
#include "multinash/formulations.h"
#include "multinash/generators.h"
#include "oracles/rational_lp.h"
#include "oracles/support_enum.h"

namespace multinash {
namespace {

using oracle::Rational;
using oracle::RationalLp;
using oracle::RationalLpResult;
using oracle::RationalRelation;

Game Rg(int players, int strategies, std::uint64_t seed) {
  InstanceSpec spec;
  spec.family = GameFamily::kRandom;
  spec.num_players = players;
  spec.strategy_counts.assign(players, strategies);
  spec.seed = seed;
  return GenerateRandomGame(spec);
}

TEST_CASE("rational LP basics") {
  SUBCASE("optimal value is exact") {
    RationalLp lp;
    lp.num_vars = 2;
    RationalLp::Row row;
    row.coeffs = {1, 1};
    row.relation = RationalRelation::kGe;
    row.rhs = Rational(1) / 3;
    lp.rows.push_back(row);
    lp.objective = {1, 1};
    const RationalLpResult result = SolveRationalLp(lp);
    REQUIRE(result.status == RationalLpResult::Status::kOptimal);
    CHECK(result.value == Rational(1) / 3);
  }
  SUBCASE("infeasible") {
    RationalLp lp;
    lp.num_vars = 1;
    RationalLp::Row ge;
    ge.coeffs = {1};
    ge.relation = RationalRelation::kGe;
    ge.rhs = 2;
    RationalLp::Row le;
    le.coeffs = {1};
    le.relation = RationalRelation::kLe;
    le.rhs = 1;
    lp.rows = {ge, le};
    CHECK(SolveRationalLp(lp).status == RationalLpResult::Status::kInfeasible);
  }
  SUBCASE("unbounded") {
    RationalLp lp;
    lp.num_vars = 1;
    lp.objective = {-1};
    CHECK(SolveRationalLp(lp).status == RationalLpResult::Status::kUnbounded);
  }
}

TEST_CASE("support enumeration on fixtures") {
  SUBCASE("matching pennies has exactly the uniform equilibrium") {
    const Game mp = NamedGame("matching_pennies");
    const auto eqs = oracle::EnumerateSupportEquilibria(mp);
    REQUIRE(eqs.size() == 1);
    CHECK(eqs[0].distributions[0][0] == Rational(1) / 2);
    CHECK(eqs[0].distributions[1][1] == Rational(1) / 2);
    CHECK(oracle::IsExactEquilibrium(mp, eqs[0]));
  }
  SUBCASE("coordination has its three equilibria") {
    const Game coord = NamedGame("coordination_2x2");
    const auto eqs = oracle::EnumerateSupportEquilibria(coord);
    REQUIRE(eqs.size() == 3);
    for (const auto& eq : eqs) CHECK(oracle::IsExactEquilibrium(coord, eq));
  }
  SUBCASE("rock paper scissors is uniform") {
    const Game rps = NamedGame("rock_paper_scissors");
    const auto eqs = oracle::EnumerateSupportEquilibria(rps);
    REQUIRE(eqs.size() == 1);
    for (int t = 0; t < 3; ++t) {
      CHECK(eqs[0].distributions[0][t] == Rational(1) / 3);
      CHECK(eqs[0].distributions[1][t] == Rational(1) / 3);
    }
  }
}

TEST_CASE("distance to the equilibrium set") {
  const Game mp = NamedGame("matching_pennies");
  MixedProfile at;
  at.distributions = {{0.5, 0.5}, {0.5, 0.5}};
  CHECK(oracle::DistanceToEquilibriumSet(mp, at) == 0);

  MixedProfile off;
  off.distributions = {{0.5 + 0.125, 0.5 - 0.125}, {0.5, 0.5}};
  CHECK(oracle::DistanceToEquilibriumSet(mp, off) == Rational(1) / 8);
}

TEST_CASE("every enumerated representative is an exact equilibrium") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Game game = Rg(2, 2 + static_cast<int>(seed % 2), 40 + seed);
    const auto eqs = oracle::EnumerateSupportEquilibria(game);
    CHECK(!eqs.empty());  // Nash existence
    for (const auto& eq : eqs) {
      CHECK(oracle::IsExactEquilibrium(game, eq));
      CHECK(oracle::DistanceToEquilibriumSet(game, oracle::ToDouble(eq)) <=
            Rational(1, 1000000000));
    }
  }
}

namespace {

// Translates the MIMLP1 program with a fixed b-pattern into an exact LP.
// With two players every remaining constraint is linear. Variables are
// shifted by their lower bounds so the rational solver's x >= 0 applies.
RationalLp MimlpPatternSystem(const MultilinearProgram& program,
                              const std::map<VariableRef, Rational>& fixed) {
  RationalLp lp;
  std::map<int, int> id_map;  // program var id -> lp var id
  std::vector<Rational> shift;
  for (std::size_t j = 0; j < program.variables.size(); ++j) {
    const Variable& v = program.variables[j];
    if (fixed.count(v.ref)) continue;
    id_map[static_cast<int>(j)] = lp.num_vars++;
    shift.push_back(Rational(v.lower));
  }
  // Upper bound rows var' <= upper - lower.
  for (std::size_t j = 0; j < program.variables.size(); ++j) {
    const Variable& v = program.variables[j];
    if (fixed.count(v.ref)) continue;
    RationalLp::Row row;
    row.coeffs.assign(lp.num_vars, 0);
    row.coeffs[id_map.at(static_cast<int>(j))] = 1;
    row.relation = RationalRelation::kLe;
    row.rhs = Rational(v.upper) - Rational(v.lower);
    lp.rows.push_back(std::move(row));
  }
  for (const Constraint& c : program.constraints) {
    RationalLp::Row row;
    row.coeffs.assign(lp.num_vars, 0);
    Rational rhs(c.rhs);
    for (const Term& t : c.terms) {
      REQUIRE(t.degree() == 1);  // two-player MIMLP1 with b fixed is linear
      const int var = t.vars[0];
      const Variable& v = program.variables[var];
      const Rational coeff(t.coeff);
      const auto fixed_it = fixed.find(v.ref);
      if (fixed_it != fixed.end()) {
        rhs -= coeff * fixed_it->second;
      } else {
        row.coeffs[id_map.at(var)] += coeff;
        rhs -= coeff * Rational(v.lower);  // shift
      }
    }
    switch (c.relation) {
      case Relation::kLe: row.relation = RationalRelation::kLe; break;
      case Relation::kEq: row.relation = RationalRelation::kEq; break;
      case Relation::kGe: row.relation = RationalRelation::kGe; break;
    }
    row.rhs = rhs;
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

}  // namespace

TEST_CASE("MIMLP1 b-patterns recover exactly the support-enumeration sets") {
  // Proposition-style property: the set of x-parts feasible for the built
  // MIMLP1 with b fixed to the complement of a support pattern equals the
  // definitional support system. Checked pattern by pattern on small games.
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Game game = Rg(2, 2 + static_cast<int>(seed % 2), 60 + seed);
    const MultilinearProgram program = BuildMimlp(1, game);
    const int m = game.num_strategies(0);
    const int n = game.num_strategies(1);
    for (unsigned mask1 = 1; mask1 < (1u << m); ++mask1) {
      for (unsigned mask2 = 1; mask2 < (1u << n); ++mask2) {
        // b[i,s] = 1 exactly off the support.
        std::map<VariableRef, Rational> fixed;
        for (int s = 0; s < m; ++s) {
          fixed[{VarKind::kB, 0, s}] = (mask1 >> s & 1) ? 0 : 1;
        }
        for (int t = 0; t < n; ++t) {
          fixed[{VarKind::kB, 1, t}] = (mask2 >> t & 1) ? 0 : 1;
        }
        const RationalLp system = MimlpPatternSystem(program, fixed);
        const RationalLpResult result = SolveRationalLp(system);
        const bool mimlp_feasible =
            result.status == RationalLpResult::Status::kOptimal;
        const bool oracle_feasible =
            oracle::SupportFeasible(game, mask1, mask2, nullptr);
        CHECK(mimlp_feasible == oracle_feasible);
        if (mimlp_feasible) {
          // The witness x-part is an exact equilibrium.
          oracle::ExactProfile witness;
          witness.distributions.resize(2);
          int next = 0;
          for (std::size_t j = 0; j < program.variables.size(); ++j) {
            const Variable& v = program.variables[j];
            if (fixed.count(v.ref)) continue;
            if (v.ref.kind == VarKind::kX) {
              witness.distributions[v.ref.player].push_back(
                  result.x[next] + Rational(v.lower));
            }
            ++next;
          }
          CHECK(oracle::IsExactEquilibrium(game, witness));
        }
      }
    }
  }
}

}  // namespace
}  // namespace multinash
