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

#include "multinash/solver_global.h"

#include <cmath>

#include "doctest.h"
#include "multinash/errors.h"
#include "multinash/generators.h"
#include "multinash/solver_local.h"
#include "oracles/brute_force.h"
#include "oracles/support_enum.h"

namespace multinash {
namespace {

Game Rg(int players, int strategies, std::uint64_t seed) {
  InstanceSpec spec;
  spec.family = GameFamily::kRandom;
  spec.num_players = players;
  spec.strategy_counts.assign(players, strategies);
  spec.seed = seed;
  return GenerateRandomGame(spec);
}

BoxNode RootBox(const MultilinearProgram& program) {
  BoxNode node;
  for (const Variable& v : program.variables) {
    node.lower.push_back(v.lower);
    node.upper.push_back(v.upper);
  }
  return node;
}

// A one-constraint program over three probability-like variables whose
// product must reach at least 0.1.
MultilinearProgram TripleProductProgram() {
  MultilinearProgram p;
  for (int s = 0; s < 3; ++s) {
    p.variables.push_back({{VarKind::kX, 0, s}, 0.0, 1.0, false});
  }
  Constraint c;
  c.terms = {{1.0, {0, 1, 2}}};
  c.relation = Relation::kGe;
  c.rhs = 0.1;
  c.label = "product";
  p.constraints.push_back(std::move(c));
  p.sense = Sense::kFeasibility;
  p.strategy_counts = {3};
  return p;
}

TEST_CASE("relaxation chains a degree-3 product with 8 envelope rows") {
  MultilinearProgram p = TripleProductProgram();
  const LinearRelaxation relaxation = Relax(p, RootBox(p), 0.0);
  CHECK(relaxation.lp.num_vars == 5);  // x1 x2 x3 + w12 + w123
  REQUIRE(relaxation.links.size() == 2);
  CHECK(relaxation.links[0].left == 0);
  CHECK(relaxation.links[0].right == 1);
  CHECK(relaxation.links[1].left == 3);
  CHECK(relaxation.links[1].right == 2);
  // 4 McCormick rows per link plus the one program row.
  CHECK(relaxation.lp.rows.size() == 9);
  CHECK(relaxation.links[1].support == std::vector<int>{0, 1, 2});
}

TEST_CASE("a pinned b interval forces the squared product") {
  MultilinearProgram p;
  p.variables.push_back({{VarKind::kB, 0, 0}, 0.0, 1.0, false});
  Constraint c;
  c.terms = {{1.0, {0}}, {-1.0, {0, 0}}};
  c.relation = Relation::kEq;
  c.rhs = 0.0;
  c.label = "bsq[0,0]";
  p.constraints.push_back(std::move(c));
  p.sense = Sense::kFeasibility;
  p.strategy_counts = {1};

  BoxNode node = RootBox(p);
  node.lower[0] = 1.0;
  node.upper[0] = 1.0;
  const LinearRelaxation relaxation = Relax(p, node, 0.0);
  const LpResult lp = SolveLp(relaxation.lp);
  REQUIRE(lp.status == LpStatus::kOptimal);
  CHECK(lp.x[0] == doctest::Approx(1.0));
  CHECK(lp.x[1] == doctest::Approx(1.0));  // w = b^2 pinned to 1
}

TEST_CASE("relaxation admits the true equilibrium point") {
  Game mp = NamedGame("matching_pennies");
  MultilinearProgram p = BuildMlp2(mp);
  const BoxNode root = RootBox(p);
  const LinearRelaxation relaxation = Relax(p, root, 1e-7);

  // Extend the equilibrium with exact products and check every LP row.
  const Assignment a = ConsistentAssignment(p, mp, UniformProfile(mp));
  std::vector<double> point(relaxation.lp.num_vars, 0.0);
  for (std::size_t j = 0; j < p.variables.size(); ++j) {
    point[j] = a.at(p.variables[j].ref);
  }
  for (const BilinearLink& link : relaxation.links) {
    point[link.product] = point[link.left] * point[link.right];
  }
  for (const auto& row : relaxation.lp.rows) {
    double lhs = 0.0;
    for (int j = 0; j < relaxation.lp.num_vars; ++j) {
      lhs += row.coeffs[j] * point[j];
    }
    if (row.relation == RowRelation::kLe) CHECK(lhs <= row.rhs + 1e-9);
    if (row.relation == RowRelation::kGe) CHECK(lhs >= row.rhs - 1e-9);
    if (row.relation == RowRelation::kEq) {
      CHECK(lhs == doctest::Approx(row.rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("child relaxation bounds never improve on the parent") {
  Game game = Rg(2, 3, 21);
  MultilinearProgram p = BuildMimlp(2, game);
  const BoxNode root = RootBox(p);
  const LpResult root_lp = SolveLp(Relax(p, root, 1e-7).lp);
  REQUIRE(root_lp.status == LpStatus::kOptimal);
  // Split the first x variable in half and re-solve both children.
  for (const bool low : {true, false}) {
    BoxNode child = root;
    if (low) child.upper[0] = 0.5; else child.lower[0] = 0.5;
    const LpResult child_lp = SolveLp(Relax(p, child, 1e-7).lp);
    REQUIRE(child_lp.status == LpStatus::kOptimal);
    CHECK(child_lp.value >= root_lp.value - 1e-9);  // min sense
  }
}

TEST_CASE("branch selection priorities") {
  MultilinearProgram p = TripleProductProgram();
  p.variables.push_back({{VarKind::kB, 0, 3}, 0.0, 1.0, true});
  const BoxNode root = RootBox(p);
  const LinearRelaxation relaxation = Relax(p, root, 0.0);

  SUBCASE("a fractional b wins over product violations") {
    // lp column order: x0 x1 x2 b w12 w123; b sits at 0.5.
    const std::vector<double> point = {0.5, 0.5, 0.5, 0.5, 0.9, 0.9};
    const auto decision = SelectBranch(p, root, relaxation, point, 1e-6);
    REQUIRE(decision.has_value());
    CHECK(decision->on_binary);
    CHECK(decision->variable == 3);
  }

  SUBCASE("exact products and integral b mean no branch") {
    std::vector<double> point = {0.5, 0.5, 0.4, 1.0, 0.25, 0.1};
    const auto decision = SelectBranch(p, root, relaxation, point, 1e-6);
    CHECK_FALSE(decision.has_value());
  }

  SUBCASE("the most violated product picks its widest original variable") {
    std::vector<double> point = {0.5, 0.5, 0.4, 1.0, 0.7, 0.1};
    // |w12 - x0 x1| = 0.45 dominates |w123 - w12 x2| = |0.1 - 0.28| = 0.18.
    const auto decision = SelectBranch(p, root, relaxation, point, 1e-6);
    REQUIRE(decision.has_value());
    CHECK_FALSE(decision->on_binary);
    CHECK(decision->variable == 0);  // ties by width go to the lowest id
    // An independent scan over links confirms the violation ordering.
    double v01 = std::abs(point[4] - point[0] * point[1]);
    double v2 = std::abs(point[5] - point[4] * point[2]);
    CHECK(v01 > v2);
  }
}

TEST_CASE("solve matching pennies through MLP2") {
  Game mp = NamedGame("matching_pennies");
  MultilinearProgram p = BuildMlp2(mp);
  GlobalConfig config;
  config.time_limit_s = 60;
  const SolveReport report = SolveGlobal(p, mp, config);
  REQUIRE(report.status == SolveStatus::kEquilibriumFound);
  REQUIRE(report.profile.has_value());
  for (int i = 0; i < 2; ++i) {
    for (int s = 0; s < 2; ++s) {
      CHECK(std::abs(report.profile->distributions[i][s] - 0.5) <= 1e-6);
    }
  }
  CHECK(report.max_regret <= 1e-6);
  CHECK(oracle::BruteForceMaxRegret(mp, *report.profile) <= 1e-6);
}

TEST_CASE("solve coordination through MLP2 lands on a known equilibrium") {
  Game coord = NamedGame("coordination_2x2");
  MultilinearProgram p = BuildMlp2(coord);
  GlobalConfig config;
  config.time_limit_s = 60;
  const SolveReport report = SolveGlobal(p, coord, config);
  REQUIRE(report.status == SolveStatus::kEquilibriumFound);
  const double d = oracle::DistanceToEquilibriumSet(coord, *report.profile)
                       .convert_to<double>();
  CHECK(d <= 1e-5);
}

TEST_CASE("MIMLP4 on matching pennies attains the known optimum") {
  Game mp = NamedGame("matching_pennies");
  MultilinearProgram p = BuildMimlp(4, mp);
  GlobalConfig config;
  config.time_limit_s = 120;
  const SolveReport report = SolveGlobal(p, mp, config);
  REQUIRE(report.status == SolveStatus::kEquilibriumFound);
  CHECK(report.objective == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("found equilibria are re-certified by the oracle") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Game game = Rg(2 + static_cast<int>(seed % 2), 3, 500 + seed);
    MultilinearProgram p = BuildMlp2(game);
    GlobalConfig config;
    config.time_limit_s = 60;
    const SolveReport report = SolveGlobal(p, game, config);
    if (report.status == SolveStatus::kEquilibriumFound) {
      CHECK(oracle::BruteForceMaxRegret(game, *report.profile) <= 1e-6);
    }
  }
}

TEST_CASE("deterministic repeat runs are identical") {
  Game game = Rg(3, 3, 77);
  MultilinearProgram p = BuildMlp2(game);
  GlobalConfig config;
  config.time_limit_s = 60;
  const SolveReport a = SolveGlobal(p, game, config);
  const SolveReport b = SolveGlobal(p, game, config);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK(a.lp_iterations == b.lp_iterations);
  REQUIRE(a.profile.has_value());
  REQUIRE(b.profile.has_value());
  CHECK(a.profile->distributions == b.profile->distributions);
}

TEST_CASE("feasibility search with binaries terminates within the budget") {
  Game mp = NamedGame("matching_pennies");
  MultilinearProgram p = BuildMimlp(1, mp);
  GlobalConfig config;
  config.time_limit_s = 120;
  config.node_limit = 5000;
  config.eps_term = 1e-9;  // only near-exact nodes become candidates
  const SolveReport report = SolveGlobal(p, mp, config);
  CHECK(report.status == SolveStatus::kEquilibriumFound);
  CHECK(report.nodes_explored <= 5000);
}

TEST_CASE("time limit returns the best profile found so far") {
  Game game = Rg(3, 3, 13);
  MultilinearProgram p = BuildMlp1(game);  // optimality proof is slow
  GlobalConfig config;
  config.time_limit_s = 0.3;
  const SolveReport report = SolveGlobal(p, game, config);
  if (report.status == SolveStatus::kTimeLimit) {
    CHECK(report.wall_time_s >= 0.3);
    CHECK(report.profile.has_value());
  } else {
    CHECK(report.status == SolveStatus::kEquilibriumFound);
  }
}

TEST_CASE("node limit status") {
  Game game = Rg(3, 3, 14);
  MultilinearProgram p = BuildMlp1(game);
  GlobalConfig config;
  config.time_limit_s = 60;
  config.node_limit = 3;
  const SolveReport report = SolveGlobal(p, game, config);
  CHECK((report.status == SolveStatus::kNodeLimit ||
         report.status == SolveStatus::kEquilibriumFound));
}

TEST_CASE("global config parsing") {
  const GlobalConfig config = ParseGlobalConfig(
      "time_limit=12.5;node_limit=100;eps_regret=1e-7;eps_feas=1e-8;"
      "workers=2;deterministic=0");
  CHECK(config.time_limit_s == doctest::Approx(12.5));
  CHECK(config.node_limit == 100);
  CHECK(config.eps_regret == doctest::Approx(1e-7));
  CHECK(config.eps_feas == doctest::Approx(1e-8));
  CHECK(config.workers == 2);
  CHECK_FALSE(config.deterministic);
  CHECK_THROWS_AS(ParseGlobalConfig("bogus=1"), ParseError);
  CHECK_THROWS_AS(ParseGlobalConfig("workers=0"), ValidationError);
}

TEST_CASE("worker fan-out finds the same equilibria") {
  Game game = Rg(2, 3, 91);
  MultilinearProgram p = BuildMlp2(game);
  GlobalConfig config;
  config.time_limit_s = 60;
  config.deterministic = false;
  config.workers = 4;
  const SolveReport report = SolveGlobal(p, game, config);
  REQUIRE(report.status == SolveStatus::kEquilibriumFound);
  CHECK(oracle::BruteForceMaxRegret(game, *report.profile) <= 1e-6);
}

}  // namespace
}  // namespace multinash
