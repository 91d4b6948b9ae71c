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

#ifndef MULTINASH_SOLVER_GLOBAL_H_
#define MULTINASH_SOLVER_GLOBAL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multinash/formulations.h"
#include "multinash/game.h"
#include "multinash/simplex.h"
#include "multinash/solve_report.h"

namespace multinash {

struct GlobalConfig {
  double time_limit_s = 300.0;
  long node_limit = 1000000000L;
  double eps_regret = 1e-6;
  // Constraint-violation tolerance: inequality rows of the relaxation (in
  // particular MLP2's surplus row) are slackened by this much, and incumbent
  // assignments are evaluated against it. The regret certificate, not LP
  // feasibility, is what EquilibriumFound promises.
  double eps_feas = 1e-7;
  // A node whose LP point has all bilinear products within eps_term and all
  // b-variables integral is eligible for an incumbent attempt.
  double eps_term = 0.1;
  double binary_delta = 1e-6;  // integrality window for b-branching
  double gap_abs = 1e-5;       // absolute optimality gap for min/max senses
  int workers = 1;
  bool deterministic = true;
  int polish_iters = 1200;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Accepts time_limit, node_limit, eps_regret, eps_feas, eps_term, gap_abs,
// workers, deterministic, polish_iters, seed.
GlobalConfig ParseGlobalConfig(const std::string& text);

// One box of the spatial search: interval bounds per program variable.
// Binary variables only ever hold [0,0], [1,1] or [0,1].
struct BoxNode {
  std::vector<double> lower;
  std::vector<double> upper;
  int depth = 0;
  std::int64_t id = 0;
  double parent_bound = 0.0;
  std::optional<int> pending_branch_variable;
};

// w approximates left*right (or left^2 when square). `support` lists the
// original program variables under this product, for branching fallbacks.
struct BilinearLink {
  int product = -1;
  int left = -1;
  int right = -1;
  bool square = false;
  std::vector<int> support;
};

// LP relaxation of a program over a box: every multilinear term is chained
// into bilinear products (sorted variable ids, left fold) with one auxiliary
// column per distinct prefix, each product wrapped in its McCormick envelope
// (secant and tangents for squares).
struct LinearRelaxation {
  LinearProgram lp;
  int num_program_vars = 0;
  std::vector<BilinearLink> links;
};

LinearRelaxation Relax(const MultilinearProgram& program, const BoxNode& node,
                       double eps_feas);

// Largest |w - left*right| over the relaxation's links at an LP point.
double MaxProductViolation(const LinearRelaxation& relaxation,
                           const std::vector<double>& lp_point);

struct BranchDecision {
  int variable = -1;
  double split_point = 0.0;
  bool on_binary = false;  // children are [0,0] and [1,1]
};

// Branching rule: first a b-variable whose LP value is fractional beyond
// binary_delta (split to its two integral points); otherwise the widest
// original variable of the most violated product, split at the LP value
// clamped to the middle 80% of its interval. Returns nullopt when nothing
// branchable remains.
std::optional<BranchDecision> SelectBranch(const MultilinearProgram& program,
                                           const BoxNode& node,
                                           const LinearRelaxation& relaxation,
                                           const std::vector<double>& lp_point,
                                           double binary_delta);

// Deterministic spatial branch-and-bound. Feasibility-sense programs are
// searched depth-first, most-feasible child first (any feasible point is an
// equilibrium); optimality senses best-first on the relaxation bound. Every
// candidate incumbent is polished by the local solver and certified through
// the game's regret before acceptance.
SolveReport SolveGlobal(const MultilinearProgram& program, const Game& game,
                        const GlobalConfig& config);

}  // namespace multinash

#endif  // MULTINASH_SOLVER_GLOBAL_H_
