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

#ifndef MULTINASH_FORMULATIONS_H_
#define MULTINASH_FORMULATIONS_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multinash/game.h"

namespace multinash {

// Variable roles across all formulations. The enum order is the canonical
// variable ordering of a program (kind major; player, index minor).
enum class VarKind : std::uint8_t {
  kX,     // x[i,s]: probability player i puts on pure strategy s
  kP,     // p[i]: player i's highest expected payoff (MLP/BLP)
  kUbar,  // ubar[i]: best pure-response value (MIMLPs)
  kU,     // u[i,s]: expected utility of committing to s
  kR,     // r[i,s]: regret of s
  kB,     // b[i,s]: strategy-selection indicator
  kF,     // f[i,s]: penalised regret
  kG,     // g[i,s]: penalised probability
  kAux,   // aux[k]: reserved for derived programs
};

struct VariableRef {
  VarKind kind = VarKind::kX;
  int player = 0;
  int index = 0;  // strategy index; 0 for per-player kinds; aux id for kAux

  auto operator<=>(const VariableRef&) const = default;
};

std::string VariableName(const VariableRef& ref);
VariableRef ParseVariableName(const std::string& name);

struct Variable {
  VariableRef ref;
  double lower = 0.0;
  double upper = 1.0;
  bool is_binary = false;

  bool operator==(const Variable&) const = default;
};

// coeff * product of the referenced variables. Multilinear terms reference
// distinct variables; the only repeated-variable form is b*b from the
// continuous reformulation of binaries. `vars` holds variable ids into the
// owning program's roster, sorted ascending.
struct Term {
  double coeff = 0.0;
  std::vector<int> vars;

  int degree() const { return static_cast<int>(vars.size()); }
  bool operator==(const Term&) const = default;
};

enum class Relation : std::uint8_t { kLe, kEq, kGe };

struct Constraint {
  std::vector<Term> terms;
  Relation relation = Relation::kLe;
  double rhs = 0.0;
  std::string label;  // stable diagnostic name, e.g. "bestresp[1,2]"

  bool operator==(const Constraint&) const = default;
};

enum class Sense : std::uint8_t { kMaximize, kMinimize, kFeasibility };

struct FormulationId {
  enum class Base : std::uint8_t {
    kBlp,
    kMlp1,
    kMlp2,
    kMimlp1,
    kMimlp2,
    kMimlp3,
    kMimlp4,
  };
  Base base = Base::kMlp2;
  bool continuous = false;
  bool feasibility = false;

  bool operator==(const FormulationId&) const = default;
};

// Text codes drop the parentheses: MIMLP3, MIMLP3C, MIMLP3F, MIMLP3CF, ...
std::string FormulationCode(const FormulationId& id);
FormulationId ParseFormulationCode(const std::string& code);
bool IsLegalFormulation(const FormulationId& id);
// All 17 legal ids in a fixed order.
std::vector<FormulationId> AllFormulations();

// The common intermediate representation every formulation compiles to:
// variables with bounds and binary flags, constraints and objective linear
// in multilinear terms.
struct MultilinearProgram {
  std::vector<Variable> variables;  // sorted by VariableRef
  std::vector<Constraint> constraints;
  Sense sense = Sense::kFeasibility;
  std::vector<Term> objective;      // empty for feasibility programs
  double objective_constant = 0.0;  // e.g. -sum |S_i| in MIMLP3's objective

  FormulationId id;
  std::vector<int> strategy_counts;
  std::optional<double> target_value;  // known optimum of optimality programs
  std::uint64_t game_hash = 0;
  bool continuous_noop = false;  // apply_continuous found nothing to relax

  // Index of `ref` in `variables`; throws ValidationError when absent.
  int VarId(const VariableRef& ref) const;
  int num_binary() const;
};

// Stable fingerprint of a game's shape and payoff bytes (for META sections).
std::uint64_t GameFingerprint(const Game& game);

// Compile `game` into the formulation `id`. Throws ValidationError on
// illegal ids and on BLP with n != 2.
MultilinearProgram Build(const FormulationId& id, const Game& game);

MultilinearProgram BuildMlp1(const Game& game);
MultilinearProgram BuildMlp2(const Game& game);
MultilinearProgram BuildBlp(const Game& game);
MultilinearProgram BuildMimlp(int k, const Game& game);

// Replaces every binary b by its continuous reformulation b = b^2.
MultilinearProgram ApplyContinuous(const MultilinearProgram& program);

// Pins the objective to its known optimal value and switches the program to
// feasibility sense.
MultilinearProgram ApplyFeasibility(const MultilinearProgram& program);

struct PointEvaluation {
  double objective = 0.0;
  // Max over constraints of signed infeasibility plus bound and integrality
  // violations; 0 when the point is feasible.
  double max_violation = 0.0;
};

using Assignment = std::map<VariableRef, double>;

PointEvaluation EvaluatePoint(const MultilinearProgram& program,
                              const Assignment& assignment);
// Same, with values indexed by variable id.
PointEvaluation EvaluatePointVec(const MultilinearProgram& program,
                                 const std::vector<double>& values);

struct ExtractedProfile {
  MixedProfile profile;
  // Max over players of |sum of raw probabilities - 1| before renormalizing.
  double renormalization = 0.0;
};

// Reads the X variables out of an assignment, clips to [0,1] and renormalizes
// each player's simplex. Throws CorruptionError when a raw simplex sum is
// below 0.5.
ExtractedProfile ExtractProfile(const MultilinearProgram& program,
                                const Assignment& assignment);
ExtractedProfile ExtractProfileVec(const MultilinearProgram& program,
                                   const std::vector<double>& values);

// Extends a mixed profile to a full assignment with consistently derived
// auxiliary variables (u, ubar, r, p, and per-formulation b, f, g). At an
// exact equilibrium the result is feasible for every formulation.
Assignment ConsistentAssignment(const MultilinearProgram& program,
                                const Game& game, const MixedProfile& profile);

}  // namespace multinash

#endif  // MULTINASH_FORMULATIONS_H_
