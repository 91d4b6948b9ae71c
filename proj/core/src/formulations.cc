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

#include "multinash/formulations.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "multinash/errors.h"

namespace multinash {

namespace {

// Big-M constant: the player's payoff spread, substituting 1 when the tensor
// is constant (every strategy has zero regret then, so semantics are
// unchanged and (mip_17)'s division stays defined).
double SafeSpread(const Game& game, int player) {
  const double spread = PayoffSpread(game, player);
  return spread > 0.0 ? spread : 1.0;
}

std::string Idx(int i) { return "[" + std::to_string(i) + "]"; }
std::string Idx(int i, int s) {
  return "[" + std::to_string(i) + "," + std::to_string(s) + "]";
}

// Iterates the pure profiles of all players except `skip` in lexicographic
// order, keeping a full profile with `skip`'s coordinate pinned.
class OpponentProfiles {
 public:
  OpponentProfiles(const Game& game, int skip, int pinned)
      : game_(game), skip_(skip), profile_(game.num_players(), 0) {
    profile_[skip_] = pinned;
  }

  const PureProfile& profile() const { return profile_; }

  bool Next() {
    for (int pos = game_.num_players() - 1; pos >= 0; --pos) {
      if (pos == skip_) continue;
      if (++profile_[pos] < game_.num_strategies(pos)) return true;
      profile_[pos] = 0;
    }
    return false;
  }

 private:
  const Game& game_;
  int skip_;
  PureProfile profile_;
};

bool NextFullProfile(const Game& game, PureProfile& s) {
  for (int pos = game.num_players() - 1; pos >= 0; --pos) {
    if (++s[pos] < game.num_strategies(pos)) return true;
    s[pos] = 0;
  }
  return false;
}

// Shared skeleton for variable rosters: X block first, then the requested
// per-player / per-strategy blocks in VarKind order.
class ProgramBuilder {
 public:
  explicit ProgramBuilder(const Game& game) : game_(game) {
    program_.strategy_counts = game.strategy_counts();
    program_.game_hash = GameFingerprint(game);
  }

  void AddXVariables() {
    for (int i = 0; i < game_.num_players(); ++i) {
      for (int s = 0; s < game_.num_strategies(i); ++s) {
        Add({VarKind::kX, i, s}, 0.0, 1.0, false);
      }
    }
  }
  void AddPerPlayer(VarKind kind) {
    for (int i = 0; i < game_.num_players(); ++i) {
      const auto& t = game_.payoff_tensor(i);
      const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
      Add({kind, i, 0}, *lo, *hi, false);
    }
  }
  void AddPerStrategy(VarKind kind, double lower_for_player(const Game&, int),
                      double upper_for_player(const Game&, int),
                      bool binary) {
    for (int i = 0; i < game_.num_players(); ++i) {
      for (int s = 0; s < game_.num_strategies(i); ++s) {
        Add({kind, i, s}, lower_for_player(game_, i),
            upper_for_player(game_, i), binary);
      }
    }
  }

  int Id(VarKind kind, int player, int index = 0) const {
    return program_.VarId({kind, player, index});
  }

  // u[i,s] definition row and the per-strategy best-response rows share the
  // same multilinear body: sum over opponent tuples of
  // A_i[s, opp] * prod_j x[j, opp_j].
  std::vector<Term> UtilityTerms(int player, int pure, double sign) {
    std::vector<Term> terms;
    OpponentProfiles it(game_, player, pure);
    do {
      Term term;
      term.coeff = sign * game_.payoff(player, it.profile());
      for (int j = 0; j < game_.num_players(); ++j) {
        if (j != player) term.vars.push_back(Id(VarKind::kX, j, it.profile()[j]));
      }
      terms.push_back(std::move(term));
    } while (it.Next());
    return terms;
  }

  // Degree-n welfare terms: for every player i and full profile s,
  // A_i[s] * prod_j x[j, s_j].
  std::vector<Term> WelfareTerms() {
    std::vector<Term> terms;
    for (int i = 0; i < game_.num_players(); ++i) {
      PureProfile s(game_.num_players(), 0);
      do {
        Term term;
        term.coeff = game_.payoff(i, s);
        for (int j = 0; j < game_.num_players(); ++j) {
          term.vars.push_back(Id(VarKind::kX, j, s[j]));
        }
        terms.push_back(std::move(term));
      } while (NextFullProfile(game_, s));
    }
    return terms;
  }

  void AddSimplexRows() {
    for (int i = 0; i < game_.num_players(); ++i) {
      Constraint c;
      for (int s = 0; s < game_.num_strategies(i); ++s) {
        c.terms.push_back({1.0, {Id(VarKind::kX, i, s)}});
      }
      c.relation = Relation::kEq;
      c.rhs = 1.0;
      c.label = "simplex" + Idx(i);
      program_.constraints.push_back(std::move(c));
    }
  }

  void AddRow(Constraint c) { program_.constraints.push_back(std::move(c)); }

  const Game& game() const { return game_; }
  MultilinearProgram& program() { return program_; }

 private:
  void Add(VariableRef ref, double lower, double upper, bool binary) {
    program_.variables.push_back({ref, lower, upper, binary});
  }

  MultilinearProgram program_;
  const Game& game_;
};

double ZeroLower(const Game&, int) { return 0.0; }
double OneUpper(const Game&, int) { return 1.0; }
double SpreadUpper(const Game& game, int player) {
  return SafeSpread(game, player);
}

MultilinearProgram BuildMlpCommon(const Game& game, FormulationId::Base base) {
  ProgramBuilder b(game);
  b.AddXVariables();
  b.AddPerPlayer(VarKind::kP);

  const int n = game.num_players();
  // Best-response rows: every pure strategy's utility is at most p[i].
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < game.num_strategies(i); ++s) {
      Constraint c;
      c.terms = b.UtilityTerms(i, s, 1.0);
      c.terms.push_back({-1.0, {b.Id(VarKind::kP, i)}});
      c.relation = Relation::kLe;
      c.rhs = 0.0;
      c.label = "bestresp" + Idx(i, s);
      b.AddRow(std::move(c));
    }
  }

  std::vector<Term> welfare = b.WelfareTerms();
  for (int i = 0; i < n; ++i) welfare.push_back({-1.0, {b.Id(VarKind::kP, i)}});

  MultilinearProgram& p = b.program();
  if (base == FormulationId::Base::kMlp2) {
    // The surplus row carries the parent objective; any feasible point is a
    // Nash equilibrium.
    Constraint c;
    c.terms = std::move(welfare);
    c.relation = Relation::kGe;
    c.rhs = 0.0;
    c.label = "surplus";
    b.AddRow(std::move(c));
    p.sense = Sense::kFeasibility;
  } else {
    p.sense = Sense::kMaximize;
    p.objective = std::move(welfare);
    p.target_value = 0.0;
  }
  b.AddSimplexRows();
  p.id.base = base;
  return std::move(p);
}

}  // namespace

std::string VariableName(const VariableRef& ref) {
  switch (ref.kind) {
    case VarKind::kX:
      return "x" + Idx(ref.player, ref.index);
    case VarKind::kP:
      return "p" + Idx(ref.player);
    case VarKind::kUbar:
      return "ubar" + Idx(ref.player);
    case VarKind::kU:
      return "u" + Idx(ref.player, ref.index);
    case VarKind::kR:
      return "r" + Idx(ref.player, ref.index);
    case VarKind::kB:
      return "b" + Idx(ref.player, ref.index);
    case VarKind::kF:
      return "f" + Idx(ref.player, ref.index);
    case VarKind::kG:
      return "g" + Idx(ref.player, ref.index);
    case VarKind::kAux:
      return "aux[" + std::to_string(ref.index) + "]";
  }
  throw ArgumentError("unknown variable kind");
}

VariableRef ParseVariableName(const std::string& name) {
  const auto open = name.find('[');
  const auto close = name.rfind(']');
  if (open == std::string::npos || close == std::string::npos ||
      close < open) {
    throw ParseError("bad variable name '" + name + "'");
  }
  const std::string head = name.substr(0, open);
  const std::string body = name.substr(open + 1, close - open - 1);
  VariableRef ref;
  if (head == "x") ref.kind = VarKind::kX;
  else if (head == "p") ref.kind = VarKind::kP;
  else if (head == "ubar") ref.kind = VarKind::kUbar;
  else if (head == "u") ref.kind = VarKind::kU;
  else if (head == "r") ref.kind = VarKind::kR;
  else if (head == "b") ref.kind = VarKind::kB;
  else if (head == "f") ref.kind = VarKind::kF;
  else if (head == "g") ref.kind = VarKind::kG;
  else if (head == "aux") ref.kind = VarKind::kAux;
  else throw ParseError("bad variable name '" + name + "'");

  const auto comma = body.find(',');
  try {
    if (ref.kind == VarKind::kAux) {
      ref.index = std::stoi(body);
    } else if (comma == std::string::npos) {
      ref.player = std::stoi(body);
    } else {
      ref.player = std::stoi(body.substr(0, comma));
      ref.index = std::stoi(body.substr(comma + 1));
    }
  } catch (const std::exception&) {
    throw ParseError("bad variable name '" + name + "'");
  }
  return ref;
}

std::string FormulationCode(const FormulationId& id) {
  std::string code;
  switch (id.base) {
    case FormulationId::Base::kBlp: code = "BLP"; break;
    case FormulationId::Base::kMlp1: code = "MLP1"; break;
    case FormulationId::Base::kMlp2: code = "MLP2"; break;
    case FormulationId::Base::kMimlp1: code = "MIMLP1"; break;
    case FormulationId::Base::kMimlp2: code = "MIMLP2"; break;
    case FormulationId::Base::kMimlp3: code = "MIMLP3"; break;
    case FormulationId::Base::kMimlp4: code = "MIMLP4"; break;
  }
  if (id.continuous) code += "C";
  if (id.feasibility) code += "F";
  return code;
}

FormulationId ParseFormulationCode(const std::string& code) {
  static const std::vector<std::pair<std::string, FormulationId::Base>> bases =
      {{"MIMLP1", FormulationId::Base::kMimlp1},
       {"MIMLP2", FormulationId::Base::kMimlp2},
       {"MIMLP3", FormulationId::Base::kMimlp3},
       {"MIMLP4", FormulationId::Base::kMimlp4},
       {"MLP1", FormulationId::Base::kMlp1},
       {"MLP2", FormulationId::Base::kMlp2},
       {"BLP", FormulationId::Base::kBlp}};
  for (const auto& [prefix, base] : bases) {
    if (code.rfind(prefix, 0) != 0) continue;
    std::string suffix = code.substr(prefix.size());
    FormulationId id{base, false, false};
    if (suffix == "") {
    } else if (suffix == "C") {
      id.continuous = true;
    } else if (suffix == "F") {
      id.feasibility = true;
    } else if (suffix == "CF") {
      id.continuous = id.feasibility = true;
    } else {
      throw LookupError("unknown formulation code '" + code + "'");
    }
    if (!IsLegalFormulation(id)) {
      throw ValidationError("illegal formulation combination '" + code + "'");
    }
    return id;
  }
  throw LookupError("unknown formulation code '" + code + "'");
}

bool IsLegalFormulation(const FormulationId& id) {
  using Base = FormulationId::Base;
  switch (id.base) {
    case Base::kBlp:
    case Base::kMlp1:
    case Base::kMlp2:
      return !id.continuous && !id.feasibility;
    case Base::kMimlp1:
      return !id.feasibility;
    case Base::kMimlp2:
    case Base::kMimlp3:
    case Base::kMimlp4:
      return true;
  }
  return false;
}

std::vector<FormulationId> AllFormulations() {
  using Base = FormulationId::Base;
  std::vector<FormulationId> ids = {{Base::kBlp, false, false},
                                    {Base::kMlp1, false, false},
                                    {Base::kMlp2, false, false},
                                    {Base::kMimlp1, false, false},
                                    {Base::kMimlp1, true, false}};
  for (Base base : {Base::kMimlp2, Base::kMimlp3, Base::kMimlp4}) {
    ids.push_back({base, false, false});
    ids.push_back({base, true, false});
    ids.push_back({base, false, true});
    ids.push_back({base, true, true});
  }
  return ids;
}

int MultilinearProgram::VarId(const VariableRef& ref) const {
  const auto it = std::lower_bound(
      variables.begin(), variables.end(), ref,
      [](const Variable& v, const VariableRef& r) { return v.ref < r; });
  if (it == variables.end() || !(it->ref == ref)) {
    throw ValidationError("variable " + VariableName(ref) +
                          " not in program");
  }
  return static_cast<int>(it - variables.begin());
}

int MultilinearProgram::num_binary() const {
  int count = 0;
  for (const auto& v : variables) count += v.is_binary ? 1 : 0;
  return count;
}

std::uint64_t GameFingerprint(const Game& game) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(game.num_players()));
  for (int c : game.strategy_counts()) mix(static_cast<std::uint64_t>(c));
  for (int i = 0; i < game.num_players(); ++i) {
    for (double v : game.payoff_tensor(i)) mix(std::bit_cast<std::uint64_t>(v));
  }
  return h;
}

MultilinearProgram BuildMlp1(const Game& game) {
  return BuildMlpCommon(game, FormulationId::Base::kMlp1);
}

MultilinearProgram BuildMlp2(const Game& game) {
  return BuildMlpCommon(game, FormulationId::Base::kMlp2);
}

MultilinearProgram BuildBlp(const Game& game) {
  if (game.num_players() != 2) {
    throw ValidationError("BLP is defined for 2-player games only");
  }
  MultilinearProgram p = BuildMlpCommon(game, FormulationId::Base::kBlp);
  return p;
}

MultilinearProgram BuildMimlp(int k, const Game& game) {
  if (k < 1 || k > 4) throw ArgumentError("MIMLP index must be in 1..4");
  ProgramBuilder b(game);
  const int n = game.num_players();

  b.AddXVariables();
  b.AddPerPlayer(VarKind::kUbar);
  // u shares ubar's natural payoff bounds.
  for (int i = 0; i < n; ++i) {
    const auto& t = game.payoff_tensor(i);
    const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
    for (int s = 0; s < game.num_strategies(i); ++s) {
      b.program().variables.push_back({{VarKind::kU, i, s}, *lo, *hi, false});
    }
  }
  b.AddPerStrategy(VarKind::kR, ZeroLower, SpreadUpper, false);
  b.AddPerStrategy(VarKind::kB, ZeroLower, OneUpper, true);
  if (k == 2) b.AddPerStrategy(VarKind::kF, ZeroLower, SpreadUpper, false);
  if (k == 4) b.AddPerStrategy(VarKind::kF, ZeroLower, OneUpper, false);
  if (k == 3 || k == 4) b.AddPerStrategy(VarKind::kG, ZeroLower, OneUpper, false);
  std::sort(b.program().variables.begin(), b.program().variables.end(),
            [](const Variable& a, const Variable& c) { return a.ref < c.ref; });

  b.AddSimplexRows();
  for (int i = 0; i < n; ++i) {
    const double spread = SafeSpread(game, i);
    for (int s = 0; s < game.num_strategies(i); ++s) {
      {
        Constraint c;
        c.terms.push_back({1.0, {b.Id(VarKind::kU, i, s)}});
        auto products = b.UtilityTerms(i, s, -1.0);
        c.terms.insert(c.terms.end(), products.begin(), products.end());
        c.relation = Relation::kEq;
        c.rhs = 0.0;
        c.label = "udef" + Idx(i, s);
        b.AddRow(std::move(c));
      }
      {
        Constraint c;
        c.terms = {{1.0, {b.Id(VarKind::kUbar, i)}},
                   {-1.0, {b.Id(VarKind::kU, i, s)}}};
        c.relation = Relation::kGe;
        c.rhs = 0.0;
        c.label = "ubound" + Idx(i, s);
        b.AddRow(std::move(c));
      }
      {
        Constraint c;
        c.terms = {{1.0, {b.Id(VarKind::kR, i, s)}},
                   {-1.0, {b.Id(VarKind::kUbar, i)}},
                   {1.0, {b.Id(VarKind::kU, i, s)}}};
        c.relation = Relation::kEq;
        c.rhs = 0.0;
        c.label = "rdef" + Idx(i, s);
        b.AddRow(std::move(c));
      }
      if (k == 1 || k == 2) {
        // b can point at a strategy only if no probability is placed on it.
        Constraint c;
        c.terms = {{1.0, {b.Id(VarKind::kX, i, s)}},
                   {1.0, {b.Id(VarKind::kB, i, s)}}};
        c.relation = Relation::kLe;
        c.rhs = 1.0;
        c.label = "noplay" + Idx(i, s);
        b.AddRow(std::move(c));
      }
      if (k == 1 || k == 3) {
        // b can be cleared only if the strategy carries no regret.
        Constraint c;
        c.terms = {{1.0, {b.Id(VarKind::kR, i, s)}},
                   {-spread, {b.Id(VarKind::kB, i, s)}}};
        c.relation = Relation::kLe;
        c.rhs = 0.0;
        c.label = "noregret" + Idx(i, s);
        b.AddRow(std::move(c));
      }
      if (k == 2) {
        Constraint c1;
        c1.terms = {{1.0, {b.Id(VarKind::kF, i, s)}},
                    {-1.0, {b.Id(VarKind::kR, i, s)}}};
        c1.relation = Relation::kGe;
        c1.rhs = 0.0;
        c1.label = "fregret" + Idx(i, s);
        b.AddRow(std::move(c1));
        Constraint c2;
        c2.terms = {{1.0, {b.Id(VarKind::kF, i, s)}},
                    {-spread, {b.Id(VarKind::kB, i, s)}}};
        c2.relation = Relation::kGe;
        c2.rhs = 0.0;
        c2.label = "fselect" + Idx(i, s);
        b.AddRow(std::move(c2));
      }
      if (k == 4) {
        Constraint c1;
        c1.terms = {{1.0, {b.Id(VarKind::kF, i, s)}},
                    {-1.0 / spread, {b.Id(VarKind::kR, i, s)}}};
        c1.relation = Relation::kGe;
        c1.rhs = 0.0;
        c1.label = "fregret" + Idx(i, s);
        b.AddRow(std::move(c1));
        Constraint c2;
        c2.terms = {{1.0, {b.Id(VarKind::kF, i, s)}},
                    {-1.0, {b.Id(VarKind::kB, i, s)}}};
        c2.relation = Relation::kGe;
        c2.rhs = 0.0;
        c2.label = "fselect" + Idx(i, s);
        b.AddRow(std::move(c2));
      }
      if (k == 3 || k == 4) {
        Constraint c1;
        c1.terms = {{1.0, {b.Id(VarKind::kG, i, s)}},
                    {-1.0, {b.Id(VarKind::kX, i, s)}}};
        c1.relation = Relation::kGe;
        c1.rhs = 0.0;
        c1.label = "gprob" + Idx(i, s);
        b.AddRow(std::move(c1));
        Constraint c2;
        c2.terms = {{1.0, {b.Id(VarKind::kG, i, s)}},
                    {1.0, {b.Id(VarKind::kB, i, s)}}};
        c2.relation = Relation::kGe;
        c2.rhs = 1.0;
        c2.label = "gselect" + Idx(i, s);
        b.AddRow(std::move(c2));
      }
    }
  }

  MultilinearProgram& p = b.program();
  int total_strategies = 0;
  for (int i = 0; i < n; ++i) total_strategies += game.num_strategies(i);
  switch (k) {
    case 1:
      p.sense = Sense::kFeasibility;
      p.id.base = FormulationId::Base::kMimlp1;
      break;
    case 2:
      p.sense = Sense::kMinimize;
      for (int i = 0; i < n; ++i) {
        const double spread = SafeSpread(game, i);
        for (int s = 0; s < game.num_strategies(i); ++s) {
          p.objective.push_back({1.0, {b.Id(VarKind::kF, i, s)}});
          p.objective.push_back({-spread, {b.Id(VarKind::kB, i, s)}});
        }
      }
      p.target_value = 0.0;
      p.id.base = FormulationId::Base::kMimlp2;
      break;
    case 3:
      p.sense = Sense::kMinimize;
      for (int i = 0; i < n; ++i) {
        for (int s = 0; s < game.num_strategies(i); ++s) {
          p.objective.push_back({1.0, {b.Id(VarKind::kG, i, s)}});
          p.objective.push_back({1.0, {b.Id(VarKind::kB, i, s)}});
        }
      }
      p.objective_constant = -total_strategies;
      p.target_value = 0.0;
      p.id.base = FormulationId::Base::kMimlp3;
      break;
    case 4:
      p.sense = Sense::kMinimize;
      for (int i = 0; i < n; ++i) {
        for (int s = 0; s < game.num_strategies(i); ++s) {
          p.objective.push_back({1.0, {b.Id(VarKind::kF, i, s)}});
          p.objective.push_back({1.0, {b.Id(VarKind::kG, i, s)}});
        }
      }
      p.target_value = total_strategies;
      p.id.base = FormulationId::Base::kMimlp4;
      break;
  }
  return std::move(p);
}

MultilinearProgram ApplyContinuous(const MultilinearProgram& program) {
  MultilinearProgram out = program;
  bool any = false;
  for (std::size_t id = 0; id < out.variables.size(); ++id) {
    Variable& v = out.variables[id];
    if (!v.is_binary) continue;
    any = true;
    v.is_binary = false;
    v.lower = 0.0;
    v.upper = 1.0;
    Constraint c;
    c.terms = {{1.0, {static_cast<int>(id)}},
               {-1.0, {static_cast<int>(id), static_cast<int>(id)}}};
    c.relation = Relation::kEq;
    c.rhs = 0.0;
    c.label = "bsq" + Idx(v.ref.player, v.ref.index);
    out.constraints.push_back(std::move(c));
  }
  if (!any) {
    out.continuous_noop = true;
    return out;
  }
  out.id.continuous = true;
  return out;
}

MultilinearProgram ApplyFeasibility(const MultilinearProgram& program) {
  if (program.sense != Sense::kMinimize) {
    throw ValidationError(
        "feasibility variant needs an optimality (min) program");
  }
  if (!program.target_value.has_value()) {
    throw ValidationError("feasibility variant needs a known optimal value");
  }
  MultilinearProgram out = program;
  Constraint pin;
  pin.terms = out.objective;
  pin.relation = Relation::kEq;
  pin.rhs = *out.target_value - out.objective_constant;
  pin.label = "objpin";
  out.constraints.push_back(std::move(pin));
  out.sense = Sense::kFeasibility;
  out.objective.clear();
  out.objective_constant = 0.0;
  out.id.feasibility = true;
  return out;
}

MultilinearProgram Build(const FormulationId& id, const Game& game) {
  if (!IsLegalFormulation(id)) {
    throw ValidationError("illegal formulation combination " +
                          FormulationCode(id));
  }
  using Base = FormulationId::Base;
  MultilinearProgram p;
  switch (id.base) {
    case Base::kBlp: p = BuildBlp(game); break;
    case Base::kMlp1: p = BuildMlp1(game); break;
    case Base::kMlp2: p = BuildMlp2(game); break;
    case Base::kMimlp1: p = BuildMimlp(1, game); break;
    case Base::kMimlp2: p = BuildMimlp(2, game); break;
    case Base::kMimlp3: p = BuildMimlp(3, game); break;
    case Base::kMimlp4: p = BuildMimlp(4, game); break;
  }
  if (id.feasibility) p = ApplyFeasibility(p);
  if (id.continuous) p = ApplyContinuous(p);
  return p;
}

namespace {

double EvalTerms(const std::vector<Term>& terms,
                 const std::vector<double>& values) {
  double total = 0.0;
  for (const Term& t : terms) {
    double prod = t.coeff;
    for (int v : t.vars) prod *= values[v];
    total += prod;
  }
  return total;
}

}  // namespace

PointEvaluation EvaluatePointVec(const MultilinearProgram& program,
                                 const std::vector<double>& values) {
  if (values.size() != program.variables.size()) {
    throw ValidationError("assignment does not cover all variables");
  }
  PointEvaluation eval;
  eval.objective = EvalTerms(program.objective, values) +
                   program.objective_constant;
  double violation = 0.0;
  for (std::size_t id = 0; id < program.variables.size(); ++id) {
    const Variable& v = program.variables[id];
    violation = std::max(violation, v.lower - values[id]);
    violation = std::max(violation, values[id] - v.upper);
    if (v.is_binary) {
      violation = std::max(
          violation, std::min(std::abs(values[id]), std::abs(1.0 - values[id])));
    }
  }
  for (const Constraint& c : program.constraints) {
    const double lhs = EvalTerms(c.terms, values);
    switch (c.relation) {
      case Relation::kLe:
        violation = std::max(violation, lhs - c.rhs);
        break;
      case Relation::kGe:
        violation = std::max(violation, c.rhs - lhs);
        break;
      case Relation::kEq:
        violation = std::max(violation, std::abs(lhs - c.rhs));
        break;
    }
  }
  eval.max_violation = violation;
  return eval;
}

PointEvaluation EvaluatePoint(const MultilinearProgram& program,
                              const Assignment& assignment) {
  std::vector<double> values(program.variables.size());
  for (std::size_t id = 0; id < program.variables.size(); ++id) {
    const auto it = assignment.find(program.variables[id].ref);
    if (it == assignment.end()) {
      throw ValidationError("assignment misses variable " +
                            VariableName(program.variables[id].ref));
    }
    values[id] = it->second;
  }
  return EvaluatePointVec(program, values);
}

ExtractedProfile ExtractProfileVec(const MultilinearProgram& program,
                                   const std::vector<double>& values) {
  if (values.size() != program.variables.size()) {
    throw ValidationError("assignment does not cover all variables");
  }
  ExtractedProfile out;
  const auto& counts = program.strategy_counts;
  out.profile.distributions.resize(counts.size());
  for (int i = 0; i < static_cast<int>(counts.size()); ++i) {
    auto& d = out.profile.distributions[i];
    d.resize(counts[i]);
    double sum = 0.0;
    for (int s = 0; s < counts[i]; ++s) {
      const double raw = values[program.VarId({VarKind::kX, i, s})];
      d[s] = std::clamp(raw, 0.0, 1.0);
      sum += d[s];
    }
    if (sum < 0.5) {
      throw CorruptionError("player " + std::to_string(i) +
                            " probabilities sum to " + std::to_string(sum));
    }
    out.renormalization = std::max(out.renormalization, std::abs(sum - 1.0));
    for (double& v : d) v /= sum;
  }
  return out;
}

ExtractedProfile ExtractProfile(const MultilinearProgram& program,
                                const Assignment& assignment) {
  std::vector<double> values(program.variables.size(), 0.0);
  for (std::size_t id = 0; id < program.variables.size(); ++id) {
    const VariableRef& ref = program.variables[id].ref;
    if (ref.kind != VarKind::kX) continue;
    const auto it = assignment.find(ref);
    if (it == assignment.end()) {
      throw ValidationError("assignment misses variable " + VariableName(ref));
    }
    values[id] = it->second;
  }
  return ExtractProfileVec(program, values);
}

Assignment ConsistentAssignment(const MultilinearProgram& program,
                                const Game& game,
                                const MixedProfile& profile) {
  const RegretReport report = ComputeRegretReport(game, profile);
  using Base = FormulationId::Base;
  const Base base = program.id.base;
  // b can be cleared only where the regret is (numerically) zero, and set
  // only where the probability is (numerically) zero.
  const double zero_prob = 1e-9;

  Assignment assignment;
  for (const Variable& v : program.variables) {
    const int i = v.ref.player;
    const int s = v.ref.index;
    double value = 0.0;
    const double spread = v.ref.kind == VarKind::kX || v.ref.kind == VarKind::kP
                              ? 0.0
                              : SafeSpread(game, i);
    switch (v.ref.kind) {
      case VarKind::kX:
        value = profile.distributions[i][s];
        break;
      case VarKind::kP:
      case VarKind::kUbar:
        value = report.best_value[i];
        break;
      case VarKind::kU:
        value = report.per_strategy_utility[i][s];
        break;
      case VarKind::kR:
        value = report.per_strategy_regret[i][s];
        break;
      case VarKind::kB: {
        const double x = profile.distributions[i][s];
        const double r = report.per_strategy_regret[i][s];
        if (base == Base::kMimlp1 || base == Base::kMimlp2) {
          value = (x <= zero_prob) ? 1.0 : 0.0;
        } else if (base == Base::kMimlp3) {
          value = (r > 1e-7 * std::max(1.0, spread)) ? 1.0 : 0.0;
        } else {  // MIMLP4: pick the cheaper penalty side.
          value = (x < r / spread) ? 1.0 : 0.0;
        }
        break;
      }
      case VarKind::kF: {
        const double r = report.per_strategy_regret[i][s];
        const double b = assignment.at({VarKind::kB, i, s});
        value = (base == Base::kMimlp2) ? std::max(r, spread * b)
                                        : std::max(r / spread, b);
        break;
      }
      case VarKind::kG: {
        const double x = profile.distributions[i][s];
        const double b = assignment.at({VarKind::kB, i, s});
        value = std::max(x, 1.0 - b);
        break;
      }
      case VarKind::kAux:
        value = 0.0;
        break;
    }
    assignment[v.ref] = value;
  }
  return assignment;
}

}  // namespace multinash
