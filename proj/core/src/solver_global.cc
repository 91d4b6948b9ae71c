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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <thread>

#include "multinash/errors.h"
#include "multinash/solver_local.h"

namespace multinash {

namespace {

constexpr double kWidthFloor = 1e-9;       // below this a box edge is a point
constexpr double kViolationFloor = 1e-12;  // products closer than this are exact

struct IntervalBounds {
  double lower, upper;
};

IntervalBounds ProductInterval(IntervalBounds a, IntervalBounds b) {
  const double c1 = a.lower * b.lower;
  const double c2 = a.lower * b.upper;
  const double c3 = a.upper * b.lower;
  const double c4 = a.upper * b.upper;
  return {std::min(std::min(c1, c2), std::min(c3, c4)),
          std::max(std::max(c1, c2), std::max(c3, c4))};
}

// Maps multilinear terms onto LP columns: original variables first, one
// auxiliary per distinct chained-product prefix after them.
class RelaxationBuilder {
 public:
  RelaxationBuilder(const MultilinearProgram& program, const BoxNode& node)
      : program_(program), node_(node) {
    const int v = static_cast<int>(program.variables.size());
    bounds_.reserve(v);
    support_.reserve(v);
    for (int j = 0; j < v; ++j) {
      bounds_.push_back({node.lower[j], node.upper[j]});
      support_.push_back({j});
    }
  }

  int ColumnFor(const std::vector<int>& vars) {
    if (vars.size() == 1) return vars[0];
    int current = vars[0];
    std::vector<int> key = {vars[0]};
    for (std::size_t k = 1; k < vars.size(); ++k) {
      key.push_back(vars[k]);
      const auto it = prefix_col_.find(key);
      if (it != prefix_col_.end()) {
        current = it->second;
        continue;
      }
      const int aux = static_cast<int>(bounds_.size());
      BilinearLink link;
      link.product = aux;
      link.left = current;
      link.right = vars[k];
      link.square = current == vars[k] && current < static_cast<int>(program_.variables.size());
      bounds_.push_back(ProductInterval(bounds_[current], bounds_[vars[k]]));
      std::vector<int> support = support_[current];
      for (int sv : support_[vars[k]]) {
        if (std::find(support.begin(), support.end(), sv) == support.end()) {
          support.push_back(sv);
        }
      }
      std::sort(support.begin(), support.end());
      support_.push_back(support);
      link.support = std::move(support);
      links_.push_back(std::move(link));
      prefix_col_[key] = aux;
      current = aux;
    }
    return current;
  }

  LinearRelaxation Finish(double eps_feas) {
    LinearRelaxation out;
    const int total = static_cast<int>(bounds_.size());
    out.num_program_vars = static_cast<int>(program_.variables.size());
    out.links = links_;
    out.lp.num_vars = total;
    out.lp.lower.resize(total);
    out.lp.upper.resize(total);
    for (int j = 0; j < total; ++j) {
      out.lp.lower[j] = bounds_[j].lower;
      out.lp.upper[j] = bounds_[j].upper;
    }

    // Envelope rows per link.
    for (const BilinearLink& link : links_) {
      const IntervalBounds a = bounds_[link.left];
      const IntervalBounds b = bounds_[link.right];
      auto row = [&](double w_coeff, double left_coeff, double right_coeff,
                     RowRelation rel, double rhs) {
        LinearProgram::Row r;
        r.coeffs.assign(total, 0.0);
        r.coeffs[link.product] += w_coeff;
        r.coeffs[link.left] += left_coeff;
        r.coeffs[link.right] += right_coeff;
        r.relation = rel;
        r.rhs = rhs;
        out.lp.rows.push_back(std::move(r));
      };
      if (link.square) {
        // w = b^2: secant above, tangents at the interval ends below.
        row(1.0, -(a.lower + a.upper), 0.0, RowRelation::kLe,
            -a.lower * a.upper);
        row(1.0, -2.0 * a.lower, 0.0, RowRelation::kGe,
            -a.lower * a.lower);
        row(1.0, -2.0 * a.upper, 0.0, RowRelation::kGe,
            -a.upper * a.upper);
      } else {
        row(1.0, -b.lower, -a.lower, RowRelation::kGe, -a.lower * b.lower);
        row(1.0, -b.upper, -a.upper, RowRelation::kGe, -a.upper * b.upper);
        row(1.0, -b.lower, -a.upper, RowRelation::kLe, -a.upper * b.lower);
        row(1.0, -b.upper, -a.lower, RowRelation::kLe, -a.lower * b.upper);
      }
    }

    // Program constraint rows with products replaced by their columns.
    // Inequalities carry the eps_feas slack; equalities stay exact.
    for (const Constraint& c : program_.constraints) {
      LinearProgram::Row r;
      r.coeffs.assign(total, 0.0);
      for (const Term& t : c.terms) {
        r.coeffs[term_column_.at(&t)] += t.coeff;
      }
      switch (c.relation) {
        case Relation::kLe:
          r.relation = RowRelation::kLe;
          r.rhs = c.rhs + eps_feas;
          break;
        case Relation::kGe:
          r.relation = RowRelation::kGe;
          r.rhs = c.rhs - eps_feas;
          break;
        case Relation::kEq:
          r.relation = RowRelation::kEq;
          r.rhs = c.rhs;
          break;
      }
      out.lp.rows.push_back(std::move(r));
    }

    if (program_.sense != Sense::kFeasibility) {
      out.lp.objective.assign(total, 0.0);
      for (const Term& t : program_.objective) {
        out.lp.objective[term_column_.at(&t)] += t.coeff;
      }
      out.lp.maximize = program_.sense == Sense::kMaximize;
    }
    return out;
  }

  void MapAllTerms() {
    for (const Constraint& c : program_.constraints) {
      for (const Term& t : c.terms) term_column_[&t] = ColumnFor(t.vars);
    }
    for (const Term& t : program_.objective) {
      term_column_[&t] = ColumnFor(t.vars);
    }
  }

 private:
  const MultilinearProgram& program_;
  const BoxNode& node_;
  std::vector<IntervalBounds> bounds_;
  std::vector<std::vector<int>> support_;
  std::map<std::vector<int>, int> prefix_col_;
  std::vector<BilinearLink> links_;
  std::map<const Term*, int> term_column_;
};

}  // namespace

void GlobalConfig::Validate() const {
  if (time_limit_s <= 0 || node_limit <= 0 || eps_regret <= 0 ||
      eps_feas < 0 || eps_term <= 0 || gap_abs < 0 || workers < 1 ||
      polish_iters < 1) {
    throw ValidationError("global solver config fields out of range");
  }
}

GlobalConfig ParseGlobalConfig(const std::string& text) {
  GlobalConfig config;
  for (const auto& [key, value] : ParseKeyValueConfig(text)) {
    if (key == "time_limit") config.time_limit_s = std::stod(value);
    else if (key == "node_limit") config.node_limit = std::stol(value);
    else if (key == "eps_regret") config.eps_regret = std::stod(value);
    else if (key == "eps_feas") config.eps_feas = std::stod(value);
    else if (key == "eps_term") config.eps_term = std::stod(value);
    else if (key == "gap_abs") config.gap_abs = std::stod(value);
    else if (key == "workers") config.workers = std::stoi(value);
    else if (key == "polish_iters") config.polish_iters = std::stoi(value);
    else if (key == "seed") config.seed = std::stoull(value);
    else if (key == "deterministic") {
      config.deterministic = value == "1" || value == "true";
    } else {
      throw ParseError("unknown global solver key '" + key + "'");
    }
  }
  config.Validate();
  return config;
}

LinearRelaxation Relax(const MultilinearProgram& program, const BoxNode& node,
                       double eps_feas) {
  if (node.lower.size() != program.variables.size() ||
      node.upper.size() != program.variables.size()) {
    throw ArgumentError("box does not match program variables");
  }
  RelaxationBuilder builder(program, node);
  builder.MapAllTerms();
  return builder.Finish(eps_feas);
}

double MaxProductViolation(const LinearRelaxation& relaxation,
                           const std::vector<double>& lp_point) {
  double worst = 0.0;
  for (const BilinearLink& link : relaxation.links) {
    const double v = std::abs(lp_point[link.product] -
                              lp_point[link.left] * lp_point[link.right]);
    worst = std::max(worst, v);
  }
  return worst;
}

std::optional<BranchDecision> SelectBranch(const MultilinearProgram& program,
                                           const BoxNode& node,
                                           const LinearRelaxation& relaxation,
                                           const std::vector<double>& lp_point,
                                           double binary_delta) {
  // Priority 1: a fractional b-variable (binary or continuous-reformulated).
  int best_b = -1;
  double best_frac = 0.0;
  for (std::size_t j = 0; j < program.variables.size(); ++j) {
    const Variable& v = program.variables[j];
    const bool b_like = v.is_binary || v.ref.kind == VarKind::kB;
    if (!b_like) continue;
    if (node.upper[j] - node.lower[j] < kWidthFloor) continue;
    const double value = lp_point[j];
    if (value > binary_delta && value < 1.0 - binary_delta) {
      const double frac = std::min(value, 1.0 - value);
      if (frac > best_frac) {
        best_frac = frac;
        best_b = static_cast<int>(j);
      }
    }
  }
  if (best_b >= 0) {
    return BranchDecision{best_b, 0.5, true};
  }

  // Priority 2: the original variable inside the most violated product.
  int best_link = -1;
  double worst = kViolationFloor;
  for (std::size_t k = 0; k < relaxation.links.size(); ++k) {
    const BilinearLink& link = relaxation.links[k];
    const double v = std::abs(lp_point[link.product] -
                              lp_point[link.left] * lp_point[link.right]);
    if (v > worst) {
      worst = v;
      best_link = static_cast<int>(k);
    }
  }
  if (best_link < 0) return std::nullopt;

  const BilinearLink& link = relaxation.links[best_link];
  const int num_vars = static_cast<int>(program.variables.size());
  auto widest_of = [&](const std::vector<int>& candidates) {
    int best = -1;
    double width = kWidthFloor;
    for (int j : candidates) {
      if (j >= num_vars) continue;
      const double w = node.upper[j] - node.lower[j];
      if (w > width) {
        width = w;
        best = j;
      }
    }
    return best;
  };
  std::vector<int> immediate;
  if (link.left < num_vars) immediate.push_back(link.left);
  if (link.right < num_vars && link.right != link.left) {
    immediate.push_back(link.right);
  }
  int variable = widest_of(immediate);
  if (variable < 0) variable = widest_of(link.support);
  if (variable < 0) return std::nullopt;

  const double lo = node.lower[variable];
  const double hi = node.upper[variable];
  const double margin = 0.1 * (hi - lo);
  const double split =
      std::clamp(lp_point[variable], lo + margin, hi - margin);
  return BranchDecision{variable, split, false};
}

namespace {

// Interval propagation of the per-player probability-simplex equalities.
std::vector<std::vector<int>> FindSimplexGroups(
    const MultilinearProgram& program) {
  std::vector<std::vector<int>> groups;
  for (const Constraint& c : program.constraints) {
    if (c.relation != Relation::kEq || c.rhs != 1.0) continue;
    std::vector<int> group;
    bool simplex = true;
    int player = -1;
    for (const Term& t : c.terms) {
      if (t.degree() != 1 || t.coeff != 1.0) {
        simplex = false;
        break;
      }
      const Variable& v = program.variables[t.vars[0]];
      if (v.ref.kind != VarKind::kX || (player >= 0 && v.ref.player != player)) {
        simplex = false;
        break;
      }
      player = v.ref.player;
      group.push_back(t.vars[0]);
    }
    if (simplex && !group.empty()) groups.push_back(std::move(group));
  }
  return groups;
}

bool PropagateBox(const std::vector<std::vector<int>>& groups, BoxNode& node) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& group : groups) {
      double lo_sum = 0.0, hi_sum = 0.0;
      for (int j : group) {
        lo_sum += node.lower[j];
        hi_sum += node.upper[j];
      }
      if (lo_sum > 1.0 + 1e-9 || hi_sum < 1.0 - 1e-9) return false;
      for (int j : group) {
        node.upper[j] = std::min(node.upper[j], 1.0 - (lo_sum - node.lower[j]));
        node.lower[j] = std::max(node.lower[j], 1.0 - (hi_sum - node.upper[j]));
        if (node.lower[j] > node.upper[j] + 1e-9) return false;
        node.lower[j] = std::min(node.lower[j], node.upper[j]);
      }
    }
  }
  return true;
}

struct SearchNode {
  BoxNode box;
  bool lp_feasible = false;
  bool lp_breakdown = false;
  double bound = 0.0;  // objective-space relaxation value
  std::vector<double> point;  // LP point over program variables only
  double violation = std::numeric_limits<double>::infinity();
  bool fractional_binary = true;
  std::optional<BranchDecision> decision;
  long lp_iterations = 0;
};

struct Outcome {
  // Result of processing one node: a certified profile and/or children.
  std::optional<MixedProfile> certified;
  double certified_objective = 0.0;
  Assignment certified_assignment;
  std::optional<MixedProfile> best_seen;
  double best_seen_regret = std::numeric_limits<double>::infinity();
  std::vector<SearchNode> children;
  long lp_iterations = 0;
};

class GlobalSolver {
 public:
  GlobalSolver(const MultilinearProgram& program, const Game& game,
               const GlobalConfig& config)
      : program_(program),
        game_(game),
        config_(config),
        groups_(FindSimplexGroups(program)) {
    for (const Constraint& c : program.constraints) {
      for (const Term& t : c.terms) {
        if (t.degree() < 2) continue;
        for (int v : t.vars) nonlinear_vars_.insert(v);
      }
    }
    for (const Term& t : program.objective) {
      if (t.degree() < 2) continue;
      for (int v : t.vars) nonlinear_vars_.insert(v);
    }
    polish_.max_starts = 1;
    polish_.max_iters = config.polish_iters;
    polish_.step_rule = LocalConfig::StepRule::kBacktracking;
    polish_.seed = config.seed;
    // Optimality senses need incumbents well inside the gap; feasibility
    // senses only need the certificate itself.
    polish_.eps_regret = program.sense == Sense::kFeasibility
                             ? std::max(config.eps_regret * 0.3, 1e-12)
                             : std::max(std::min(config.eps_regret * 1e-2, 1e-8),
                                        1e-12);
  }

  SolveReport Solve() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto deadline =
        t0 + std::chrono::duration<double>(config_.time_limit_s);
    SolveReport report;
    report.status = SolveStatus::kInfeasible;

    SearchNode root;
    root.box.lower.reserve(program_.variables.size());
    root.box.upper.reserve(program_.variables.size());
    for (const Variable& v : program_.variables) {
      root.box.lower.push_back(v.lower);
      root.box.upper.push_back(v.upper);
    }
    root.box.id = next_id_++;
    EvaluateNode(root);
    report.lp_iterations += root.lp_iterations;
    if (root.lp_feasible || root.lp_breakdown) Push(std::move(root));

    const bool feasibility = program_.sense == Sense::kFeasibility;
    while (!open_empty()) {
      if (std::chrono::steady_clock::now() > deadline) {
        report.status = SolveStatus::kTimeLimit;
        break;
      }
      if (report.nodes_explored >= config_.node_limit) {
        report.status = SolveStatus::kNodeLimit;
        break;
      }

      std::vector<SearchNode> batch;
      const int width = config_.deterministic ? 1 : std::max(1, config_.workers);
      for (int k = 0; k < width && !open_empty(); ++k) batch.push_back(Pop());

      std::vector<Outcome> outcomes(batch.size());
      if (batch.size() == 1) {
        outcomes[0] = ProcessNode(batch[0]);
      } else {
        std::vector<std::thread> threads;
        threads.reserve(batch.size());
        for (std::size_t k = 0; k < batch.size(); ++k) {
          threads.emplace_back([&, k] { outcomes[k] = ProcessNode(batch[k]); });
        }
        for (auto& t : threads) t.join();
      }

      bool done = false;
      for (std::size_t k = 0; k < batch.size(); ++k) {
        ++report.nodes_explored;
        Outcome& outcome = outcomes[k];
        report.lp_iterations += outcome.lp_iterations;
        if (outcome.best_seen.has_value() &&
            outcome.best_seen_regret < best_regret_) {
          best_regret_ = outcome.best_seen_regret;
          best_profile_ = outcome.best_seen;
        }
        if (outcome.certified.has_value()) {
          if (feasibility) {
            report.status = SolveStatus::kEquilibriumFound;
            report.profile = outcome.certified;
            report.assignment = std::move(outcome.certified_assignment);
            report.objective = outcome.certified_objective;
            done = true;
            break;
          }
          const bool better =
              !incumbent_.has_value() ||
              (program_.sense == Sense::kMinimize
                   ? outcome.certified_objective < incumbent_objective_
                   : outcome.certified_objective > incumbent_objective_);
          if (better) {
            incumbent_ = outcome.certified;
            incumbent_objective_ = outcome.certified_objective;
            incumbent_assignment_ = std::move(outcome.certified_assignment);
          }
        }
        for (SearchNode& child : outcome.children) {
          report.lp_iterations += child.lp_iterations;
          if (child.lp_feasible || child.lp_breakdown) {
            if (!Prunable(child.bound)) {
              child.box.id = next_id_++;
              Push(std::move(child));
            }
          }
        }
      }
      if (done) break;
    }

    if (report.status == SolveStatus::kInfeasible && incumbent_.has_value()) {
      // Queue exhausted: optimality senses conclude with their incumbent.
      report.status = SolveStatus::kEquilibriumFound;
      report.profile = incumbent_;
      report.assignment = incumbent_assignment_;
      report.objective = incumbent_objective_;
    }
    if (report.status == SolveStatus::kTimeLimit ||
        report.status == SolveStatus::kNodeLimit) {
      if (incumbent_.has_value()) {
        report.profile = incumbent_;
        report.assignment = incumbent_assignment_;
        report.objective = incumbent_objective_;
      } else if (best_profile_.has_value()) {
        report.profile = best_profile_;
      }
    }
    if (report.profile.has_value()) {
      report.max_regret =
          ComputeRegretReport(game_, *report.profile).max_regret;
    }
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return report;
  }

 private:
  bool Prunable(double bound) const {
    if (!incumbent_.has_value()) return false;
    if (program_.sense == Sense::kMinimize) {
      return bound >= incumbent_objective_ - config_.gap_abs;
    }
    if (program_.sense == Sense::kMaximize) {
      return bound <= incumbent_objective_ + config_.gap_abs;
    }
    return false;
  }

  // Heap comparator: the best bound pops first (smallest for min sense,
  // largest for max), ties broken by lowest node id.
  bool HeapWorse(const SearchNode& a, const SearchNode& b) const {
    if (a.bound != b.bound) {
      return program_.sense == Sense::kMinimize ? a.bound > b.bound
                                                : a.bound < b.bound;
    }
    return a.box.id > b.box.id;
  }

  void Push(SearchNode node) {
    if (program_.sense == Sense::kFeasibility) {
      stack_.push_back(std::move(node));
    } else {
      heap_.push_back(std::move(node));
      std::push_heap(heap_.begin(), heap_.end(),
                     [this](const SearchNode& a, const SearchNode& b) {
                       return HeapWorse(a, b);
                     });
    }
  }

  SearchNode Pop() {
    if (program_.sense == Sense::kFeasibility) {
      SearchNode node = std::move(stack_.back());
      stack_.pop_back();
      return node;
    }
    std::pop_heap(heap_.begin(), heap_.end(),
                  [this](const SearchNode& a, const SearchNode& b) {
                    return HeapWorse(a, b);
                  });
    SearchNode node = std::move(heap_.back());
    heap_.pop_back();
    return node;
  }

  bool open_empty() const { return stack_.empty() && heap_.empty(); }

  void EvaluateNode(SearchNode& node) {
    if (!PropagateBox(groups_, node.box)) {
      node.lp_feasible = false;
      return;
    }
    const LinearRelaxation relaxation =
        Relax(program_, node.box, config_.eps_feas);
    LpOptions options;
    const LpResult lp = SolveLp(relaxation.lp, options);
    node.lp_iterations += lp.iterations;
    if (lp.status == LpStatus::kInfeasible) {
      node.lp_feasible = false;
      return;
    }
    if (lp.status != LpStatus::kOptimal) {
      // Numerical breakdown: keep the node alive and force a split.
      node.lp_breakdown = true;
      node.lp_feasible = false;
      node.violation = std::numeric_limits<double>::infinity();
      node.decision = ForcedBranch(node.box);
      node.bound = node.box.parent_bound;
      return;
    }
    node.lp_feasible = true;
    node.bound = program_.sense == Sense::kFeasibility
                     ? 0.0
                     : lp.value + program_.objective_constant;
    node.point.assign(lp.x.begin(),
                      lp.x.begin() + program_.variables.size());
    node.violation = MaxProductViolation(relaxation, lp.x);
    node.fractional_binary = false;
    for (std::size_t j = 0; j < program_.variables.size(); ++j) {
      const Variable& v = program_.variables[j];
      if (!(v.is_binary || v.ref.kind == VarKind::kB)) continue;
      const double value = lp.x[j];
      if (value > config_.binary_delta && value < 1.0 - config_.binary_delta) {
        node.fractional_binary = true;
        break;
      }
    }
    node.decision =
        SelectBranch(program_, node.box, relaxation, lp.x, config_.binary_delta);
    if (!node.decision.has_value()) node.decision = ForcedBranch(node.box);
  }

  // Last-resort branching when the LP point gives no guidance: a still-wide
  // b-variable, else the widest variable occurring in any product.
  std::optional<BranchDecision> ForcedBranch(const BoxNode& box) const {
    int widest_b = -1;
    double width_b = kWidthFloor;
    int widest = -1;
    double width = kWidthFloor;
    for (std::size_t j = 0; j < program_.variables.size(); ++j) {
      const Variable& v = program_.variables[j];
      const double w = box.upper[j] - box.lower[j];
      if (w <= kWidthFloor) continue;
      if (v.is_binary || v.ref.kind == VarKind::kB) {
        if (w > width_b) {
          width_b = w;
          widest_b = static_cast<int>(j);
        }
      }
      if (nonlinear_vars_.empty() || nonlinear_vars_.count(static_cast<int>(j))) {
        if (w > width) {
          width = w;
          widest = static_cast<int>(j);
        }
      }
    }
    if (widest_b >= 0) return BranchDecision{widest_b, 0.5, true};
    if (widest >= 0) {
      return BranchDecision{
          widest, 0.5 * (box.lower[widest] + box.upper[widest]), false};
    }
    return std::nullopt;
  }

  Outcome ProcessNode(const SearchNode& node) {
    Outcome outcome;
    if (node.lp_feasible && Prunable(node.bound)) return outcome;
    const bool candidate = node.lp_feasible && !node.fractional_binary &&
                           node.violation <= config_.eps_term;
    if (candidate) {
      AttemptIncumbent(node, outcome);
      if (outcome.certified.has_value() &&
          program_.sense == Sense::kFeasibility) {
        return outcome;  // any certified feasible point finishes the search
      }
    }
    if (!node.decision.has_value()) return outcome;  // point-like box

    const BranchDecision& d = *node.decision;
    std::vector<std::pair<double, double>> child_ranges;
    if (d.on_binary) {
      child_ranges = {{0.0, 0.0}, {1.0, 1.0}};
    } else {
      child_ranges = {{node.box.lower[d.variable], d.split_point},
                      {d.split_point, node.box.upper[d.variable]}};
    }
    for (const auto& [lo, hi] : child_ranges) {
      SearchNode child;
      child.box = node.box;
      child.box.lower[d.variable] = lo;
      child.box.upper[d.variable] = hi;
      child.box.depth = node.box.depth + 1;
      child.box.parent_bound = node.bound;
      child.box.pending_branch_variable = d.variable;
      child.box.id = 0;  // assigned on merge for determinism
      EvaluateNode(child);
      outcome.lp_iterations += child.lp_iterations;
      child.lp_iterations = 0;
      outcome.children.push_back(std::move(child));
    }
    // Most-feasible child first for the DFS stack: push the better child
    // last so it pops first.
    if (program_.sense == Sense::kFeasibility) {
      std::stable_sort(outcome.children.begin(), outcome.children.end(),
                       [](const SearchNode& a, const SearchNode& b) {
                         return a.violation > b.violation;
                       });
    }
    return outcome;
  }

  void AttemptIncumbent(const SearchNode& node, Outcome& outcome) {
    ExtractedProfile extracted;
    try {
      extracted = ExtractProfileVec(program_, node.point);
    } catch (const CorruptionError&) {
      return;
    }
    const DescendResult polished = Descend(game_, extracted.profile, polish_);
    outcome.best_seen = polished.profile;
    outcome.best_seen_regret = polished.max_regret;
    if (polished.max_regret > config_.eps_regret) return;
    if (!IsEpsilonNash(game_, polished.profile, config_.eps_regret)) return;

    Assignment assignment =
        ConsistentAssignment(program_, game_, polished.profile);
    const PointEvaluation eval = EvaluatePoint(program_, assignment);
    outcome.certified = polished.profile;
    outcome.certified_objective = eval.objective;
    outcome.certified_assignment = std::move(assignment);
  }

  const MultilinearProgram& program_;
  const Game& game_;
  const GlobalConfig& config_;
  std::vector<std::vector<int>> groups_;
  std::set<int> nonlinear_vars_;
  LocalConfig polish_;

  std::vector<SearchNode> stack_;
  std::vector<SearchNode> heap_;
  std::int64_t next_id_ = 0;
  std::optional<MixedProfile> incumbent_;
  double incumbent_objective_ = 0.0;
  Assignment incumbent_assignment_;
  std::optional<MixedProfile> best_profile_;
  double best_regret_ = std::numeric_limits<double>::infinity();
};

}  // namespace

SolveReport SolveGlobal(const MultilinearProgram& program, const Game& game,
                        const GlobalConfig& config) {
  config.Validate();
  if (program.strategy_counts != game.strategy_counts()) {
    throw ValidationError("program was built for a different game shape");
  }
  GlobalSolver solver(program, game, config);
  return solver.Solve();
}

}  // namespace multinash
