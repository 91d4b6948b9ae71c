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

#include "multinash/simplex.h"

#include <algorithm>
#include <cmath>

#include "multinash/errors.h"

namespace multinash {

namespace {

constexpr double kPivotTol = 1e-10;

enum class VarState : unsigned char { kBasic, kAtLower, kAtUpper, kFree };

// Bounded-variable primal simplex over an explicit dense tableau B^{-1}A.
// Columns: structurals, one slack per row, one artificial per row. The
// artificials form the initial identity basis; phase 1 drives their sum to
// zero, phase 2 optimizes the real objective with artificials pinned at 0.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const LpOptions& options)
      : options_(options),
        m_(static_cast<int>(lp.rows.size())),
        n_struct_(lp.num_vars),
        total_(lp.num_vars + 2 * static_cast<int>(lp.rows.size())),
        width_(total_),
        tableau_(static_cast<std::size_t>(m_) * total_, 0.0),
        lower_(total_, 0.0),
        upper_(total_, 0.0),
        cost_(total_, 0.0),
        value_(total_, 0.0),
        state_(total_, VarState::kAtLower),
        basic_var_(m_, -1),
        row_of_var_(total_, -1),
        rhs_(m_, 0.0) {
    for (int j = 0; j < n_struct_; ++j) {
      lower_[j] = lp.lower[j];
      upper_[j] = lp.upper[j];
      if (lower_[j] > upper_[j] + options_.feasibility_tol) {
        trivially_infeasible_ = true;
      }
    }
    const double sign = lp.maximize ? -1.0 : 1.0;
    if (!lp.objective.empty()) {
      for (int j = 0; j < n_struct_; ++j) cost_[j] = sign * lp.objective[j];
    }
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp.rows[i];
      double* t = RowPtr(i);
      for (int j = 0; j < n_struct_; ++j) t[j] = row.coeffs[j];
      const int slack = n_struct_ + i;
      t[slack] = 1.0;
      switch (row.relation) {
        case RowRelation::kLe:
          lower_[slack] = 0.0;
          upper_[slack] = kLpInfinity;
          break;
        case RowRelation::kGe:
          lower_[slack] = -kLpInfinity;
          upper_[slack] = 0.0;
          break;
        case RowRelation::kEq:
          lower_[slack] = 0.0;
          upper_[slack] = 0.0;
          break;
      }
      rhs_[i] = row.rhs;
    }
    // Nonbasic starting point: finite bound nearest zero, else free at 0.
    for (int j = 0; j < n_struct_ + m_; ++j) {
      if (std::isfinite(lower_[j]) &&
          (!std::isfinite(upper_[j]) ||
           std::abs(lower_[j]) <= std::abs(upper_[j]))) {
        state_[j] = VarState::kAtLower;
        value_[j] = lower_[j];
      } else if (std::isfinite(upper_[j])) {
        state_[j] = VarState::kAtUpper;
        value_[j] = upper_[j];
      } else {
        state_[j] = VarState::kFree;
        value_[j] = 0.0;
      }
    }
    // Artificial basis soaking up each row's residual.
    for (int i = 0; i < m_; ++i) {
      double residual = rhs_[i];
      const double* t = RowPtr(i);
      for (int j = 0; j < n_struct_ + m_; ++j) residual -= t[j] * value_[j];
      const int art = n_struct_ + m_ + i;
      RowPtr(i)[art] = residual >= 0.0 ? 1.0 : -1.0;
      lower_[art] = 0.0;
      upper_[art] = kLpInfinity;
      state_[art] = VarState::kBasic;
      value_[art] = std::abs(residual);
      basic_var_[i] = art;
      row_of_var_[art] = i;
    }
  }

  LpResult Solve() {
    LpResult result;
    if (trivially_infeasible_) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Phase 1: minimize the sum of artificials.
    std::vector<double> phase1_cost(total_, 0.0);
    for (int i = 0; i < m_; ++i) phase1_cost[n_struct_ + m_ + i] = 1.0;
    std::swap(cost_, phase1_cost);
    const LpStatus phase1 = Iterate(/*phase1=*/true);
    std::swap(cost_, phase1_cost);
    if (phase1 == LpStatus::kIterationLimit) {
      result.status = LpStatus::kIterationLimit;
      result.iterations = iterations_;
      return result;
    }
    double infeasibility = 0.0;
    for (int i = 0; i < m_; ++i) infeasibility += value_[n_struct_ + m_ + i];
    if (infeasibility > 100.0 * options_.feasibility_tol * (1.0 + ScaleOf())) {
      result.status = LpStatus::kInfeasible;
      result.iterations = iterations_;
      return result;
    }
    PinArtificials();

    const LpStatus phase2 = Iterate(/*phase1=*/false);
    result.status = phase2;
    result.iterations = iterations_;
    if (phase2 != LpStatus::kOptimal) return result;

    result.x.assign(value_.begin(), value_.begin() + n_struct_);
    double objective = 0.0;
    for (int j = 0; j < n_struct_; ++j) objective += cost_[j] * value_[j];
    result.value = objective;
    return result;
  }

 private:
  double* RowPtr(int i) { return tableau_.data() + static_cast<std::size_t>(i) * width_; }
  const double* RowPtr(int i) const {
    return tableau_.data() + static_cast<std::size_t>(i) * width_;
  }

  double ScaleOf() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i) s = std::max(s, std::abs(rhs_[i]));
    return s;
  }

  // Hard-fix artificials to zero and try to pivot basic ones out so phase 2
  // cannot reuse them. A row whose basic artificial cannot leave is
  // redundant; the artificial stays pinned at 0 and is harmless.
  void PinArtificials() {
    for (int i = 0; i < m_; ++i) {
      const int art = n_struct_ + m_ + i;
      upper_[art] = 0.0;
      if (state_[art] != VarState::kBasic) {
        value_[art] = 0.0;
        state_[art] = VarState::kAtLower;
      }
    }
    for (int i = 0; i < m_; ++i) {
      const int art = basic_var_[i];
      if (art < n_struct_ + m_) continue;  // not an artificial
      const double* t = RowPtr(i);
      int entering = -1;
      for (int j = 0; j < n_struct_ + m_; ++j) {
        if (state_[j] == VarState::kBasic) continue;
        if (std::abs(t[j]) > 1e-7) {
          entering = j;
          break;
        }
      }
      if (entering >= 0) Pivot(i, entering, value_[art] == 0.0 ? 0.0 : 0.0,
                               /*direction=*/1.0, /*flip_only=*/false,
                               /*force_zero_step=*/true);
    }
  }

  // One simplex phase. Returns kOptimal when no improving column remains.
  LpStatus Iterate(bool phase1) {
    int stall = 0;
    while (true) {
      if (iterations_ >= options_.max_iterations) {
        return LpStatus::kIterationLimit;
      }
      const bool bland = stall >= options_.stall_limit;
      int entering = -1;
      double entering_dir = 0.0;
      double best_score = options_.reduced_cost_tol;

      // Reduced costs via y = c_B B^{-1} accumulated against tableau rows.
      // With a dense tableau, d_j = c_j - sum_i c_B(i) * T(i,j).
      std::vector<double> y(m_, 0.0);
      bool any_cost = false;
      for (int i = 0; i < m_; ++i) {
        y[i] = cost_[basic_var_[i]];
        any_cost = any_cost || y[i] != 0.0;
      }
      for (int j = 0; j < total_; ++j) {
        if (state_[j] == VarState::kBasic) continue;
        if (lower_[j] == upper_[j]) continue;  // fixed, never enters
        double d = cost_[j];
        if (any_cost) {
          for (int i = 0; i < m_; ++i) {
            const double t = RowPtr(i)[j];
            if (t != 0.0) d -= y[i] * t;
          }
        }
        double dir = 0.0;
        if (state_[j] == VarState::kAtLower && d < -options_.reduced_cost_tol) {
          dir = 1.0;
        } else if (state_[j] == VarState::kAtUpper &&
                   d > options_.reduced_cost_tol) {
          dir = -1.0;
        } else if (state_[j] == VarState::kFree &&
                   std::abs(d) > options_.reduced_cost_tol) {
          dir = d < 0.0 ? 1.0 : -1.0;
        } else {
          continue;
        }
        const double score = std::abs(d);
        if (bland) {
          entering = j;
          entering_dir = dir;
          break;
        }
        if (score > best_score) {
          best_score = score;
          entering = j;
          entering_dir = dir;
        }
      }
      if (entering < 0) return LpStatus::kOptimal;

      // Ratio test.
      double step = kLpInfinity;
      if (state_[entering] != VarState::kFree) {
        const double range = upper_[entering] - lower_[entering];
        if (std::isfinite(range)) step = range;
      }
      int leaving_row = -1;
      for (int i = 0; i < m_; ++i) {
        const double alpha = entering_dir * RowPtr(i)[entering];
        if (std::abs(alpha) <= kPivotTol) continue;
        const int bv = basic_var_[i];
        double limit;
        if (alpha > 0.0) {
          if (!std::isfinite(lower_[bv])) continue;
          limit = (value_[bv] - lower_[bv]) / alpha;
        } else {
          if (!std::isfinite(upper_[bv])) continue;
          limit = (value_[bv] - upper_[bv]) / alpha;
        }
        if (limit < -options_.feasibility_tol) limit = 0.0;
        limit = std::max(limit, 0.0);
        if (limit < step - kPivotTol ||
            (limit < step + kPivotTol && leaving_row >= 0 &&
             basic_var_[i] < basic_var_[leaving_row])) {
          step = limit;
          leaving_row = i;
        }
      }
      if (!std::isfinite(step)) return LpStatus::kUnbounded;

      ++iterations_;
      if (step <= options_.feasibility_tol) {
        ++stall;
      } else {
        stall = 0;
      }
      if (leaving_row < 0) {
        // Bound flip: entering runs to its opposite bound.
        ApplyStep(entering, entering_dir, step);
        state_[entering] = entering_dir > 0 ? VarState::kAtUpper
                                            : VarState::kAtLower;
        value_[entering] = entering_dir > 0 ? upper_[entering] : lower_[entering];
        continue;
      }
      Pivot(leaving_row, entering, step, entering_dir, false, false);
    }
  }

  // Moves entering by step*dir, updating all basic values.
  void ApplyStep(int entering, double dir, double step) {
    if (step == 0.0) return;
    for (int i = 0; i < m_; ++i) {
      const double alpha = RowPtr(i)[entering];
      if (alpha != 0.0) value_[basic_var_[i]] -= dir * step * alpha;
    }
    value_[entering] += dir * step;
  }

  void Pivot(int row, int entering, double step, double dir, bool /*unused*/,
             bool force_zero_step) {
    if (!force_zero_step) ApplyStep(entering, dir, step);

    const int leaving = basic_var_[row];
    // Park the leaving variable on the bound it reached.
    if (!force_zero_step) {
      const double alpha = dir * RowPtr(row)[entering];
      if (alpha > 0.0) {
        state_[leaving] = VarState::kAtLower;
        value_[leaving] = lower_[leaving];
      } else {
        state_[leaving] = VarState::kAtUpper;
        value_[leaving] = upper_[leaving];
      }
    } else {
      state_[leaving] = VarState::kAtLower;
      value_[leaving] = lower_[leaving];
    }
    row_of_var_[leaving] = -1;

    // Gauss-Jordan update of the tableau.
    double* pivot_row = RowPtr(row);
    const double pivot = pivot_row[entering];
    const double inv = 1.0 / pivot;
    for (int j = 0; j < total_; ++j) pivot_row[j] *= inv;
    pivot_row[entering] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      double* t = RowPtr(i);
      const double factor = t[entering];
      if (factor == 0.0) continue;
      for (int j = 0; j < total_; ++j) t[j] -= factor * pivot_row[j];
      t[entering] = 0.0;
    }
    basic_var_[row] = entering;
    row_of_var_[entering] = row;
    state_[entering] = VarState::kBasic;
  }

  const LpOptions options_;
  int m_;
  int n_struct_;
  int total_;
  int width_;
  std::vector<double> tableau_;
  std::vector<double> lower_, upper_, cost_, value_;
  std::vector<VarState> state_;
  std::vector<int> basic_var_;
  std::vector<int> row_of_var_;
  std::vector<double> rhs_;
  long iterations_ = 0;
  bool trivially_infeasible_ = false;
};

}  // namespace

LpResult SolveLp(const LinearProgram& lp, const LpOptions& options) {
  if (static_cast<int>(lp.lower.size()) != lp.num_vars ||
      static_cast<int>(lp.upper.size()) != lp.num_vars) {
    throw ArgumentError("LP bounds must cover all variables");
  }
  for (const auto& row : lp.rows) {
    if (static_cast<int>(row.coeffs.size()) != lp.num_vars) {
      throw ArgumentError("LP row width mismatch");
    }
  }
  Tableau tableau(lp, options);
  LpResult result = tableau.Solve();
  if (result.status == LpStatus::kOptimal && lp.maximize) {
    result.value = -result.value;
  }
  return result;
}

}  // namespace multinash
