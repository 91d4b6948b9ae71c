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

#ifndef MULTINASH_SIMPLEX_H_
#define MULTINASH_SIMPLEX_H_

#include <limits>
#include <vector>

namespace multinash {

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

enum class RowRelation { kLe, kEq, kGe };

// min c'x subject to row relations and variable bounds. Bounds may be
// infinite; rows are stored dense.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> lower;      // size num_vars
  std::vector<double> upper;      // size num_vars
  std::vector<double> objective;  // size num_vars; empty means feasibility

  struct Row {
    std::vector<double> coeffs;  // size num_vars
    RowRelation relation = RowRelation::kLe;
    double rhs = 0.0;
  };
  std::vector<Row> rows;

  bool maximize = false;
};

enum class LpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
};

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> x;  // primal point (valid for kOptimal)
  double value = 0.0;     // objective at x, in the caller's sense
  long iterations = 0;
};

struct LpOptions {
  double feasibility_tol = 1e-9;
  double reduced_cost_tol = 1e-9;
  // Dantzig pricing with a switch to Bland's rule after this many
  // consecutive degenerate pivots, which guarantees termination.
  int stall_limit = 64;
  long max_iterations = 50000;
};

// Two-phase bounded-variable primal simplex on a dense tableau.
// Deterministic: identical inputs give identical pivot sequences.
LpResult SolveLp(const LinearProgram& lp, const LpOptions& options = {});

}  // namespace multinash

#endif  // MULTINASH_SIMPLEX_H_
