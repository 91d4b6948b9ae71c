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

#ifndef MULTINASH_SOLVE_REPORT_H_
#define MULTINASH_SOLVE_REPORT_H_

#include <limits>
#include <map>
#include <optional>
#include <string>

#include "multinash/formulations.h"
#include "multinash/game.h"

namespace multinash {

enum class SolveStatus {
  kEquilibriumFound,
  kInfeasible,
  kTimeLimit,
  kNodeLimit,
};

std::string SolveStatusName(SolveStatus status);

// Common result record of the global and local solvers. EquilibriumFound is
// only ever reported together with a profile whose independently computed
// max regret is at most the configured eps_regret.
struct SolveReport {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<MixedProfile> profile;
  Assignment assignment;  // full variable map (global solver)
  double max_regret = std::numeric_limits<double>::infinity();
  double objective = 0.0;
  long nodes_explored = 0;   // local solver: starts attempted
  long lp_iterations = 0;    // local solver: descent iterations
  double wall_time_s = 0.0;
};

// Parses the plain-text "key=value" configuration surface shared by the
// solvers: pairs separated by ';', ',' or newlines; unknown keys rejected by
// the individual config parsers.
std::map<std::string, std::string> ParseKeyValueConfig(const std::string& text);

}  // namespace multinash

#endif  // MULTINASH_SOLVE_REPORT_H_
