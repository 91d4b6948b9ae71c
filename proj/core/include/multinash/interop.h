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

#ifndef MULTINASH_INTEROP_H_
#define MULTINASH_INTEROP_H_

#include <cstdint>
#include <string>

#include "multinash/formulations.h"
#include "multinash/game.h"
#include "multinash/solve_report.h"

namespace multinash {

// Normal-form payoff-list text: header
//   NFG 1 R "<title>" { "<p1>" ... } { n_1 ... n_k }
// followed by one payoff per (profile, player) with the first player's
// strategy index varying fastest across profiles. Only the payoff-list
// variant is supported, not the outcome variant.
Game ReadNfg(const std::string& text);
std::string WriteNfg(const Game& game);

// Native JSON: name, strategy_counts, payoffs (flat tensors in the internal
// layout, player 0's index slowest). Lossless for doubles.
Game ReadGameJson(const std::string& text);
std::string WriteGameJson(const Game& game);

// Profile JSON: {"distributions": [[...], ...]}.
MixedProfile ReadProfileJson(const std::string& text);
std::string WriteProfileJson(const MixedProfile& profile);

// "MLIR-NASH v1" solver-interchange text. Canonical: re-exporting a parsed
// model is byte-identical.
std::string ExportModel(const MultilinearProgram& program);
MultilinearProgram ParseModel(const std::string& text);

// One machine-readable result line (JSON object, newline-terminated).
struct ReportRecord {
  std::string instance;
  std::string formulation;
  std::string solver;
  SolveStatus status = SolveStatus::kInfeasible;
  double max_regret = 0.0;
  double objective = 0.0;
  double wall_time_s = 0.0;
  long nodes = 0;
  std::uint64_t seed = 0;
};
std::string WriteReportRecord(const ReportRecord& record);

std::string ReadFile(const std::string& path);
// Write-to-temp plus atomic rename; never leaves partial files.
void AtomicWriteFile(const std::string& path, const std::string& content);

// Loads .nfg or .game.json by extension.
Game LoadGameFile(const std::string& path);
void SaveGameFile(const std::string& path, const Game& game);

}  // namespace multinash

#endif  // MULTINASH_INTEROP_H_
