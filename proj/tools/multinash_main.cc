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

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "multinash/bench.h"
#include "multinash/errors.h"
#include "multinash/formulations.h"
#include "multinash/generators.h"
#include "multinash/interop.h"
#include "multinash/solver_global.h"
#include "multinash/solver_local.h"

namespace {

using namespace multinash;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitTimeout = 3;

// A game argument is a file path, a named game or an instance spec string.
Game ResolveGame(const std::string& arg) {
  if (std::filesystem::exists(arg)) return LoadGameFile(arg);
  for (const std::string& id : NamedGameIds()) {
    if (id == arg) return NamedGame(arg);
  }
  return Generate(ParseInstanceSpec(arg));
}

std::string InstanceLabel(const std::string& arg, const Game& game) {
  return game.name().empty() ? arg : game.name();
}

int CmdGenerate(const std::string& spec_text, const std::string& out) {
  const InstanceSpec spec = ParseInstanceSpec(spec_text);
  const Game game = Generate(spec);
  if (out.empty()) {
    std::cout << WriteGameJson(game);
  } else {
    SaveGameFile(out, game);
    std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int CmdSolve(const std::string& game_arg, const std::string& formulation_code,
             const std::string& solver, const std::string& config_text,
             double timeout, double eps, int workers, bool deterministic,
             std::uint64_t seed, const std::string& out) {
  const Game game = ResolveGame(game_arg);
  SolveReport report;
  if (solver == "local") {
    LocalConfig config =
        config_text.empty() ? LocalConfig() : ParseLocalConfig(config_text);
    config.eps_regret = eps;
    config.time_limit_s = timeout;
    config.seed = seed;
    report = Multistart(game, config);
  } else if (solver == "global") {
    GlobalConfig config = config_text.empty() ? GlobalConfig()
                                              : ParseGlobalConfig(config_text);
    config.time_limit_s = timeout;
    config.eps_regret = eps;
    config.workers = workers;
    config.deterministic = deterministic;
    config.seed = seed;
    const MultilinearProgram program =
        Build(ParseFormulationCode(formulation_code), game);
    report = SolveGlobal(program, game, config);
  } else {
    throw ValidationError("solver must be 'global' or 'local'");
  }

  ReportRecord record;
  record.instance = InstanceLabel(game_arg, game);
  record.formulation = solver == "local" ? "-" : formulation_code;
  record.solver = solver;
  record.status = report.status;
  record.max_regret = report.max_regret;
  record.objective = report.objective;
  record.wall_time_s = report.wall_time_s;
  record.nodes = report.nodes_explored;
  record.seed = seed;
  const std::string line = WriteReportRecord(record);
  std::cout << line;
  if (report.profile.has_value()) {
    std::cout << WriteProfileJson(*report.profile);
  }
  if (!out.empty()) AtomicWriteFile(out, line);

  switch (report.status) {
    case SolveStatus::kEquilibriumFound:
      return kExitOk;
    case SolveStatus::kTimeLimit:
    case SolveStatus::kNodeLimit:
      return kExitTimeout;
    case SolveStatus::kInfeasible:
      return kExitFailure;
  }
  return kExitFailure;
}

int CmdVerify(const std::string& game_arg, const std::string& profile_path,
              double eps) {
  const Game game = ResolveGame(game_arg);
  const MixedProfile profile = ReadProfileJson(ReadFile(profile_path));
  const RegretReport report = ComputeRegretReport(game, profile);
  const bool ok = report.max_regret <= eps;
  std::cout << "{\"is_epsilon_nash\": " << (ok ? "true" : "false")
            << ", \"eps\": " << eps << ", \"max_regret\": " << report.max_regret
            << "}\n";
  if (!ok) {
    std::cerr << "not epsilon-Nash at eps=" << eps
              << " (max_regret=" << report.max_regret << ")\n";
    return kExitValidation;
  }
  return kExitOk;
}

int CmdExport(const std::string& game_arg, const std::string& formulation_code,
              const std::string& out) {
  const Game game = ResolveGame(game_arg);
  const MultilinearProgram program =
      Build(ParseFormulationCode(formulation_code), game);
  const std::string text = ExportModel(program);
  if (out.empty()) {
    std::cout << text;
  } else {
    AtomicWriteFile(out, text);
    std::cout << "wrote " << out << "\n";
  }
  return kExitOk;
}

int CmdBench(const std::string& plan_path, const std::string& out) {
  const BenchPlan plan = LoadBenchPlan(ReadFile(plan_path));
  const BenchRun run = RunBench(plan);
  std::cout << RenderBenchTableText(run.table);
  if (!out.empty()) {
    AtomicWriteFile(out + ".table.json", BenchTableJson(run.table));
    std::string lines;
    for (const ReportRecord& record : run.records) {
      lines += WriteReportRecord(record);
    }
    AtomicWriteFile(out + ".results.jsonl", lines);
    std::cout << "wrote " << out << ".table.json and " << out
              << ".results.jsonl\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nash equilibria of n-player normal-form games via "
               "multilinear programs"};
  app.require_subcommand(1);

  std::string spec_text, out, game_arg, formulation = "MLP2";
  std::string solver = "global", config_text, profile_path, plan_path;
  double timeout = 300.0, eps = 1e-6;
  int workers = 1;
  bool deterministic = true;
  std::uint64_t seed = 0;

  CLI::App* generate = app.add_subcommand("generate", "Generate an instance");
  generate->add_option("spec", spec_text, "Instance spec, e.g. RG(3,5)#seed=7")
      ->required();
  generate->add_option("--out", out, "Output file (.nfg or .game.json)");

  CLI::App* solve = app.add_subcommand("solve", "Find one Nash equilibrium");
  solve->add_option("game", game_arg, "Game file, named game or spec")
      ->required();
  solve->add_option("formulation", formulation, "Formulation code");
  solve->add_option("solver", solver, "global or local");
  solve->add_option("--formulation", formulation, "Formulation code");
  solve->add_option("--solver", solver, "global or local");
  solve->add_option("--timeout", timeout, "Time limit in seconds");
  solve->add_option("--eps", eps, "Regret tolerance");
  solve->add_option("--workers", workers, "Worker threads");
  solve->add_option("--deterministic", deterministic, "Single-worker mode");
  solve->add_option("--seed", seed, "Heuristic seed");
  solve->add_option("--config", config_text, "key=value;... solver config");
  solve->add_option("--out", out, "Write the report record here");

  CLI::App* verify = app.add_subcommand("verify", "Check a profile");
  verify->add_option("game", game_arg, "Game file, named game or spec")
      ->required();
  verify->add_option("profile", profile_path, "Profile JSON file")->required();
  verify->add_option("--eps", eps, "Regret tolerance");

  CLI::App* export_cmd = app.add_subcommand("export", "Export a formulation");
  export_cmd->add_option("game", game_arg, "Game file, named game or spec")
      ->required();
  export_cmd->add_option("formulation", formulation, "Formulation code");
  export_cmd->add_option("--formulation", formulation, "Formulation code");
  export_cmd->add_option("--out", out, "Output .mlir-nash file");

  CLI::App* bench = app.add_subcommand("bench", "Run a benchmark plan");
  bench->add_option("plan", plan_path, "Plan JSON file")->required();
  bench->add_option("--out", out, "Output prefix for table/results files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*generate) return CmdGenerate(spec_text, out);
    if (*solve) {
      return CmdSolve(game_arg, formulation, solver, config_text, timeout, eps,
                      workers, deterministic, seed, out);
    }
    if (*verify) return CmdVerify(game_arg, profile_path, eps);
    if (*export_cmd) return CmdExport(game_arg, formulation, out);
    if (*bench) return CmdBench(plan_path, out);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const LookupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
