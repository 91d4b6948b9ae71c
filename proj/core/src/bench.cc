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

#include "multinash/bench.h"

#include <atomic>
#include <iomanip>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "multinash/errors.h"
#include "multinash/solver_global.h"
#include "multinash/solver_local.h"

namespace multinash {

namespace {

using nlohmann::json;

struct Task {
  int cell = 0;
  InstanceSpec spec;
  FormulationId formulation;
  double timeout_s = 0.0;
  int repetition = 0;
};

struct TaskResult {
  ReportRecord record;
  bool solved = false;
  double time_s = 0.0;
};

TaskResult RunTask(const BenchPlan& plan, const Task& task) {
  TaskResult result;
  result.record.instance = FormatInstanceSpec(task.spec);
  result.record.formulation = FormulationCode(task.formulation);
  result.record.solver = plan.solver;
  result.record.seed = task.spec.seed;

  const Game game = Generate(task.spec);
  SolveReport report;
  if (plan.solver == "global") {
    const MultilinearProgram program = Build(task.formulation, game);
    GlobalConfig config;
    config.time_limit_s = task.timeout_s;
    config.eps_regret = plan.eps_regret;
    config.deterministic = plan.deterministic;
    config.workers = 1;  // bench parallelism lives outside the solver
    config.seed = task.spec.seed;
    report = SolveGlobal(program, game, config);
  } else {
    LocalConfig config;
    config.eps_regret = plan.eps_regret;
    config.seed = task.spec.seed;
    config.time_limit_s = task.timeout_s;
    report = Multistart(game, config);
  }

  result.record.status = report.status;
  result.record.max_regret = report.max_regret;
  result.record.objective = report.objective;
  result.record.wall_time_s = report.wall_time_s;
  result.record.nodes = report.nodes_explored;
  result.solved = report.status == SolveStatus::kEquilibriumFound;
  // Timeout-as-time rule: an unsolved run contributes the full timeout.
  result.time_s = result.solved ? report.wall_time_s : task.timeout_s;
  return result;
}

}  // namespace

void BenchPlan::Validate() const {
  if (instances.empty() || formulations.empty()) {
    throw ValidationError("bench plan needs instances and formulations");
  }
  if (timeout_s <= 0.0) throw ValidationError("bench timeout must be positive");
  if (repetitions < 1) throw ValidationError("repetitions must be >= 1");
  if (solver != "global" && solver != "local") {
    throw ValidationError("solver must be 'global' or 'local'");
  }
  if (workers < 1) throw ValidationError("workers must be >= 1");
  for (const auto& set : instances) {
    if (set.num_seeds < 1) throw ValidationError("seeds must be >= 1");
    if (set.timeout_s.has_value() && *set.timeout_s <= 0.0) {
      throw ValidationError("per-family timeout must be positive");
    }
    ValidateInstanceSpec(set.base);
  }
}

BenchPlan LoadBenchPlan(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bench plan: ") + e.what());
  }
  BenchPlan plan;
  try {
    for (const json& item : j.at("instances")) {
      BenchInstanceSet set;
      set.base = ParseInstanceSpec(item.at("spec").get<std::string>());
      set.num_seeds = item.value("seeds", 10);
      if (item.contains("timeout_s")) {
        set.timeout_s = item.at("timeout_s").get<double>();
      }
      plan.instances.push_back(std::move(set));
    }
    for (const json& code : j.at("formulations")) {
      plan.formulations.push_back(
          ParseFormulationCode(code.get<std::string>()));
    }
    plan.solver = j.value("solver", std::string("global"));
    plan.timeout_s = j.value("timeout_s", 300.0);
    plan.repetitions = j.value("repetitions", 1);
    plan.eps_regret = j.value("eps_regret", 1e-6);
    plan.workers = j.value("workers", 1);
    plan.deterministic = j.value("deterministic", true);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bench plan: ") + e.what());
  }
  plan.Validate();
  return plan;
}

std::string FamilyLabel(const InstanceSpec& spec) {
  const std::string full = FormatInstanceSpec(spec);
  const auto close = full.find(')');
  return close == std::string::npos ? full : full.substr(0, close + 1);
}

BenchRun RunBench(const BenchPlan& plan) {
  plan.Validate();

  std::vector<Task> tasks;
  std::vector<BenchCell> cells;
  for (const auto& set : plan.instances) {
    const double timeout = set.timeout_s.value_or(plan.timeout_s);
    for (const FormulationId& formulation : plan.formulations) {
      BenchCell cell;
      cell.family = FamilyLabel(set.base);
      cell.formulation = FormulationCode(formulation);
      const int cell_index = static_cast<int>(cells.size());
      cells.push_back(cell);
      for (int offset = 0; offset < set.num_seeds; ++offset) {
        for (int rep = 0; rep < plan.repetitions; ++rep) {
          Task task;
          task.cell = cell_index;
          task.spec = set.base;
          task.spec.seed = set.base.seed + static_cast<std::uint64_t>(offset);
          task.formulation = formulation;
          task.timeout_s = timeout;
          task.repetition = rep;
          tasks.push_back(std::move(task));
        }
      }
    }
  }

  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) break;
      results[k] = RunTask(plan, tasks[k]);
    }
  };
  if (plan.workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    const int n = std::min<int>(plan.workers, static_cast<int>(tasks.size()));
    threads.reserve(n);
    for (int t = 0; t < n; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  BenchRun run;
  std::vector<double> total_time(cells.size(), 0.0);
  std::vector<double> solved_time(cells.size(), 0.0);
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const TaskResult& r = results[k];
    BenchCell& cell = cells[tasks[k].cell];
    ++cell.runs;
    total_time[tasks[k].cell] += r.time_s;
    if (r.solved) {
      ++cell.solved;
      solved_time[tasks[k].cell] += r.record.wall_time_s;
    }
    run.records.push_back(r.record);
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    BenchCell& cell = cells[c];
    cell.average_time_s = cell.runs ? total_time[c] / cell.runs : 0.0;
    cell.percent_solved = cell.runs ? 100.0 * cell.solved / cell.runs : 0.0;
    if (cell.solved > 0) {
      cell.average_time_on_solved_s = solved_time[c] / cell.solved;
    }
  }
  run.table.cells = std::move(cells);
  return run;
}

std::string RenderBenchTableText(const BenchTable& table) {
  std::ostringstream out;
  out << std::left << std::setw(18) << "instance" << std::setw(12)
      << "formulation" << std::right << std::setw(12) << "avg(s)"
      << std::setw(10) << "solved%" << std::setw(16) << "avg-solved(s)"
      << "\n";
  for (const BenchCell& cell : table.cells) {
    out << std::left << std::setw(18) << cell.family << std::setw(12)
        << cell.formulation << std::right << std::fixed << std::setprecision(3)
        << std::setw(12) << cell.average_time_s << std::setprecision(1)
        << std::setw(10) << cell.percent_solved;
    if (cell.average_time_on_solved_s.has_value()) {
      out << std::setprecision(3) << std::setw(16)
          << *cell.average_time_on_solved_s;
    } else {
      out << std::setw(16) << "--";
    }
    out << "\n";
    out.unsetf(std::ios::fixed);
  }
  return out.str();
}

std::string BenchTableJson(const BenchTable& table) {
  json rows = json::array();
  for (const BenchCell& cell : table.cells) {
    json row;
    row["family"] = cell.family;
    row["formulation"] = cell.formulation;
    row["runs"] = cell.runs;
    row["solved"] = cell.solved;
    row["average_time_s"] = cell.average_time_s;
    row["percent_solved"] = cell.percent_solved;
    if (cell.average_time_on_solved_s.has_value()) {
      row["average_time_on_solved_s"] = *cell.average_time_on_solved_s;
    } else {
      row["average_time_on_solved_s"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  json j;
  j["cells"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace multinash
