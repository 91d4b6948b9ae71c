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

#ifndef MULTINASH_BENCH_H_
#define MULTINASH_BENCH_H_

#include <optional>
#include <string>
#include <vector>

#include "multinash/formulations.h"
#include "multinash/generators.h"
#include "multinash/interop.h"

namespace multinash {

// One family row of a benchmark plan: `base` fixes everything but the seed;
// seeds base.seed .. base.seed+num_seeds-1 are run. A per-family timeout may
// override the plan-wide one (the reference results mix 300 s and 900 s
// timeouts by family).
struct BenchInstanceSet {
  InstanceSpec base;
  int num_seeds = 10;
  std::optional<double> timeout_s;
};

struct BenchPlan {
  std::vector<BenchInstanceSet> instances;
  std::vector<FormulationId> formulations;
  std::string solver = "global";  // "global" or "local"
  double timeout_s = 300.0;
  int repetitions = 1;
  double eps_regret = 1e-6;
  int workers = 1;
  bool deterministic = true;

  void Validate() const;
};

BenchPlan LoadBenchPlan(const std::string& json_text);

// One (family, formulation) aggregate. Unsolved runs count the timeout as
// their time in average_time_s; average_time_on_solved_s is absent when
// nothing solved.
struct BenchCell {
  std::string family;
  std::string formulation;
  int runs = 0;
  int solved = 0;
  double average_time_s = 0.0;
  double percent_solved = 0.0;
  std::optional<double> average_time_on_solved_s;
};

struct BenchTable {
  std::vector<BenchCell> cells;
};

struct BenchRun {
  BenchTable table;
  std::vector<ReportRecord> records;  // one per (instance, formulation, rep)
};

// Runs the whole grid; cells are independent and may run on plan.workers
// threads; the table is a deterministic reduction over run indices.
BenchRun RunBench(const BenchPlan& plan);

std::string RenderBenchTableText(const BenchTable& table);
std::string BenchTableJson(const BenchTable& table);

// Family display label: the instance spec without the seed/range suffix.
std::string FamilyLabel(const InstanceSpec& spec);

}  // namespace multinash

#endif  // MULTINASH_BENCH_H_
