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

#include "multinash/solve_report.h"

#include "multinash/errors.h"

namespace multinash {

std::string SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kEquilibriumFound:
      return "EquilibriumFound";
    case SolveStatus::kInfeasible:
      return "Infeasible";
    case SolveStatus::kTimeLimit:
      return "TimeLimit";
    case SolveStatus::kNodeLimit:
      return "NodeLimit";
  }
  throw ArgumentError("unknown solve status");
}

std::map<std::string, std::string> ParseKeyValueConfig(
    const std::string& text) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find_first_of(";,\n", pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    pos = end + 1;
    const auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    item = strip(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config item '" + item + "' is not key=value");
    }
    out[strip(item.substr(0, eq))] = strip(item.substr(eq + 1));
  }
  return out;
}

}  // namespace multinash
