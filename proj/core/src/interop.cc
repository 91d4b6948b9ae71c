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

#include "multinash/interop.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "multinash/errors.h"

namespace multinash {

namespace {

using nlohmann::json;

// Integers print without a decimal point, everything else as the shortest
// decimal that round-trips, so re-exports never drift.
std::string FormatNumber(double v) {
  if (v == std::floor(v) && std::abs(v) < 9.007199254740992e15) {
    char buf[32];
    auto [end, ec] =
        std::to_chars(buf, buf + sizeof(buf), static_cast<long long>(v));
    return std::string(buf, end);
  }
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

// Token scanner for the nfg format that tracks line/column for errors.
class NfgScanner {
 public:
  explicit NfgScanner(const std::string& text) : text_(text) {}

  [[noreturn]] void Fail(const std::string& message) const {
    throw ParseError("nfg:" + std::to_string(line_) + ":" +
                     std::to_string(column_) + ": " + message);
  }

  void SkipSpace() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        column_ = 1;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++column_;
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool AtEnd() {
    SkipSpace();
    return pos_ >= text_.size();
  }

  std::string Word() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("unexpected end of input");
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '{' && text_[pos_] != '}' && text_[pos_] != '"') {
      ++pos_;
      ++column_;
    }
    if (start == pos_) Fail("expected a token");
    return text_.substr(start, pos_ - start);
  }

  void Expect(char c) {
    SkipSpace();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      Fail(std::string("expected '") + c + "'");
    }
    ++pos_;
    ++column_;
  }

  bool TryEat(char c) {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      ++column_;
      return true;
    }
    return false;
  }

  std::string QuotedString() {
    Expect('"');
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      out += text_[pos_];
      ++pos_;
      ++column_;
    }
    if (pos_ >= text_.size()) Fail("unterminated string");
    ++pos_;
    ++column_;
    return out;
  }

  double Number() {
    const std::string word = Word();
    double value = 0.0;
    const auto [next, ec] =
        std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc() || next != word.data() + word.size()) {
      Fail("expected a number, got '" + word + "'");
    }
    return value;
  }

  int Integer() {
    const double v = Number();
    if (v != std::floor(v)) Fail("expected an integer");
    return static_cast<int>(v);
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

Game ReadNfg(const std::string& text) {
  NfgScanner scan(text);
  if (scan.Word() != "NFG") scan.Fail("expected 'NFG' header");
  if (scan.Integer() != 1) scan.Fail("only NFG version 1 is supported");
  if (scan.Word() != "R") scan.Fail("only the rational/real payoff-list "
                                    "variant ('R') is supported");
  const std::string title = scan.QuotedString();

  scan.Expect('{');
  std::vector<std::string> players;
  while (!scan.TryEat('}')) players.push_back(scan.QuotedString());
  const int n = static_cast<int>(players.size());
  if (n < 2) scan.Fail("need at least 2 players");

  scan.Expect('{');
  std::vector<int> counts;
  while (!scan.TryEat('}')) counts.push_back(scan.Integer());
  if (static_cast<int>(counts.size()) != n) {
    scan.Fail("strategy count list does not match the player list");
  }

  std::int64_t profiles = 1;
  for (int c : counts) {
    if (c < 1) scan.Fail("strategy counts must be positive");
    profiles *= c;
  }
  const std::int64_t expected = profiles * n;

  std::vector<std::vector<double>> payoffs(n, std::vector<double>(profiles));
  // The nfg payoff list walks profiles with the first player's index
  // fastest; our tensors store the first player's index slowest.
  std::vector<int> strides(n);
  for (int i = 0; i < n; ++i) {
    std::int64_t stride = 1;
    for (int j = i + 1; j < n; ++j) stride *= counts[j];
    strides[i] = static_cast<int>(stride);
  }
  std::vector<int> profile(n, 0);
  for (std::int64_t entry = 0; entry < expected; ++entry) {
    if (scan.AtEnd()) {
      scan.Fail("expected " + std::to_string(expected) +
                " payoff numbers, got " + std::to_string(entry));
    }
    const double v = scan.Number();
    const int player = static_cast<int>(entry % n);
    std::int64_t flat = 0;
    for (int i = 0; i < n; ++i) flat += static_cast<std::int64_t>(profile[i]) * strides[i];
    payoffs[player][flat] = v;
    if (player == n - 1) {
      for (int i = 0; i < n; ++i) {  // first player's index fastest
        if (++profile[i] < counts[i]) break;
        profile[i] = 0;
      }
    }
  }
  if (!scan.AtEnd()) scan.Fail("trailing payoff numbers beyond " +
                               std::to_string(expected));
  return Game(counts, std::move(payoffs), title);
}

std::string WriteNfg(const Game& game) {
  std::ostringstream out;
  out << "NFG 1 R \"" << game.name() << "\" {";
  for (int i = 0; i < game.num_players(); ++i) {
    out << " \"Player " << (i + 1) << "\"";
  }
  out << " } {";
  for (int c : game.strategy_counts()) out << " " << c;
  out << " }\n\n";

  const int n = game.num_players();
  std::vector<int> profile(n, 0);
  bool first = true;
  while (true) {
    for (int player = 0; player < n; ++player) {
      if (!first) out << " ";
      first = false;
      out << FormatNumber(game.payoff(player, profile));
    }
    int i = 0;
    for (; i < n; ++i) {
      if (++profile[i] < game.num_strategies(i)) break;
      profile[i] = 0;
    }
    if (i == n) break;
  }
  out << "\n";
  return out.str();
}

Game ReadGameJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("game json: ") + e.what());
  }
  try {
    std::vector<int> counts = j.at("strategy_counts").get<std::vector<int>>();
    std::vector<std::vector<double>> payoffs =
        j.at("payoffs").get<std::vector<std::vector<double>>>();
    std::string name = j.value("name", std::string());
    return Game(std::move(counts), std::move(payoffs), std::move(name));
  } catch (const json::exception& e) {
    throw ParseError(std::string("game json: ") + e.what());
  }
}

std::string WriteGameJson(const Game& game) {
  json j;
  j["name"] = game.name();
  j["strategy_counts"] = game.strategy_counts();
  json payoffs = json::array();
  for (int i = 0; i < game.num_players(); ++i) {
    payoffs.push_back(game.payoff_tensor(i));
  }
  j["payoffs"] = std::move(payoffs);
  return j.dump(2) + "\n";
}

MixedProfile ReadProfileJson(const std::string& text) {
  try {
    const json j = json::parse(text);
    MixedProfile p;
    p.distributions =
        j.at("distributions").get<std::vector<std::vector<double>>>();
    return p;
  } catch (const json::exception& e) {
    throw ParseError(std::string("profile json: ") + e.what());
  }
}

std::string WriteProfileJson(const MixedProfile& profile) {
  json j;
  j["distributions"] = profile.distributions;
  return j.dump(2) + "\n";
}

std::string ExportModel(const MultilinearProgram& program) {
  std::ostringstream out;
  out << "MLIR-NASH v1\n";
  out << "META formulation=" << FormulationCode(program.id) << " counts=";
  for (std::size_t i = 0; i < program.strategy_counts.size(); ++i) {
    if (i) out << ",";
    out << program.strategy_counts[i];
  }
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(program.game_hash));
  out << " game_hash=" << hash;
  out << " target=" << (program.target_value.has_value()
                            ? FormatNumber(*program.target_value)
                            : std::string("-"));
  out << " noop=" << (program.continuous_noop ? 1 : 0) << "\n";

  out << "VARS " << program.variables.size() << "\n";
  for (const Variable& v : program.variables) {
    out << VariableName(v.ref) << " " << FormatNumber(v.lower) << " "
        << FormatNumber(v.upper);
    if (v.is_binary) out << " BIN";
    out << "\n";
  }

  // Monomial pool: unique (coefficient, variable list) pairs in order of
  // first appearance over constraints then objective.
  std::map<std::pair<std::vector<int>, double>, int> pool;
  std::vector<const Term*> pool_order;
  auto intern = [&](const Term& t) {
    const auto key = std::make_pair(t.vars, t.coeff);
    const auto it = pool.find(key);
    if (it != pool.end()) return it->second;
    const int id = static_cast<int>(pool_order.size());
    pool[key] = id;
    pool_order.push_back(&t);
    return id;
  };
  std::vector<std::vector<int>> constraint_ids;
  for (const Constraint& c : program.constraints) {
    std::vector<int> ids;
    ids.reserve(c.terms.size());
    for (const Term& t : c.terms) ids.push_back(intern(t));
    constraint_ids.push_back(std::move(ids));
  }
  std::vector<int> objective_ids;
  for (const Term& t : program.objective) objective_ids.push_back(intern(t));

  out << "MONOMIALS " << pool_order.size() << "\n";
  for (std::size_t id = 0; id < pool_order.size(); ++id) {
    const Term& t = *pool_order[id];
    out << "m" << id << " = " << FormatNumber(t.coeff) << " *";
    for (int v : t.vars) out << " " << VariableName(program.variables[v].ref);
    out << "\n";
  }

  out << "CONSTRAINTS " << program.constraints.size() << "\n";
  for (std::size_t k = 0; k < program.constraints.size(); ++k) {
    const Constraint& c = program.constraints[k];
    out << c.label << ":";
    for (int id : constraint_ids[k]) out << " m" << id;
    switch (c.relation) {
      case Relation::kLe: out << " <= "; break;
      case Relation::kEq: out << " = "; break;
      case Relation::kGe: out << " >= "; break;
    }
    out << FormatNumber(c.rhs) << "\n";
  }

  out << "OBJECTIVE ";
  switch (program.sense) {
    case Sense::kMaximize: out << "max"; break;
    case Sense::kMinimize: out << "min"; break;
    case Sense::kFeasibility: out << "feasibility"; break;
  }
  if (program.sense != Sense::kFeasibility) {
    out << " " << FormatNumber(program.objective_constant);
    for (int id : objective_ids) out << " m" << id;
  }
  out << "\nEND\n";
  return out.str();
}

namespace {

std::vector<std::string> SplitWords(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

double ParseNumber(const std::string& word, const char* what) {
  double v = 0.0;
  const auto [next, ec] =
      std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc() || next != word.data() + word.size()) {
    throw ParseError(std::string("model: bad ") + what + " '" + word + "'");
  }
  return v;
}

}  // namespace

MultilinearProgram ParseModel(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&]() {
    if (!std::getline(in, line)) throw ParseError("model: unexpected end");
    return line;
  };

  if (next_line() != "MLIR-NASH v1") {
    throw ParseError("model: expected 'MLIR-NASH v1' header");
  }
  MultilinearProgram program;

  // META
  next_line();
  if (line.rfind("META ", 0) != 0) throw ParseError("model: expected META");
  std::string target_text = "-";
  for (const std::string& item : SplitWords(line.substr(5))) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("model: bad META item");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "formulation") {
      program.id = ParseFormulationCode(value);
    } else if (key == "counts") {
      std::istringstream cs(value);
      std::string c;
      while (std::getline(cs, c, ',')) {
        program.strategy_counts.push_back(std::stoi(c));
      }
    } else if (key == "game_hash") {
      program.game_hash = std::stoull(value, nullptr, 16);
    } else if (key == "target") {
      target_text = value;
    } else if (key == "noop") {
      program.continuous_noop = value == "1";
    } else {
      throw ParseError("model: unknown META key '" + key + "'");
    }
  }
  if (target_text != "-") {
    program.target_value = ParseNumber(target_text, "target");
  }

  // VARS
  next_line();
  if (line.rfind("VARS ", 0) != 0) throw ParseError("model: expected VARS");
  const int num_vars = std::stoi(line.substr(5));
  std::map<std::string, int> var_ids;
  for (int j = 0; j < num_vars; ++j) {
    const auto words = SplitWords(next_line());
    if (words.size() < 3) throw ParseError("model: bad VARS line");
    Variable v;
    v.ref = ParseVariableName(words[0]);
    v.lower = ParseNumber(words[1], "bound");
    v.upper = ParseNumber(words[2], "bound");
    v.is_binary = words.size() > 3 && words[3] == "BIN";
    var_ids[words[0]] = j;
    program.variables.push_back(v);
  }

  // MONOMIALS
  next_line();
  if (line.rfind("MONOMIALS ", 0) != 0) {
    throw ParseError("model: expected MONOMIALS");
  }
  const int num_monomials = std::stoi(line.substr(10));
  std::vector<Term> pool(num_monomials);
  for (int id = 0; id < num_monomials; ++id) {
    const auto words = SplitWords(next_line());
    // mK = coeff * var...
    if (words.size() < 4 || words[1] != "=" || words[3] != "*") {
      throw ParseError("model: bad MONOMIALS line");
    }
    Term t;
    t.coeff = ParseNumber(words[2], "coefficient");
    for (std::size_t w = 4; w < words.size(); ++w) {
      const auto it = var_ids.find(words[w]);
      if (it == var_ids.end()) {
        throw ParseError("model: unknown variable '" + words[w] + "'");
      }
      t.vars.push_back(it->second);
    }
    pool[id] = std::move(t);
  }

  // CONSTRAINTS
  next_line();
  if (line.rfind("CONSTRAINTS ", 0) != 0) {
    throw ParseError("model: expected CONSTRAINTS");
  }
  const int num_constraints = std::stoi(line.substr(12));
  auto monomial_by_code = [&pool](const std::string& code) -> const Term& {
    if (code.size() < 2 || code[0] != 'm') {
      throw ParseError("model: bad monomial id '" + code + "'");
    }
    const int id = std::stoi(code.substr(1));
    if (id < 0 || id >= static_cast<int>(pool.size())) {
      throw ParseError("model: monomial id out of range '" + code + "'");
    }
    return pool[id];
  };
  for (int k = 0; k < num_constraints; ++k) {
    next_line();
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("model: bad constraint");
    Constraint c;
    c.label = line.substr(0, colon);
    const auto words = SplitWords(line.substr(colon + 1));
    if (words.size() < 2) throw ParseError("model: bad constraint");
    const std::string rel = words[words.size() - 2];
    if (rel == "<=") c.relation = Relation::kLe;
    else if (rel == "=") c.relation = Relation::kEq;
    else if (rel == ">=") c.relation = Relation::kGe;
    else throw ParseError("model: bad relation '" + rel + "'");
    c.rhs = ParseNumber(words.back(), "rhs");
    for (std::size_t w = 0; w + 2 < words.size(); ++w) {
      c.terms.push_back(monomial_by_code(words[w]));
    }
    program.constraints.push_back(std::move(c));
  }

  // OBJECTIVE
  next_line();
  if (line.rfind("OBJECTIVE ", 0) != 0) {
    throw ParseError("model: expected OBJECTIVE");
  }
  const auto words = SplitWords(line.substr(10));
  if (words.empty()) throw ParseError("model: bad OBJECTIVE");
  if (words[0] == "feasibility") {
    program.sense = Sense::kFeasibility;
  } else {
    program.sense = words[0] == "max" ? Sense::kMaximize : Sense::kMinimize;
    if (words.size() < 2) throw ParseError("model: bad OBJECTIVE");
    program.objective_constant = ParseNumber(words[1], "constant");
    for (std::size_t w = 2; w < words.size(); ++w) {
      program.objective.push_back(monomial_by_code(words[w]));
    }
  }
  if (next_line() != "END") throw ParseError("model: expected END");
  return program;
}

std::string WriteReportRecord(const ReportRecord& record) {
  json j;
  j["instance"] = record.instance;
  j["formulation"] = record.formulation;
  j["solver"] = record.solver;
  j["status"] = SolveStatusName(record.status);
  j["max_regret"] = record.max_regret;
  j["objective"] = record.objective;
  j["wall_time_s"] = record.wall_time_s;
  j["nodes"] = record.nodes;
  j["seed"] = record.seed;
  return j.dump() + "\n";
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void AtomicWriteFile(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path temp = target.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write '" + temp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw ValidationError("short write to '" + temp.string() + "'");
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp);
    throw ValidationError("cannot rename into '" + path + "': " + ec.message());
  }
}

Game LoadGameFile(const std::string& path) {
  const std::string text = ReadFile(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".nfg") {
    return ReadNfg(text);
  }
  return ReadGameJson(text);
}

void SaveGameFile(const std::string& path, const Game& game) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".nfg") {
    AtomicWriteFile(path, WriteNfg(game));
  } else {
    AtomicWriteFile(path, WriteGameJson(game));
  }
}

}  // namespace multinash
