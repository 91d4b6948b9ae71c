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

#include <filesystem>

#include "doctest.h"
#include "multinash/errors.h"
#include "multinash/generators.h"

namespace multinash {
namespace {

TEST_CASE("the documented 2x2 payoff list is matching pennies") {
  const std::string text =
      "NFG 1 R \"mp\" { \"Player 1\" \"Player 2\" } { 2 2 }\n\n"
      "1 -1 -1 1 -1 1 1 -1\n";
  const Game game = ReadNfg(text);
  CHECK(game.payoff_tensor(0) == std::vector<double>{1, -1, -1, 1});
  CHECK(game.payoff_tensor(1) == std::vector<double>{-1, 1, 1, -1});
  CHECK(game.name() == "mp");
}

TEST_CASE("nfg round trips losslessly on generated games") {
  for (const char* spec : {"RG(2,3)#seed=1;range=-9..9",
                           "RG(3,2)#seed=2;range=-99..99",
                           "CG(3,3,-0.2)#seed=3;range=-50..50"}) {
    const Game game = Generate(ParseInstanceSpec(spec));
    const std::string text = WriteNfg(game);
    const Game back = ReadNfg(text);
    CHECK(back.strategy_counts() == game.strategy_counts());
    for (int i = 0; i < game.num_players(); ++i) {
      CHECK(back.payoff_tensor(i) == game.payoff_tensor(i));
    }
    CHECK(WriteNfg(back) == text);  // canonical form is a fixed point
  }
}

TEST_CASE("nfg errors carry counts and positions") {
  const std::string short_text =
      "NFG 1 R \"bad\" { \"a\" \"b\" } { 2 2 }\n1 -1 -1 1 -1 1 1\n";
  CHECK_THROWS_WITH_AS(ReadNfg(short_text), doctest::Contains("8"),
                       ParseError);
  CHECK_THROWS_AS(ReadNfg("NFG 2 R \"x\" { \"a\" \"b\" } { 2 2 }\n"),
                  ParseError);
  CHECK_THROWS_AS(ReadNfg("BOGUS"), ParseError);
  const std::string trailing =
      "NFG 1 R \"bad\" { \"a\" \"b\" } { 2 2 }\n1 -1 -1 1 -1 1 1 -1 7\n";
  CHECK_THROWS_AS(ReadNfg(trailing), ParseError);
}

TEST_CASE("game json round trips byte for byte") {
  Game game = Generate(ParseInstanceSpec("RG(2,3)#seed=9;range=-5..5"));
  // Inject a fractional payoff so the double path is exercised too.
  std::vector<std::vector<double>> payoffs = {game.payoff_tensor(0),
                                              game.payoff_tensor(1)};
  payoffs[0][0] = 0.1;
  payoffs[1][2] = -2.5;
  Game fractional(game.strategy_counts(), payoffs, "frac");
  const std::string text = WriteGameJson(fractional);
  const Game back = ReadGameJson(text);
  for (int i = 0; i < 2; ++i) {
    CHECK(back.payoff_tensor(i) == fractional.payoff_tensor(i));
  }
  CHECK(WriteGameJson(back) == text);
  CHECK_THROWS_AS(ReadGameJson("{"), ParseError);
  CHECK_THROWS_AS(ReadGameJson("{\"strategy_counts\": [2,2]}"), ParseError);
}

TEST_CASE("profile json round trips") {
  MixedProfile profile;
  profile.distributions = {{0.25, 0.75}, {0.1, 0.2, 0.7}};
  const MixedProfile back = ReadProfileJson(WriteProfileJson(profile));
  CHECK(back == profile);
}

TEST_CASE("model text export is canonical and parseable") {
  const Game mp = NamedGame("matching_pennies");
  const MultilinearProgram program =
      Build(ParseFormulationCode("MLP2"), mp);
  const std::string text = ExportModel(program);

  // Exactly 6 variable lines: four x's and two p's.
  const auto vars_pos = text.find("VARS 6\n");
  REQUIRE(vars_pos != std::string::npos);
  CHECK(text.find("x[0,0] 0 1\n") != std::string::npos);
  CHECK(text.find("p[0] -1 1\n") != std::string::npos);

  const MultilinearProgram parsed = ParseModel(text);
  CHECK(parsed.variables == program.variables);
  CHECK(parsed.constraints == program.constraints);
  CHECK(parsed.objective == program.objective);
  CHECK(parsed.id == program.id);
  CHECK(parsed.game_hash == program.game_hash);
  CHECK(ExportModel(parsed) == text);
}

TEST_CASE("model text round trips every formulation") {
  const Game game = Generate(ParseInstanceSpec("RG(2,2)#seed=4;range=-7..7"));
  for (const FormulationId& id : AllFormulations()) {
    if (id.base == FormulationId::Base::kBlp && game.num_players() != 2) {
      continue;
    }
    const MultilinearProgram program = Build(id, game);
    const std::string text = ExportModel(program);
    const MultilinearProgram parsed = ParseModel(text);
    CHECK(ExportModel(parsed) == text);
    CHECK(parsed.variables == program.variables);
    CHECK(parsed.constraints == program.constraints);
    CHECK(parsed.objective == program.objective);
    CHECK(parsed.objective_constant == program.objective_constant);
    CHECK(parsed.sense == program.sense);
    CHECK(parsed.target_value == program.target_value);
  }
}

TEST_CASE("report records") {
  ReportRecord record;
  record.instance = "RG(3,3)#seed=0;range=-100..100";
  record.formulation = "MLP2";
  record.solver = "global";
  record.status = SolveStatus::kTimeLimit;
  record.max_regret = 0.25;
  record.wall_time_s = 120.5;
  record.nodes = 42;
  record.seed = 7;
  const std::string line = WriteReportRecord(record);
  CHECK(line.find("\"status\":\"TimeLimit\"") != std::string::npos);
  CHECK(line.find("\"wall_time_s\":120.5") != std::string::npos);
  CHECK(line.back() == '\n');
}

TEST_CASE("atomic writes land complete or not at all") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "multinash_interop_test";
  fs::remove_all(dir);
  const std::string path = (dir / "nested" / "out.txt").string();
  AtomicWriteFile(path, "payload");
  CHECK(ReadFile(path) == "payload");
  CHECK_FALSE(fs::exists(path + ".tmp"));
  fs::remove_all(dir);
}

TEST_CASE("game files dispatch on extension") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "multinash_gamefile_test";
  fs::create_directories(dir);
  const Game game = Generate(ParseInstanceSpec("RG(2,2)#seed=5;range=-3..3"));

  const std::string nfg = (dir / "g.nfg").string();
  SaveGameFile(nfg, game);
  CHECK(LoadGameFile(nfg).payoff_tensor(0) == game.payoff_tensor(0));

  const std::string js = (dir / "g.game.json").string();
  SaveGameFile(js, game);
  CHECK(LoadGameFile(js).payoff_tensor(1) == game.payoff_tensor(1));
  fs::remove_all(dir);
}

}  // namespace
}  // namespace multinash
