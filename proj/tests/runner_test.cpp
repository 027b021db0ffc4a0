// Copyright 2026 The DDHG Simulator Authors
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


#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "ddhg/records_io.hpp"
#include "ddhg/runner.hpp"

namespace ddhg {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ddhg_runner_test_" + name);
  fs::remove_all(dir);
  return dir;
}

Scenario scenario(int n_players, std::uint64_t games, std::uint64_t seed) {
  Scenario s;
  s.n_players = n_players;
  s.n_games = games;
  s.master_seed = seed;
  return s;
}

TEST(DeriveSeed, PureAndIndexSensitive) {
  EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
  EXPECT_NE(derive_seed(42, 7), derive_seed(42, 8));
  EXPECT_NE(derive_seed(42, 7), derive_seed(43, 7));
  static_assert(derive_seed(1, 0) != derive_seed(0, 1));
}

TEST(DeriveSeed, NoCollisionsWithinABatch) {
  for (std::uint64_t master : {0ull, 42ull, 0xffffffffffffffffull}) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(master, i));
    EXPECT_EQ(seen.size(), 10000u);
  }
}

TEST(RunTrials, ThreadCountDoesNotChangeResults) {
  const RuleSet rules = default_ddhg();
  const auto serial = run_trials(rules, scenario(4, 300, 11), {1, false});
  const auto parallel = run_trials(rules, scenario(4, 300, 11), {8, false});
  EXPECT_EQ(serial, parallel);
}

TEST(RunTrials, GameIMatchesStandalonePlay) {
  const RuleSet rules = default_ddhg();
  const auto t = run_trials(rules, scenario(3, 20, 5), {4, false});
  for (std::uint64_t i = 0; i < 20; ++i) {
    GameRecord solo = play_game(rules, 3, derive_seed(5, i));
    solo.game_index = i;
    EXPECT_EQ(t.records[i], solo);
  }
}

TEST(RunTrials, RecordsAreWellFormed) {
  const auto t = run_trials(default_ddhg(), scenario(5, 500, 3), {4, false});
  ASSERT_EQ(t.records.size(), 500u);
  EXPECT_EQ(t.scenario.seconds_per_turn, 10);
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    const auto& r = t.records[i];
    EXPECT_EQ(r.game_index, i);
    int winners = 0, throws = 0;
    std::set<std::string> names;
    for (const auto& p : r.players) {
      winners += p.won;
      throws += p.counters.die_throws;
      names.insert(p.character);
    }
    EXPECT_EQ(winners, 1);
    EXPECT_EQ(names.size(), 5u);
    EXPECT_EQ(throws, r.total_throws);
    EXPECT_TRUE(r.players[static_cast<std::size_t>(r.winner_seat)].won);
    EXPECT_GE(r.distinct_unique_leaders, 1);
    EXPECT_GE(r.winner_lead_streak, 1);
    EXPECT_LE(r.winner_lead_streak, r.rounds);
  }
}

TEST(RunTrials, ZeroGamesRejected) {
  EXPECT_THROW(run_trials(default_ddhg(), scenario(2, 0, 1)), std::invalid_argument);
}

TEST(RunTrials, FaultNamesLowestFailingGame) {
  RuleSet rules = default_ddhg();
  rules.options.max_rounds = 1;
  try {
    run_trials(rules, scenario(2, 50, 9), {8, false});
    FAIL() << "expected a fault";
  } catch (const EngineFault& e) {
    const std::string msg = e.what();
    EXPECT_EQ(msg.rfind("game 0 (seed " + std::to_string(derive_seed(9, 0)) + ")", 0), 0u) << msg;
  }
}

TEST(RecordsIo, RowCountsAndByteStability) {
  const auto t = run_trials(default_ddhg(), scenario(3, 40, 21), {2, false});
  const auto a = scratch_dir("a"), b = scratch_dir("b");
  write_records(t, a);
  write_records(t, b);
  for (const char* f : {"per_game.csv", "players.csv", "summary.json"})
    EXPECT_EQ(read_text_file(a / f), read_text_file(b / f)) << f;

  auto lines = [](const std::string& s) { return std::count(s.begin(), s.end(), '\n'); };
  EXPECT_EQ(lines(read_text_file(a / "per_game.csv")), 41);
  EXPECT_EQ(lines(read_text_file(a / "players.csv")), 1 + 40 * 3);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(RecordsIo, ReadBackReproducesRecords) {
  const auto t = run_trials(default_ddhg(), scenario(5, 60, 8), {2, false});
  const auto dir = scratch_dir("round_trip");
  write_records(t, dir);
  const TrialSet back = read_records(dir);
  EXPECT_EQ(back.scenario, t.scenario);
  ASSERT_EQ(back.records.size(), t.records.size());
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    GameRecord expected = t.records[i];
    // The CSV files carry the counters only.
    expected.winner_positions.clear();
    for (auto& p : expected.players) p.returns_by_source.clear();
    EXPECT_EQ(back.records[i], expected) << i;
  }
  EXPECT_EQ(summary_text(back), summary_text(t));
  fs::remove_all(dir);
}

TEST(RecordsIo, CsvQuoting) {
  EXPECT_EQ(csv::quote("plain"), "plain");
  EXPECT_EQ(csv::quote("a,b"), "\"a,b\"");
  EXPECT_EQ(csv::quote("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv::split("x,\"a,b\",\"q\"\"\""), (std::vector<std::string>{"x", "a,b", "q\""}));
}

TEST(RecordsIo, MissingDirectoryIsAnIoError) {
  EXPECT_THROW(read_records(scratch_dir("does_not_exist")), IoError);
}

}  // namespace
}  // namespace ddhg
