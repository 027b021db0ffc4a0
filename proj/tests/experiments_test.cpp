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

#include <filesystem>

#include "ddhg/experiments.hpp"

namespace ddhg {
namespace {

TEST(Variants, PresetsAreTheDocumentedOnes) {
  std::vector<std::string> names;
  for (const auto& v : preset_variants()) names.push_back(v.name);
  EXPECT_EQ(names, (std::vector<std::string>{"original", "no-rain", "no-wind", "no-rain-and-wind",
                                             "no-rain-and-tailwind", "revised"}));
  EXPECT_EQ(find_variant("no-wind")->removed_card_ids, (std::set<int>{1, 2}));
  const auto revised = *find_variant("revised");
  EXPECT_EQ(revised.removed_card_ids, (std::set<int>{2, 11}));
  EXPECT_EQ(revised.caps.at(EventKey::card(7)), 1);
  EXPECT_EQ(revised.caps.at(EventKey::square(112)), 1);
  EXPECT_FALSE(find_variant("no-snow"));
}

TEST(Variants, ApplyLeavesInputUntouched) {
  const RuleSet base = default_ddhg();
  const RuleSet copy = base;
  const RuleSet revised = apply_variant(base, *find_variant("revised"));
  EXPECT_EQ(base, copy);
  EXPECT_EQ(revised.deck.size(), 9u);
  EXPECT_EQ(revised.card(2), nullptr);
  EXPECT_EQ(revised.card(11), nullptr);
  EXPECT_NE(revised.card(1), nullptr);
  EXPECT_EQ(revised.cap(EventKey::card(7)), 1);
  EXPECT_TRUE(validate_rules(revised).empty());
  EXPECT_EQ(apply_variant(base, *find_variant("original")), base);
}

TEST(Variants, UnknownReferencesAreErrors) {
  const RuleSet base = default_ddhg();
  EXPECT_THROW(apply_variant(base, {"bad", {12}, {}}), RulesError);
  EXPECT_THROW(apply_variant(base, {"bad", {}, {{EventKey::square(10), 1}}}), RulesError);
  EXPECT_THROW(apply_variant(base, {"bad", {}, {{EventKey::card(7), 0}}}), RulesError);
  // Removing the same card twice is not possible once it is gone.
  const RuleSet no_rain = apply_variant(base, *find_variant("no-rain"));
  EXPECT_THROW(apply_variant(no_rain, *find_variant("no-rain")), RulesError);
}

TEST(Matrix, ShapeAndLabels) {
  const auto m = run_matrix(default_ddhg(), "ddhg", {2, 5}, {*find_variant("original"), *find_variant("no-rain")}, 30, 7,
                            {4, false});
  ASSERT_EQ(m.cells.size(), 4u);
  EXPECT_EQ(m.cells[0].n_players, 2);
  EXPECT_EQ(m.cells[1].variant, "no-rain");
  EXPECT_EQ(m.cells[3].n_players, 5);
  for (const auto& c : m.cells) {
    EXPECT_EQ(c.trials.records.size(), 30u);
    EXPECT_EQ(c.trials.scenario.variant, c.variant);
    EXPECT_EQ(c.trials.scenario.ruleset, "ddhg");
  }
  ASSERT_EQ(m.comparisons.size(), 2u);
  const auto& cmp5 = m.comparisons.at(5);
  ASSERT_EQ(cmp5.columns.size(), 2u);
  EXPECT_EQ(cmp5.columns[0].wins.size(), 5u);
  EXPECT_EQ(cmp5.columns[0].mean_rounds_delta, 0);
}

TEST(Matrix, CellsAreSeededIndependently) {
  const auto both = run_matrix(default_ddhg(), "ddhg", {3}, {*find_variant("original"), *find_variant("no-wind")}, 25,
                               99, {2, false});
  const auto single = run_matrix(default_ddhg(), "ddhg", {3}, {*find_variant("original")}, 25, 99, {1, false});
  EXPECT_EQ(both.cells[0].trials, single.cells[0].trials);
  EXPECT_EQ(both.cells[0].trials.scenario.master_seed, cell_seed(99, 3, 0));
  EXPECT_NE(cell_seed(99, 3, 0), cell_seed(99, 3, 1));
  EXPECT_NE(cell_seed(99, 3, 0), cell_seed(99, 4, 0));
}

TEST(Matrix, WritesTheDirectoryLayout) {
  namespace fs = std::filesystem;
  const fs::path out = fs::temp_directory_path() / "ddhg_experiments_test";
  fs::remove_all(out);
  const auto m = run_matrix(default_ddhg(), "ddhg", {2}, {*find_variant("original"), *find_variant("revised")}, 10, 1);
  write_matrix(m, out);
  for (const char* v : {"original", "revised"})
    for (const char* f : {"per_game.csv", "players.csv", "summary.json"})
      EXPECT_TRUE(fs::exists(out / "2p" / v / f)) << v << "/" << f;
  EXPECT_TRUE(fs::exists(out / "comparison_2p.json"));
  fs::remove_all(out);
}

}  // namespace
}  // namespace ddhg
