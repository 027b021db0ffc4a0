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

#include <fstream>
#include <sstream>
#include <string>

#include "ddhg/experiments.hpp"
#include "ddhg/rules_io.hpp"

namespace ddhg {
namespace {

std::string error_of(const std::string& doc) {
  try {
    load_rules(doc);
  } catch (const RulesError& e) {
    return e.what();
  }
  return {};
}

TEST(RulesIo, RoundTripIsIdentity) {
  const RuleSet r = default_ddhg();
  EXPECT_EQ(load_rules(dump_rules(r)), r);
}

TEST(RulesIo, RoundTripPreservesVariantsAndOptions) {
  RuleSet r = apply_variant(default_ddhg(), *find_variant("revised"));
  r.options.start_rule = StartRule::per_player_six;
  r.options.max_rounds = 500;
  const std::string text = dump_rules(r);
  EXPECT_EQ(load_rules(text), r);
  EXPECT_EQ(dump_rules(load_rules(text)), text);
}

TEST(RulesIo, SerializationIsByteStable) {
  EXPECT_EQ(dump_rules(default_ddhg()), dump_rules(default_ddhg()));
  EXPECT_EQ(dump_rules(default_ddhg()).find('.'), std::string::npos) << "no floating-point fields";
}

TEST(RulesIo, ShippedRulesFileMatchesBuiltIn) {
  std::ifstream in(DDHG_SOURCE_DIR "/data/ddhg_rules.json");
  ASSERT_TRUE(in) << "data/ddhg_rules.json missing";
  std::ostringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), dump_rules(default_ddhg()));
}

TEST(RulesIo, UnknownEffectKindIsNamed) {
  auto doc = rules_to_json(default_ddhg());
  doc["squares"][0]["kind"] = "teleport";
  const auto msg = error_of(doc.dump());
  EXPECT_NE(msg.find("teleport"), std::string::npos) << msg;
  EXPECT_NE(msg.find("squares[0].kind"), std::string::npos) << msg;
}

TEST(RulesIo, MissingDeckIsReported) {
  auto doc = rules_to_json(default_ddhg());
  doc.erase("deck");
  const auto msg = error_of(doc.dump());
  EXPECT_NE(msg.find("deck"), std::string::npos) << msg;
  EXPECT_NE(msg.find("missing"), std::string::npos) << msg;
}

TEST(RulesIo, UnknownKeysAreErrors) {
  auto doc = rules_to_json(default_ddhg());
  doc["board_image"] = "figure1.png";
  EXPECT_NE(error_of(doc.dump()).find("board_image"), std::string::npos);

  auto nested = rules_to_json(default_ddhg());
  nested["lanes"][0]["speed"] = 2;
  EXPECT_NE(error_of(nested.dump()).find("lanes[0].speed"), std::string::npos);
}

TEST(RulesIo, SyntaxErrorsCarryLineContext) {
  const auto msg = error_of("{\n  \"squares\": [\n  oops\n}");
  EXPECT_NE(msg.find("parse error"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(RulesIo, BadValuesAreRejected) {
  auto mode = rules_to_json(default_ddhg());
  mode["deck"][0]["modes"][0] = "hovercraft";
  EXPECT_NE(error_of(mode.dump()).find("hovercraft"), std::string::npos);

  auto type = rules_to_json(default_ddhg());
  type["options"]["max_rounds"] = "many";
  EXPECT_NE(error_of(type.dump()).find("options.max_rounds"), std::string::npos);

  auto cap = rules_to_json(default_ddhg());
  cap["caps"]["route_map"] = 1;
  EXPECT_NE(error_of(cap.dump()).find("caps.route_map"), std::string::npos);
}

TEST(RulesIo, LoadedAlternateBoardIsUsable) {
  auto doc = rules_to_json(default_ddhg());
  doc["card_squares"] = {5, 74};
  const RuleSet r = load_rules(doc.dump());
  EXPECT_EQ(r.card_squares, (std::set<Square>{5, 74}));
  EXPECT_TRUE(validate_rules(r).empty());
}

}  // namespace
}  // namespace ddhg
