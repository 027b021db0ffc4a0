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

// JSON rules documents.
//
// Top-level keys: squares, card_squares, deck, lanes, characters, options,
// caps. Every object is closed: unknown keys are rejected. Serialization
// uses sorted keys and integers only, so dumping a ruleset is byte-stable.

#ifndef DDHG_RULES_IO_HPP
#define DDHG_RULES_IO_HPP

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "ddhg/board.hpp"
#include "json.hpp"

namespace ddhg {

namespace rules_json {

using nlohmann::json;

inline json modes_to_json(ModeSet modes) {
  json arr = json::array();
  for (auto m : modes.members()) arr.push_back(std::string(to_string(m)));
  return arr;
}

inline json to_json(const SquareEffect& e) {
  json params = json::object();
  switch (e.kind) {
    case EffectKind::skip: params["turns"] = e.turns; break;
    case EffectKind::wait_until_roll:
      params["value"] = e.release_value;
      if (e.then_goto) params["then_goto"] = *e.then_goto;
      break;
    case EffectKind::advance: params["squares"] = e.squares; break;
    case EffectKind::go_to: params["target"] = e.target; break;
    case EffectKind::lane_entry: params["lane"] = e.lane; break;
    case EffectKind::draw_card: break;
  }
  return {{"index", e.square}, {"kind", std::string(to_string(e.kind))}, {"params", params},
          {"modes", modes_to_json(e.modes)}};
}

inline json to_json(const CardSpec& c) {
  json params = json::object();
  switch (c.kind) {
    case CardKind::skip: params["turns"] = c.turns; break;
    case CardKind::go_to:
      params["target"] = c.target;
      if (c.min_position) params["min_position"] = *c.min_position;
      break;
    case CardKind::global_setback: params["squares"] = c.squares; break;
    default: break;
  }
  return {{"id", c.id}, {"kind", std::string(to_string(c.kind))}, {"params", params},
          {"modes", modes_to_json(c.modes)}};
}

/// Walks a document and reports failures with a dotted field path.
class Reader {
 public:
  [[noreturn]] static void fail(const std::string& path, const std::string& what) {
    throw RulesError("rules schema violation at '" + path + "': " + what);
  }

  static const json& field(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing required field");
    return *it;
  }

  static void closed(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool known = false;
      for (const char* k : keys) known = known || it.key() == k;
      if (!known) fail(path + "." + it.key(), "unknown key");
    }
  }

  static int integer(const json& obj, const std::string& path, const char* key) {
    const json& v = field(obj, path, key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
  }

  static std::optional<int> opt_integer(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) return std::nullopt;
    return integer(obj, path, key);
  }

  static bool boolean(const json& obj, const std::string& path, const char* key) {
    const json& v = field(obj, path, key);
    if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
    return v.get<bool>();
  }

  static std::string text(const json& obj, const std::string& path, const char* key) {
    const json& v = field(obj, path, key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
  }

  static const json& array(const json& obj, const std::string& path, const char* key) {
    const json& v = field(obj, path, key);
    if (!v.is_array()) fail(path + "." + key, "expected an array");
    return v;
  }

  static TransportMode mode(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a transport mode string");
    auto m = mode_from_string(v.get<std::string>());
    if (!m) fail(path, "unknown transport mode '" + v.get<std::string>() + "'");
    return *m;
  }

  static ModeSet modes(const json& obj, const std::string& path) {
    const json& arr = array(obj, path, "modes");
    ModeSet out;
    for (std::size_t i = 0; i < arr.size(); ++i)
      out.insert(mode(arr[i], path + ".modes[" + std::to_string(i) + "]"));
    return out;
  }
};

inline SquareEffect square_from_json(const json& j, const std::string& path) {
  using R = Reader;
  R::closed(j, path, {"index", "kind", "params", "modes"});
  SquareEffect e;
  e.square = R::integer(j, path, "index");
  const std::string kind = R::text(j, path, "kind");
  const json& params = R::field(j, path, "params");
  const std::string pp = path + ".params";
  if (kind == "skip") {
    R::closed(params, pp, {"turns"});
    e.kind = EffectKind::skip;
    e.turns = R::integer(params, pp, "turns");
  } else if (kind == "wait_until_roll") {
    R::closed(params, pp, {"value", "then_goto"});
    e.kind = EffectKind::wait_until_roll;
    e.release_value = R::integer(params, pp, "value");
    e.then_goto = R::opt_integer(params, pp, "then_goto");
  } else if (kind == "advance") {
    R::closed(params, pp, {"squares"});
    e.kind = EffectKind::advance;
    e.squares = R::integer(params, pp, "squares");
  } else if (kind == "goto") {
    R::closed(params, pp, {"target"});
    e.kind = EffectKind::go_to;
    e.target = R::integer(params, pp, "target");
  } else if (kind == "lane_entry") {
    R::closed(params, pp, {"lane"});
    e.kind = EffectKind::lane_entry;
    e.lane = R::text(params, pp, "lane");
  } else {
    R::fail(path + ".kind", "unknown square effect kind '" + kind + "'");
  }
  e.modes = R::modes(j, path);
  return e;
}

inline CardSpec card_from_json(const json& j, const std::string& path) {
  using R = Reader;
  R::closed(j, path, {"id", "kind", "params", "modes"});
  CardSpec c;
  c.id = R::integer(j, path, "id");
  const std::string kind = R::text(j, path, "kind");
  const json& params = R::field(j, path, "params");
  const std::string pp = path + ".params";
  if (kind == "roll_move_backward" || kind == "roll_move_forward" ||
      kind == "ride_to_next_card_square" || kind == "goto_start") {
    R::closed(params, pp, {});
    c.kind = kind == "roll_move_backward"        ? CardKind::roll_move_backward
             : kind == "roll_move_forward"       ? CardKind::roll_move_forward
             : kind == "ride_to_next_card_square" ? CardKind::ride_to_next_card_square
                                                  : CardKind::goto_start;
  } else if (kind == "skip") {
    R::closed(params, pp, {"turns"});
    c.kind = CardKind::skip;
    c.turns = R::integer(params, pp, "turns");
  } else if (kind == "goto") {
    R::closed(params, pp, {"target", "min_position"});
    c.kind = CardKind::go_to;
    c.target = R::integer(params, pp, "target");
    c.min_position = R::opt_integer(params, pp, "min_position");
  } else if (kind == "global_setback") {
    R::closed(params, pp, {"squares"});
    c.kind = CardKind::global_setback;
    c.squares = R::integer(params, pp, "squares");
  } else {
    R::fail(path + ".kind", "unknown card kind '" + kind + "'");
  }
  c.modes = R::modes(j, path);
  return c;
}

}  // namespace rules_json

/// Serializes a ruleset to its JSON document form.
inline nlohmann::json rules_to_json(const RuleSet& rules) {
  using nlohmann::json;
  using namespace rules_json;
  json squares = json::array();
  for (const auto& [sq, e] : rules.effects) squares.push_back(to_json(e));
  json deck = json::array();
  for (const auto& c : rules.deck) deck.push_back(to_json(c));
  json lanes = json::array();
  for (const auto& l : rules.lanes)
    lanes.push_back({{"id", l.id}, {"entry", l.entry}, {"exit", l.exit}, {"length", l.length},
                     {"modes", modes_to_json(l.allowed_modes)}});
  json characters = json::array();
  for (const auto& c : rules.characters)
    characters.push_back({{"name", c.name},
                          {"mode", std::string(to_string(c.mode))},
                          {"affected_by_wind", c.affected_by_wind},
                          {"affected_by_rain", c.affected_by_rain},
                          {"blister_prone", c.blister_prone},
                          {"flat_tire_prone", c.flat_tire_prone},
                          {"engine_failure_prone", c.engine_failure_prone},
                          {"may_use_bike_lane", c.may_use_bike_lane},
                          {"may_use_highway", c.may_use_highway}});
  json caps = json::object();
  for (const auto& [key, max] : rules.caps) caps[key.str()] = max;
  json options = {{"num_squares", rules.num_squares},
                  {"start_rule", std::string(to_string(rules.options.start_rule))},
                  {"seconds_per_turn", rules.options.seconds_per_turn},
                  {"chain_depth_limit", rules.options.chain_depth_limit},
                  {"max_rounds", rules.options.max_rounds}};
  return {{"squares", squares},
          {"card_squares", json(std::vector<int>(rules.card_squares.begin(), rules.card_squares.end()))},
          {"deck", deck},
          {"lanes", lanes},
          {"characters", characters},
          {"options", options},
          {"caps", caps}};
}

inline std::string dump_rules(const RuleSet& rules) { return rules_to_json(rules).dump(2) + "\n"; }

/// Builds a ruleset from a parsed document. Throws RulesError naming the
/// offending field. Structural invariants are checked separately by
/// validate_rules.
inline RuleSet rules_from_json(const nlohmann::json& doc) {
  using R = rules_json::Reader;
  R::closed(doc, "$", {"squares", "card_squares", "deck", "lanes", "characters", "options", "caps"});
  RuleSet r;

  const auto& squares = R::array(doc, "$", "squares");
  for (std::size_t i = 0; i < squares.size(); ++i) {
    auto e = rules_json::square_from_json(squares[i], "$.squares[" + std::to_string(i) + "]");
    if (!r.effects.emplace(e.square, e).second)
      R::fail("$.squares[" + std::to_string(i) + "].index", "duplicate square " + std::to_string(e.square));
  }

  const auto& card_squares = R::array(doc, "$", "card_squares");
  for (std::size_t i = 0; i < card_squares.size(); ++i) {
    if (!card_squares[i].is_number_integer())
      R::fail("$.card_squares[" + std::to_string(i) + "]", "expected an integer");
    r.card_squares.insert(card_squares[i].get<int>());
  }

  const auto& deck = R::array(doc, "$", "deck");
  for (std::size_t i = 0; i < deck.size(); ++i)
    r.deck.push_back(rules_json::card_from_json(deck[i], "$.deck[" + std::to_string(i) + "]"));

  const auto& lanes = R::array(doc, "$", "lanes");
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    const std::string path = "$.lanes[" + std::to_string(i) + "]";
    R::closed(lanes[i], path, {"id", "entry", "exit", "length", "modes"});
    r.lanes.push_back({R::text(lanes[i], path, "id"), R::integer(lanes[i], path, "entry"),
                       R::integer(lanes[i], path, "exit"), R::integer(lanes[i], path, "length"),
                       R::modes(lanes[i], path)});
  }

  const auto& characters = R::array(doc, "$", "characters");
  for (std::size_t i = 0; i < characters.size(); ++i) {
    const std::string path = "$.characters[" + std::to_string(i) + "]";
    const auto& c = characters[i];
    R::closed(c, path,
              {"name", "mode", "affected_by_wind", "affected_by_rain", "blister_prone", "flat_tire_prone",
               "engine_failure_prone", "may_use_bike_lane", "may_use_highway"});
    CharacterSpec spec;
    spec.name = R::text(c, path, "name");
    spec.mode = R::mode(R::field(c, path, "mode"), path + ".mode");
    spec.affected_by_wind = R::boolean(c, path, "affected_by_wind");
    spec.affected_by_rain = R::boolean(c, path, "affected_by_rain");
    spec.blister_prone = R::boolean(c, path, "blister_prone");
    spec.flat_tire_prone = R::boolean(c, path, "flat_tire_prone");
    spec.engine_failure_prone = R::boolean(c, path, "engine_failure_prone");
    spec.may_use_bike_lane = R::boolean(c, path, "may_use_bike_lane");
    spec.may_use_highway = R::boolean(c, path, "may_use_highway");
    r.characters.push_back(std::move(spec));
  }

  const auto& options = R::field(doc, "$", "options");
  R::closed(options, "$.options",
            {"num_squares", "start_rule", "seconds_per_turn", "chain_depth_limit", "max_rounds"});
  r.num_squares = R::integer(options, "$.options", "num_squares");
  const std::string start = R::text(options, "$.options", "start_rule");
  if (start == "first_six_opens") r.options.start_rule = StartRule::first_six_opens;
  else if (start == "per_player_six") r.options.start_rule = StartRule::per_player_six;
  else if (start == "immediate") r.options.start_rule = StartRule::immediate;
  else R::fail("$.options.start_rule", "unknown start rule '" + start + "'");
  r.options.seconds_per_turn = R::integer(options, "$.options", "seconds_per_turn");
  r.options.chain_depth_limit = R::integer(options, "$.options", "chain_depth_limit");
  r.options.max_rounds = R::integer(options, "$.options", "max_rounds");

  const auto& caps = R::field(doc, "$", "caps");
  if (!caps.is_object()) R::fail("$.caps", "expected an object");
  for (auto it = caps.begin(); it != caps.end(); ++it) {
    auto key = EventKey::parse(it.key());
    if (!key) R::fail("$.caps." + it.key(), "cap key must be 'card:<id>' or 'square:<index>'");
    if (!it.value().is_number_integer()) R::fail("$.caps." + it.key(), "expected an integer");
    r.caps[*key] = it.value().get<int>();
  }
  return r;
}

/// Parses a rules document. Syntax errors carry the parser's line/column.
inline RuleSet load_rules(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw RulesError(std::string("rules parse error: ") + e.what());
  }
  return rules_from_json(doc);
}

inline RuleSet load_rules_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RulesError("cannot open rules file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return load_rules(ss.str());
  } catch (const RulesError& e) {
    throw RulesError(path + ": " + e.what());
  }
}

}  // namespace ddhg

#endif  // DDHG_RULES_IO_HPP
