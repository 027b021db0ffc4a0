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

#ifndef DDHG_BOARD_HPP
#define DDHG_BOARD_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ddhg {

/// Index of a square on the main track. Square 0 is the start.
using Square = int;

enum class TransportMode : std::uint8_t { walking, bicycle, motorcycle, bus, car };

inline constexpr std::array<TransportMode, 5> kAllModes = {
    TransportMode::walking, TransportMode::bicycle, TransportMode::motorcycle,
    TransportMode::bus, TransportMode::car};

inline constexpr std::string_view to_string(TransportMode m) {
  switch (m) {
    case TransportMode::walking: return "walking";
    case TransportMode::bicycle: return "bicycle";
    case TransportMode::motorcycle: return "motorcycle";
    case TransportMode::bus: return "bus";
    case TransportMode::car: return "car";
  }
  return "?";
}

inline std::optional<TransportMode> mode_from_string(std::string_view s) {
  for (auto m : kAllModes)
    if (to_string(m) == s) return m;
  return std::nullopt;
}

/// Small bitset over the five transport modes.
class ModeSet {
 public:
  constexpr ModeSet() = default;
  constexpr ModeSet(std::initializer_list<TransportMode> modes) {
    for (auto m : modes) insert(m);
  }
  static constexpr ModeSet all() {
    ModeSet s;
    for (auto m : kAllModes) s.insert(m);
    return s;
  }

  constexpr void insert(TransportMode m) { bits_ |= bit(m); }
  constexpr void erase(TransportMode m) { bits_ &= static_cast<std::uint8_t>(~bit(m)); }
  constexpr bool contains(TransportMode m) const { return (bits_ & bit(m)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }

  std::vector<TransportMode> members() const {
    std::vector<TransportMode> out;
    for (auto m : kAllModes)
      if (contains(m)) out.push_back(m);
    return out;
  }

  friend constexpr bool operator==(ModeSet, ModeSet) = default;

 private:
  static constexpr std::uint8_t bit(TransportMode m) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(m));
  }
  std::uint8_t bits_ = 0;
};

inline constexpr ModeSet kMotorized = {TransportMode::motorcycle, TransportMode::bus,
                                       TransportMode::car};
inline constexpr ModeSet kWeatherExposed = {TransportMode::walking, TransportMode::bicycle,
                                            TransportMode::motorcycle};

struct CharacterSpec {
  std::string name;
  TransportMode mode = TransportMode::walking;
  bool affected_by_wind = false;
  bool affected_by_rain = false;
  bool blister_prone = false;
  bool flat_tire_prone = false;
  bool engine_failure_prone = false;
  bool may_use_bike_lane = false;
  bool may_use_highway = false;

  friend bool operator==(const CharacterSpec&, const CharacterSpec&) = default;
};

enum class EffectKind : std::uint8_t { skip, wait_until_roll, advance, go_to, lane_entry, draw_card };

inline constexpr std::string_view to_string(EffectKind k) {
  switch (k) {
    case EffectKind::skip: return "skip";
    case EffectKind::wait_until_roll: return "wait_until_roll";
    case EffectKind::advance: return "advance";
    case EffectKind::go_to: return "goto";
    case EffectKind::lane_entry: return "lane_entry";
    case EffectKind::draw_card: return "draw_card";
  }
  return "?";
}

/// Fixed effect attached to an event square. Only the fields relevant to
/// `kind` are meaningful; the others keep their defaults.
struct SquareEffect {
  Square square = 0;
  EffectKind kind = EffectKind::skip;
  int turns = 0;                      // skip
  int release_value = 0;              // wait_until_roll
  std::optional<Square> then_goto;    // wait_until_roll
  int squares = 0;                    // advance
  Square target = 0;                  // goto
  std::string lane;                   // lane_entry
  ModeSet modes = ModeSet::all();

  /// A goto to square 0 is a return to start and counts as such.
  bool is_return_to_start() const { return kind == EffectKind::go_to && target == 0; }

  friend bool operator==(const SquareEffect&, const SquareEffect&) = default;
};

enum class CardKind : std::uint8_t {
  roll_move_backward,
  roll_move_forward,
  skip,
  ride_to_next_card_square,
  go_to,
  global_setback,
  goto_start
};

inline constexpr std::string_view to_string(CardKind k) {
  switch (k) {
    case CardKind::roll_move_backward: return "roll_move_backward";
    case CardKind::roll_move_forward: return "roll_move_forward";
    case CardKind::skip: return "skip";
    case CardKind::ride_to_next_card_square: return "ride_to_next_card_square";
    case CardKind::go_to: return "goto";
    case CardKind::global_setback: return "global_setback";
    case CardKind::goto_start: return "goto_start";
  }
  return "?";
}

struct CardSpec {
  int id = 0;
  CardKind kind = CardKind::skip;
  int turns = 0;                       // skip
  Square target = 0;                   // goto
  std::optional<Square> min_position;  // goto
  int squares = 0;                     // global_setback
  ModeSet modes = ModeSet::all();

  friend bool operator==(const CardSpec&, const CardSpec&) = default;
};

/// A two-ended shortcut. Cells are numbered 1..length; the exit square is
/// reached one step after the last cell.
struct LaneSpec {
  std::string id;
  Square entry = 0;
  Square exit = 0;
  int length = 1;
  ModeSet allowed_modes;

  friend bool operator==(const LaneSpec&, const LaneSpec&) = default;
};

enum class StartRule : std::uint8_t {
  first_six_opens,  // the first 6 thrown by anyone opens the game for all
  per_player_six,   // each player needs their own 6
  immediate,        // no start gate
};

inline constexpr std::string_view to_string(StartRule r) {
  switch (r) {
    case StartRule::first_six_opens: return "first_six_opens";
    case StartRule::per_player_six: return "per_player_six";
    case StartRule::immediate: return "immediate";
  }
  return "?";
}

struct RuleOptions {
  StartRule start_rule = StartRule::first_six_opens;
  int seconds_per_turn = 10;
  int chain_depth_limit = 20;
  int max_rounds = 100000;

  friend bool operator==(const RuleOptions&, const RuleOptions&) = default;
};

/// Identifies an event that can be capped per player.
struct EventKey {
  enum class Source : std::uint8_t { card, square };
  Source source = Source::card;
  int id = 0;

  static EventKey card(int id) { return {Source::card, id}; }
  static EventKey square(int id) { return {Source::square, id}; }

  /// "card:7" / "square:112"
  std::string str() const {
    return (source == Source::card ? "card:" : "square:") + std::to_string(id);
  }
  static std::optional<EventKey> parse(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    auto head = s.substr(0, colon);
    auto tail = std::string(s.substr(colon + 1));
    if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    int id = std::stoi(tail);
    if (head == "card") return card(id);
    if (head == "square") return square(id);
    return std::nullopt;
  }

  friend auto operator<=>(const EventKey&, const EventKey&) = default;
};

struct RuleSet {
  Square num_squares = 115;  // index of the finish square
  std::map<Square, SquareEffect> effects;
  std::set<Square> card_squares;
  std::vector<LaneSpec> lanes;
  std::vector<CardSpec> deck;
  std::vector<CharacterSpec> characters;
  RuleOptions options;
  std::map<EventKey, int> caps;

  Square finish() const { return num_squares; }

  const LaneSpec* lane(std::string_view id) const {
    for (const auto& l : lanes)
      if (l.id == id) return &l;
    return nullptr;
  }
  const CardSpec* card(int id) const {
    for (const auto& c : deck)
      if (c.id == id) return &c;
    return nullptr;
  }
  std::optional<int> cap(EventKey key) const {
    auto it = caps.find(key);
    if (it == caps.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

/// Raised for malformed rule documents and inconsistent configurations.
class RulesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline SquareEffect skip_square(Square s, int turns, ModeSet modes = ModeSet::all()) {
  SquareEffect e;
  e.square = s;
  e.kind = EffectKind::skip;
  e.turns = turns;
  e.modes = modes;
  return e;
}

inline CardSpec make_card(int id, CardKind kind, ModeSet modes) {
  CardSpec c;
  c.id = id;
  c.kind = kind;
  c.modes = modes;
  return c;
}

}  // namespace detail

/// Default positions of the 17 draw-card squares. The printed board only
/// marks them graphically; square 74 is the one position fixed by the rules
/// text. Override through a rules file when a different layout is known.
inline const std::set<Square>& default_card_squares() {
  static const std::set<Square> squares = {5,  12, 21, 26, 33, 38, 48,  53,  59,
                                           68, 74, 79, 86, 95, 102, 108, 111};
  return squares;
}

/// The Donald Duck Holiday Game ruleset.
inline RuleSet default_ddhg() {
  using detail::skip_square;
  using M = TransportMode;
  RuleSet r;
  r.num_squares = 115;

  auto add = [&r](SquareEffect e) { r.effects.emplace(e.square, std::move(e)); };

  for (Square s : {9, 13, 17, 18, 19, 24, 39, 40, 41, 63, 64, 65, 81, 83, 90, 91})
    add(skip_square(s, 1));
  add(skip_square(29, 2));
  add(skip_square(50, 2));
  add(skip_square(56, 1, kMotorized));
  add(skip_square(105, 1, kMotorized));

  SquareEffect bike;
  bike.square = 45;
  bike.kind = EffectKind::lane_entry;
  bike.lane = "bike_lane";
  bike.modes = {M::walking, M::bicycle};
  add(bike);

  SquareEffect highway;
  highway.square = 100;
  highway.kind = EffectKind::lane_entry;
  highway.lane = "highway";
  highway.modes = kMotorized;
  add(highway);

  SquareEffect money_bin;
  money_bin.square = 71;
  money_bin.kind = EffectKind::advance;
  money_bin.squares = 3;
  add(money_bin);

  SquareEffect dishes;
  dishes.square = 92;
  dishes.kind = EffectKind::wait_until_roll;
  dishes.release_value = 6;
  add(dishes);

  SquareEffect tunnel;
  tunnel.square = 98;
  tunnel.kind = EffectKind::wait_until_roll;
  tunnel.release_value = 2;
  tunnel.then_goto = 99;
  add(tunnel);

  SquareEffect camping_card;
  camping_card.square = 112;
  camping_card.kind = EffectKind::go_to;
  camping_card.target = 0;
  add(camping_card);

  r.card_squares = default_card_squares();

  r.lanes.push_back({"bike_lane", 45, 55, 2, {M::walking, M::bicycle}});
  r.lanes.push_back({"highway", 100, 109, 2, kMotorized});

  using detail::make_card;
  r.deck.push_back(make_card(1, CardKind::roll_move_backward, kWeatherExposed));
  r.deck.push_back(make_card(2, CardKind::roll_move_forward, kWeatherExposed));
  auto blister = make_card(3, CardKind::skip, {M::walking});
  blister.turns = 1;
  r.deck.push_back(blister);
  r.deck.push_back(make_card(4, CardKind::ride_to_next_card_square, {M::walking}));
  auto flat = make_card(5, CardKind::skip, {M::bus, M::bicycle, M::car, M::motorcycle});
  flat.turns = 1;
  r.deck.push_back(flat);
  auto roadworks = make_card(6, CardKind::skip, ModeSet::all());
  roadworks.turns = 3;
  r.deck.push_back(roadworks);
  r.deck.push_back(make_card(7, CardKind::goto_start, ModeSet::all()));
  auto camera = make_card(8, CardKind::go_to, ModeSet::all());
  camera.target = 37;
  camera.min_position = 26;
  r.deck.push_back(camera);
  auto postcards = make_card(9, CardKind::go_to, ModeSet::all());
  postcards.target = 32;
  r.deck.push_back(postcards);
  auto engine = make_card(10, CardKind::skip, kMotorized);
  engine.turns = 2;
  r.deck.push_back(engine);
  auto rain = make_card(11, CardKind::global_setback, kWeatherExposed);
  rain.squares = 3;
  r.deck.push_back(rain);

  auto character = [](std::string name, M mode) {
    CharacterSpec c;
    c.name = std::move(name);
    c.mode = mode;
    return c;
  };
  auto walkers = character("Huey, Dewey & Louie", M::walking);
  walkers.affected_by_wind = walkers.affected_by_rain = true;
  walkers.blister_prone = true;
  walkers.may_use_bike_lane = true;
  auto clarabelle = character("Clarabelle", M::bicycle);
  clarabelle.affected_by_wind = clarabelle.affected_by_rain = true;
  clarabelle.flat_tire_prone = true;
  clarabelle.may_use_bike_lane = true;
  auto horace = character("Horace", M::motorcycle);
  horace.affected_by_wind = horace.affected_by_rain = true;
  horace.flat_tire_prone = horace.engine_failure_prone = true;
  horace.may_use_highway = true;
  auto goofy = character("Goofy", M::bus);
  goofy.flat_tire_prone = goofy.engine_failure_prone = true;
  goofy.may_use_highway = true;
  auto donald = character("Donald", M::car);
  donald.flat_tire_prone = donald.engine_failure_prone = true;
  donald.may_use_highway = true;
  r.characters = {walkers, clarabelle, horace, goofy, donald};

  r.options = RuleOptions{};
  return r;
}

struct Violation {
  std::string invariant;
  std::string location;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Checks every structural invariant of a ruleset. An empty result means the
/// ruleset is safe to hand to the engine.
inline std::vector<Violation> validate_rules(const RuleSet& rules) {
  std::vector<Violation> out;
  auto flag = [&out](std::string inv, std::string loc) { out.push_back({std::move(inv), std::move(loc)}); };
  const Square finish = rules.num_squares;
  auto in_board = [finish](Square s) { return s >= 0 && s <= finish; };

  if (finish < 2) flag("num_squares >= 2", "options.num_squares");

  for (const auto& [sq, e] : rules.effects) {
    const std::string loc = "squares[" + std::to_string(sq) + "]";
    if (e.square != sq) flag("effect square matches its key", loc);
    if (sq < 1 || sq >= finish) flag("effect square in [1, finish - 1]", loc);
    if (rules.card_squares.count(sq)) flag("card squares disjoint from event squares", loc);
    switch (e.kind) {
      case EffectKind::skip:
        if (e.turns < 1) flag("skip turns >= 1", loc);
        break;
      case EffectKind::advance:
        if (e.squares < 1) flag("advance squares >= 1", loc);
        break;
      case EffectKind::wait_until_roll:
        if (e.release_value < 1 || e.release_value > 6) flag("release value in [1, 6]", loc);
        if (e.then_goto && !in_board(*e.then_goto)) flag("then_goto target in board range", loc);
        break;
      case EffectKind::go_to:
        if (!in_board(e.target)) flag("goto target in board range", loc);
        break;
      case EffectKind::lane_entry: {
        const LaneSpec* lane = rules.lane(e.lane);
        if (!lane) flag("lane_entry references a known lane", loc);
        else if (lane->entry != sq) flag("lane_entry sits on the lane's entry square", loc);
        break;
      }
      case EffectKind::draw_card:
        flag("draw_card is expressed through card_squares", loc);
        break;
    }
    if (e.modes.empty()) flag("effect modes non-empty", loc);
  }

  for (Square sq : rules.card_squares) {
    if (sq < 1 || sq > finish - 1) flag("card square in [1, finish - 1]", "card_squares[" + std::to_string(sq) + "]");
  }

  std::set<std::string> lane_ids;
  for (const auto& lane : rules.lanes) {
    const std::string loc = "lanes[" + lane.id + "]";
    if (!lane_ids.insert(lane.id).second) flag("lane ids unique", loc);
    if (!in_board(lane.entry) || !in_board(lane.exit)) flag("lane entry/exit in board range", loc);
    if (lane.entry >= lane.exit) flag("lane entry < exit", loc);
    if (lane.length < 1) flag("lane length >= 1", loc);
    if (rules.card_squares.count(lane.entry) || rules.card_squares.count(lane.exit))
      flag("lane entry/exit are not card squares", loc);
    if (lane.exit == finish) flag("lane exit before finish", loc);
  }

  std::set<int> card_ids;
  for (const auto& card : rules.deck) {
    const std::string loc = "deck[" + std::to_string(card.id) + "]";
    if (!card_ids.insert(card.id).second) flag("card ids unique", loc);
    if (card.id < 1) flag("card id >= 1", loc);
    switch (card.kind) {
      case CardKind::skip:
        if (card.turns < 1) flag("skip turns >= 1", loc);
        break;
      case CardKind::go_to:
        if (!in_board(card.target)) flag("goto target in board range", loc);
        if (card.min_position && !in_board(*card.min_position)) flag("min_position in board range", loc);
        break;
      case CardKind::global_setback:
        if (card.squares < 1) flag("setback squares >= 1", loc);
        break;
      default:
        break;
    }
  }

  std::set<std::string> names;
  for (const auto& c : rules.characters) {
    const std::string loc = "characters[" + c.name + "]";
    if (!names.insert(c.name).second) flag("character names unique", loc);
    if (c.may_use_bike_lane && c.may_use_highway) flag("bike lane and highway access exclusive", loc);
  }
  if (rules.characters.empty()) flag("at least one character", "characters");

  for (const auto& [key, max] : rules.caps) {
    const std::string loc = "caps[" + key.str() + "]";
    if (max < 1) flag("cap >= 1", loc);
    if (key.source == EventKey::Source::card && !card_ids.count(key.id))
      flag("capped card exists in deck", loc);
    if (key.source == EventKey::Source::square && !rules.effects.count(key.id))
      flag("capped square is an event square", loc);
  }

  if (rules.options.seconds_per_turn < 0) flag("seconds_per_turn >= 0", "options.seconds_per_turn");
  if (rules.options.chain_depth_limit < 1) flag("chain_depth_limit >= 1", "options.chain_depth_limit");
  if (rules.options.max_rounds < 1) flag("max_rounds >= 1", "options.max_rounds");
  return out;
}

/// The effect a player of `mode` experiences when resting on `square`.
/// Card squares yield a draw_card effect for every mode.
inline std::optional<SquareEffect> effect_for(const RuleSet& rules, Square square, TransportMode mode) {
  if (square < 0 || square > rules.num_squares)
    throw std::out_of_range("square " + std::to_string(square) + " outside [0, " +
                            std::to_string(rules.num_squares) + "]");
  if (rules.card_squares.count(square)) {
    SquareEffect e;
    e.square = square;
    e.kind = EffectKind::draw_card;
    return e;
  }
  auto it = rules.effects.find(square);
  if (it == rules.effects.end() || !it->second.modes.contains(mode)) return std::nullopt;
  return it->second;
}

}  // namespace ddhg

#endif  // DDHG_BOARD_HPP
