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

// Turn-by-turn state machine for one game.
//
// Movement model:
//   * Main-track moves overshooting the finish bounce back by the excess.
//   * Resting exactly on a lane's entry square (with an eligible mode) grants
//     access for the player's next throw, which then walks the lane cell by
//     cell: entry -> cell 1 .. cell L -> exit -> exit + 1 ... A player who
//     stops inside the lane continues through it on the next throw.
//   * The lane is declined on the entry throw if it would end on a
//     return-to-start square that would actually send the player back.
//   * Every forced relocation (event square or card, forward or backward)
//     resolves the destination square, so effects can chain. Chains deeper
//     than options.chain_depth_limit raise an EngineFault.

#ifndef DDHG_ENGINE_HPP
#define DDHG_ENGINE_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddhg/board.hpp"
#include "ddhg/record.hpp"
#include "ddhg/rng.hpp"

namespace ddhg {

class EngineFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMainTrack = -1;

struct Position {
  int lane = kMainTrack;  // index into RuleSet::lanes, or kMainTrack
  int index = 0;          // main: 0..finish; lane: 1..length

  bool on_main() const { return lane == kMainTrack; }
  static Position main(int index) { return {kMainTrack, index}; }

  friend bool operator==(const Position&, const Position&) = default;
};

/// Linear progress along the track. Lane cells count as entry + cell.
inline int progress(const RuleSet& rules, const Position& p) {
  if (p.on_main()) return p.index;
  return rules.lanes.at(static_cast<std::size_t>(p.lane)).entry + p.index;
}

struct PendingRelease {
  int value = 6;
  std::optional<Square> then_goto;

  friend bool operator==(const PendingRelease&, const PendingRelease&) = default;
};

struct PlayerState {
  int character = 0;  // index into RuleSet::characters
  TransportMode mode = TransportMode::walking;
  int seat = 0;
  Position position;
  bool started = false;
  int skip_remaining = 0;
  std::optional<PendingRelease> wait_for_roll;
  std::optional<int> lane_access;  // lane index usable on the next throw
  PlayerCounters counters;
  std::map<EventKey, int> cap_usage;
  std::map<EventKey, int> returns_by_source;

  friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

/// Cyclic deck: drawing returns the card at the cursor and advances it,
/// which is the same as putting the card back at the bottom.
struct DeckState {
  std::vector<int> order;
  std::size_t next = 0;

  friend bool operator==(const DeckState&, const DeckState&) = default;
};

enum class TraceKind : std::uint8_t {
  gate,        // start-gate throw that did not open
  start,       // opening move after a 6
  move,        // ordinary die move (main track or lane)
  skip,        // turn spent skipping
  wait,        // failed release roll
  release,     // successful release roll
  square,      // event square effect applied
  capped,      // capped event suppressed
  card,        // card drawn (and applied to the drawer, if affected)
  setback,     // a global setback moving one player
};

inline constexpr std::string_view to_string(TraceKind k) {
  switch (k) {
    case TraceKind::gate: return "gate";
    case TraceKind::start: return "start";
    case TraceKind::move: return "move";
    case TraceKind::skip: return "skip";
    case TraceKind::wait: return "wait";
    case TraceKind::release: return "release";
    case TraceKind::square: return "square";
    case TraceKind::capped: return "capped";
    case TraceKind::card: return "card";
    case TraceKind::setback: return "setback";
  }
  return "?";
}

/// One resolved step. `before`/`after` are progress values of `seat`, so the
/// signed sum of (after - before) over a player's entries equals their
/// current progress.
struct TraceEntry {
  TraceKind kind = TraceKind::move;
  int seat = 0;
  int detail = 0;  // square index for square effects, card id for cards, roll for moves
  int before = 0;
  int after = 0;
  bool applied = true;  // false for cards that did not affect the drawer

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct TurnLog {
  int round = 0;
  int seat = 0;
  std::vector<int> throws;
  std::vector<TraceEntry> trace;
};

struct GameState;

struct GameOptions {
  bool record_positions = false;
  /// Invoked after every turn with the turn's log.
  std::function<void(const TurnLog&, const GameState&)> on_turn;
};

struct GameState {
  const RuleSet* rules = nullptr;  // must outlive the state
  std::vector<PlayerState> players;  // indexed by seat
  DeckState deck;
  int round = 1;
  int turn_pointer = 0;
  bool game_open = false;
  Rng rng{0};
  /// Die values consumed before the random stream. Used to script turns.
  std::deque<int> scripted_rolls;
  std::optional<int> winner;
  std::vector<std::optional<int>> leader_timeline;   // raw unique leader per round
  std::vector<std::vector<int>> position_timeline;  // per round, progress by seat
  bool record_positions = false;

  const RuleSet& rule_set() const { return *rules; }
};

inline Square move_with_bounce(Square finish, Square pos, int steps) {
  const int target = pos + steps;
  return target <= finish ? target : finish - (target - finish);
}

inline GameState new_game(const RuleSet& rules, int n_players, std::uint64_t seed) {
  const int available = static_cast<int>(rules.characters.size());
  if (n_players < 1 || n_players > available)
    throw std::invalid_argument("n_players " + std::to_string(n_players) + " outside [1, " +
                                std::to_string(available) + "]");
  GameState s;
  s.rules = &rules;
  s.rng = Rng(seed);

  // One shuffle picks both the subset of characters and their seat order.
  std::vector<int> characters(static_cast<std::size_t>(available));
  for (int i = 0; i < available; ++i) characters[static_cast<std::size_t>(i)] = i;
  s.rng.shuffle(std::span<int>(characters));
  for (int seat = 0; seat < n_players; ++seat) {
    PlayerState p;
    p.character = characters[static_cast<std::size_t>(seat)];
    p.mode = rules.characters[static_cast<std::size_t>(p.character)].mode;
    p.seat = seat;
    p.started = rules.options.start_rule == StartRule::immediate;
    s.players.push_back(std::move(p));
  }

  for (const auto& c : rules.deck) s.deck.order.push_back(c.id);
  s.rng.shuffle(std::span<int>(s.deck.order));
  s.game_open = rules.options.start_rule == StartRule::immediate;
  return s;
}

struct MovePlan {
  Position destination;
  bool via_lane = false;
};

/// Where a die roll takes the player, including lane routing.
inline MovePlan plan_move(const RuleSet& rules, const PlayerState& player, int roll) {
  const Square finish = rules.finish();
  auto through_lane = [&](const LaneSpec& lane, int lane_index, int cell, int steps) -> Position {
    const int cells_left = lane.length - cell;
    if (steps <= cells_left) return {lane_index, cell + steps};
    return Position::main(move_with_bounce(finish, lane.exit, steps - cells_left - 1));
  };

  const Position& pos = player.position;
  if (!pos.on_main()) {
    const auto& lane = rules.lanes.at(static_cast<std::size_t>(pos.lane));
    return {through_lane(lane, pos.lane, pos.index, roll), true};
  }
  if (player.lane_access) {
    const int li = *player.lane_access;
    const auto& lane = rules.lanes.at(static_cast<std::size_t>(li));
    if (pos.index == lane.entry && lane.allowed_modes.contains(player.mode)) {
      const Position dest = through_lane(lane, li, 0, roll);
      bool declined = false;
      if (dest.on_main()) {
        auto it = rules.effects.find(dest.index);
        if (it != rules.effects.end() && it->second.is_return_to_start() &&
            it->second.modes.contains(player.mode)) {
          const EventKey key = EventKey::square(dest.index);
          auto cap = rules.cap(key);
          auto used = player.cap_usage.find(key);
          const bool exhausted = cap && used != player.cap_usage.end() && used->second >= *cap;
          declined = !exhausted;
        }
      }
      if (!declined) return {dest, true};
    }
  }
  return {Position::main(move_with_bounce(finish, pos.index, roll)), false};
}

inline Position route_move(const RuleSet& rules, const PlayerState& player, int roll) {
  return plan_move(rules, player, roll).destination;
}

inline int draw_card(GameState& state) {
  if (state.deck.order.empty()) throw RulesError("cannot draw from an empty deck");
  const int id = state.deck.order[state.deck.next];
  state.deck.next = (state.deck.next + 1) % state.deck.order.size();
  return id;
}

namespace detail {

/// Applies effects for one turn, accumulating the turn's log.
class Resolver {
 public:
  Resolver(GameState& state, TurnLog& log) : state_(state), rules_(*state.rules), log_(log) {}

  int throw_die(int seat) {
    int value;
    if (!state_.scripted_rolls.empty()) {
      value = state_.scripted_rolls.front();
      state_.scripted_rolls.pop_front();
    } else {
      value = state_.rng.die();
    }
    ++player(seat).counters.die_throws;
    log_.throws.push_back(value);
    return value;
  }

  PlayerState& player(int seat) { return state_.players[static_cast<std::size_t>(seat)]; }

  void record(TraceKind kind, int seat, int detail, int before, int after, bool applied = true) {
    log_.trace.push_back({kind, seat, detail, before, after, applied});
  }

  /// Moves a player by an event. Clears pending releases and lane access;
  /// does not resolve the destination.
  void relocate(int seat, Position dest, TraceKind kind, int detail) {
    auto& p = player(seat);
    const int before = progress(rules_, p.position);
    p.position = dest;
    p.wait_for_roll.reset();
    p.lane_access.reset();
    const int after = progress(rules_, dest);
    p.counters.net_event_displacement += after - before;
    record(kind, seat, detail, before, after);
  }

  void return_to_start(int seat, EventKey source, TraceKind kind, int detail) {
    auto& p = player(seat);
    ++p.counters.returns_to_start;
    ++p.returns_by_source[source];
    relocate(seat, Position::main(0), kind, detail);
  }

  /// Steps back along the path the player came, unwinding lane cells.
  Position step_back(const Position& from, int squares) const {
    if (!from.on_main()) {
      if (squares < from.index) return {from.lane, from.index - squares};
      const auto& lane = rules_.lanes.at(static_cast<std::size_t>(from.lane));
      return Position::main(std::max(0, lane.entry - (squares - from.index)));
    }
    return Position::main(std::max(0, from.index - squares));
  }

  bool cap_exhausted(const PlayerState& p, EventKey key) const {
    auto cap = rules_.cap(key);
    if (!cap) return false;
    auto it = p.cap_usage.find(key);
    return it != p.cap_usage.end() && it->second >= *cap;
  }

  void use_cap(PlayerState& p, EventKey key) {
    if (rules_.cap(key)) ++p.cap_usage[key];
  }

  void check_depth(int depth, int seat) {
    if (depth <= rules_.options.chain_depth_limit) return;
    std::string cycle;
    for (const auto& e : log_.trace) {
      if (e.seat != seat || e.kind == TraceKind::setback) continue;
      if (!cycle.empty()) cycle += " -> ";
      cycle += std::string(to_string(e.kind)) + "@" + std::to_string(e.after);
    }
    throw EngineFault("event chain exceeded depth " + std::to_string(rules_.options.chain_depth_limit) +
                      " for seat " + std::to_string(seat) + ": " + cycle);
  }

  void resolve_landing(int seat, int depth) {
    check_depth(depth, seat);
    auto& p = player(seat);
    if (!p.position.on_main()) return;
    const Square sq = p.position.index;
    if (sq == 0 || sq == rules_.finish()) return;

    if (rules_.card_squares.count(sq)) {
      const int id = draw_card(state_);
      const CardSpec* card = rules_.card(id);
      if (!card) throw RulesError("deck holds unknown card id " + std::to_string(id));
      apply_card(seat, *card, depth + 1);
      return;
    }

    auto effect = effect_for(rules_, sq, p.mode);
    if (!effect) return;
    const EventKey key = EventKey::square(sq);
    const int here = progress(rules_, p.position);
    if (cap_exhausted(p, key)) {
      record(TraceKind::capped, seat, sq, here, here);
      return;
    }
    ++p.counters.event_squares_affecting;
    use_cap(p, key);

    switch (effect->kind) {
      case EffectKind::skip:
        p.skip_remaining += effect->turns;
        record(TraceKind::square, seat, sq, here, here);
        break;
      case EffectKind::wait_until_roll:
        p.skip_remaining = 0;
        p.wait_for_roll = PendingRelease{effect->release_value, effect->then_goto};
        record(TraceKind::square, seat, sq, here, here);
        break;
      case EffectKind::advance:
        relocate(seat, Position::main(move_with_bounce(rules_.finish(), sq, effect->squares)), TraceKind::square, sq);
        resolve_landing(seat, depth + 1);
        break;
      case EffectKind::go_to:
        if (effect->is_return_to_start())
          return_to_start(seat, key, TraceKind::square, sq);
        else
          relocate(seat, Position::main(effect->target), TraceKind::square, sq);
        resolve_landing(seat, depth + 1);
        break;
      case EffectKind::lane_entry:
        for (std::size_t i = 0; i < rules_.lanes.size(); ++i)
          if (rules_.lanes[i].id == effect->lane) p.lane_access = static_cast<int>(i);
        record(TraceKind::square, seat, sq, here, here);
        break;
      case EffectKind::draw_card:
        break;
    }
  }

  void apply_card(int drawer, const CardSpec& card, int depth) {
    check_depth(depth, drawer);
    auto& p = player(drawer);
    const int here = progress(rules_, p.position);
    auto no_effect = [&] { record(TraceKind::card, drawer, card.id, here, here, false); };

    if (card.kind == CardKind::global_setback) {
      record(TraceKind::card, drawer, card.id, here, here, card.modes.contains(p.mode));
      const int n = static_cast<int>(state_.players.size());
      const EventKey key = EventKey::card(card.id);
      for (int k = 0; k < n; ++k) {
        const int seat = (drawer + k) % n;
        auto& target = player(seat);
        if (!card.modes.contains(target.mode)) continue;
        if (cap_exhausted(target, key)) continue;
        ++target.counters.cards_affecting;
        use_cap(target, key);
        relocate(seat, step_back(target.position, card.squares), TraceKind::setback, card.id);
        resolve_landing(seat, depth + 1);
      }
      return;
    }

    if (!card.modes.contains(p.mode)) return no_effect();
    const EventKey key = EventKey::card(card.id);
    if (cap_exhausted(p, key)) {
      record(TraceKind::capped, drawer, card.id, here, here);
      return;
    }

    switch (card.kind) {
      case CardKind::roll_move_backward:
      case CardKind::roll_move_forward: {
        ++p.counters.cards_affecting;
        use_cap(p, key);
        const int roll = throw_die(drawer);
        const Position dest = card.kind == CardKind::roll_move_forward
                                  ? Position::main(move_with_bounce(rules_.finish(), p.position.index, roll))
                                  : step_back(p.position, roll);
        relocate(drawer, dest, TraceKind::card, card.id);
        resolve_landing(drawer, depth + 1);
        break;
      }
      case CardKind::skip:
        ++p.counters.cards_affecting;
        use_cap(p, key);
        p.skip_remaining += card.turns;
        record(TraceKind::card, drawer, card.id, here, here);
        break;
      case CardKind::ride_to_next_card_square: {
        auto next = rules_.card_squares.upper_bound(here);
        if (next == rules_.card_squares.end()) return no_effect();
        ++p.counters.cards_affecting;
        use_cap(p, key);
        relocate(drawer, Position::main(*next), TraceKind::card, card.id);
        resolve_landing(drawer, depth + 1);
        break;
      }
      case CardKind::go_to:
        if (card.min_position && here < *card.min_position) return no_effect();
        ++p.counters.cards_affecting;
        use_cap(p, key);
        relocate(drawer, Position::main(card.target), TraceKind::card, card.id);
        resolve_landing(drawer, depth + 1);
        break;
      case CardKind::goto_start:
        ++p.counters.cards_affecting;
        use_cap(p, key);
        return_to_start(drawer, key, TraceKind::card, card.id);
        break;
      case CardKind::global_setback:
        break;
    }
  }

 private:
  GameState& state_;
  const RuleSet& rules_;
  TurnLog& log_;
};

inline std::optional<int> unique_leader(const GameState& s) {
  std::optional<int> leader;
  int best = -1;
  bool tie = false;
  for (const auto& p : s.players) {
    const int prog = progress(*s.rules, p.position);
    if (prog > best) {
      best = prog;
      leader = p.seat;
      tie = false;
    } else if (prog == best) {
      tie = true;
    }
  }
  if (tie) return std::nullopt;
  return leader;
}

inline void close_round(GameState& s) {
  s.leader_timeline.push_back(unique_leader(s));
  if (s.record_positions) {
    std::vector<int> row;
    for (const auto& p : s.players) row.push_back(progress(*s.rules, p.position));
    s.position_timeline.push_back(std::move(row));
  }
}

}  // namespace detail

/// Applies `card` as drawn by `drawer` and returns the resulting trace.
inline std::vector<TraceEntry> apply_card(GameState& state, int drawer, const CardSpec& card, int depth = 0) {
  TurnLog log;
  detail::Resolver(state, log).apply_card(drawer, card, depth);
  return log.trace;
}

/// Resolves whatever the player's current square triggers, chaining through
/// forced relocations.
inline std::vector<TraceEntry> resolve_landing(GameState& state, int seat, int depth = 0) {
  TurnLog log;
  detail::Resolver(state, log).resolve_landing(seat, depth);
  return log.trace;
}

inline TurnLog take_turn(GameState& state) {
  if (state.winner) throw std::logic_error("take_turn called on a finished game");
  const RuleSet& rules = *state.rules;
  TurnLog log;
  log.round = state.round;
  log.seat = state.turn_pointer;
  detail::Resolver r(state, log);
  const int seat = state.turn_pointer;
  auto& p = state.players[static_cast<std::size_t>(seat)];
  const int here = progress(rules, p.position);

  const bool gated = (rules.options.start_rule == StartRule::first_six_opens && !state.game_open) ||
                     (rules.options.start_rule == StartRule::per_player_six && !p.started);
  if (gated) {
    const int roll = r.throw_die(seat);
    if (roll == 6) {
      state.game_open = true;
      if (rules.options.start_rule == StartRule::first_six_opens)
        for (auto& other : state.players) other.started = true;
      p.started = true;
      p.position = Position::main(move_with_bounce(rules.finish(), p.position.index, 6));
      r.record(TraceKind::start, seat, roll, here, progress(rules, p.position));
      r.resolve_landing(seat, 0);
    } else {
      r.record(TraceKind::gate, seat, roll, here, here);
    }
  } else if (p.skip_remaining > 0) {
    --p.skip_remaining;
    ++p.counters.turns_waited;
    r.record(TraceKind::skip, seat, p.skip_remaining, here, here);
  } else if (p.wait_for_roll) {
    const PendingRelease pending = *p.wait_for_roll;
    const int roll = r.throw_die(seat);
    if (roll == pending.value) {
      p.wait_for_roll.reset();
      r.record(TraceKind::release, seat, roll, here, here);
      if (pending.then_goto) {
        r.relocate(seat, Position::main(*pending.then_goto), TraceKind::release, roll);
        r.resolve_landing(seat, 0);
      }
    } else {
      ++p.counters.turns_waited;
      r.record(TraceKind::wait, seat, roll, here, here);
    }
  } else {
    const int roll = r.throw_die(seat);
    const MovePlan plan = plan_move(rules, p, roll);
    const bool entering_lane = plan.via_lane && p.position.on_main();
    if (entering_lane) ++p.counters.shortcuts_taken;
    p.lane_access.reset();
    p.position = plan.destination;
    r.record(TraceKind::move, seat, roll, here, progress(rules, p.position));
    r.resolve_landing(seat, 0);
  }

  for (const auto& pl : state.players)
    if (pl.position == Position::main(rules.finish())) state.winner = pl.seat;

  const int n = static_cast<int>(state.players.size());
  state.turn_pointer = (state.turn_pointer + 1) % n;
  if (state.winner) {
    detail::close_round(state);
  } else if (state.turn_pointer == 0) {
    detail::close_round(state);
    ++state.round;
    if (state.round > rules.options.max_rounds)
      throw EngineFault("game exceeded max_rounds " + std::to_string(rules.options.max_rounds));
  }
  return log;
}

/// Builds the telemetry record of a finished game.
inline GameRecord make_record(const GameState& s) {
  if (!s.winner) throw std::logic_error("make_record on an unfinished game");
  const RuleSet& rules = *s.rules;
  GameRecord rec;
  rec.n_players = static_cast<int>(s.players.size());
  rec.winner_seat = *s.winner;
  const auto& winner = s.players[static_cast<std::size_t>(*s.winner)];
  rec.winner_character = rules.characters[static_cast<std::size_t>(winner.character)].name;
  rec.rounds = s.round;
  for (const auto& p : s.players) {
    PlayerRow row;
    row.character = rules.characters[static_cast<std::size_t>(p.character)].name;
    row.seat = p.seat;
    row.counters = p.counters;
    row.won = p.seat == *s.winner;
    row.returns_by_source = p.returns_by_source;
    rec.total_throws += p.counters.die_throws;
    rec.players.push_back(std::move(row));
  }
  const auto lead = summarize_leadership(s.leader_timeline, *s.winner);
  rec.distinct_unique_leaders = lead.distinct_unique_leaders;
  rec.winner_lead_streak = lead.winner_lead_streak;
  for (const auto& row : s.position_timeline) rec.winner_positions.push_back(row[static_cast<std::size_t>(*s.winner)]);
  return rec;
}

inline GameRecord play_game(const RuleSet& rules, int n_players, std::uint64_t seed, const GameOptions& options = {}) {
  GameState state = new_game(rules, n_players, seed);
  state.record_positions = options.record_positions;
  while (!state.winner) {
    TurnLog log = take_turn(state);
    if (options.on_turn) options.on_turn(log, state);
  }
  return make_record(state);
}

}  // namespace ddhg

#endif  // DDHG_ENGINE_HPP
