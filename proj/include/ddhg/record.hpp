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

#ifndef DDHG_RECORD_HPP
#define DDHG_RECORD_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ddhg/board.hpp"

namespace ddhg {

struct PlayerCounters {
  int event_squares_affecting = 0;
  int cards_affecting = 0;
  int turns_waited = 0;
  int shortcuts_taken = 0;
  int net_event_displacement = 0;
  int returns_to_start = 0;
  int die_throws = 0;

  friend bool operator==(const PlayerCounters&, const PlayerCounters&) = default;
};

struct PlayerRow {
  std::string character;
  int seat = 0;
  PlayerCounters counters;
  bool won = false;
  /// Returns to start split by the event that caused them.
  std::map<EventKey, int> returns_by_source;

  friend bool operator==(const PlayerRow&, const PlayerRow&) = default;
};

/// Telemetry of one finished game.
struct GameRecord {
  std::uint64_t game_index = 0;
  int n_players = 0;
  std::string winner_character;
  int winner_seat = 0;
  int rounds = 0;
  int total_throws = 0;
  std::vector<PlayerRow> players;  // indexed by seat
  int distinct_unique_leaders = 0;
  int winner_lead_streak = 0;
  /// Winner's progress at the end of every round; empty unless requested.
  std::vector<int> winner_positions;

  friend bool operator==(const GameRecord&, const GameRecord&) = default;
};

struct Scenario {
  std::string ruleset = "ddhg";
  std::string variant = "original";
  int n_players = 5;
  std::uint64_t master_seed = 0;
  std::uint64_t n_games = 0;
  int seconds_per_turn = 10;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct TrialSet {
  Scenario scenario;
  std::vector<GameRecord> records;  // ordered by game_index

  friend bool operator==(const TrialSet&, const TrialSet&) = default;
};

struct LeadershipSummary {
  int distinct_unique_leaders = 0;
  int winner_lead_streak = 0;
};

/// Reduces a per-round unique-leader timeline (nullopt for rounds without a
/// unique leader) to leader counts. A round without a unique leader keeps
/// whoever led before it.
inline LeadershipSummary summarize_leadership(std::span<const std::optional<int>> timeline, int winner) {
  std::vector<std::optional<int>> effective;
  effective.reserve(timeline.size());
  std::optional<int> current;
  for (const auto& leader : timeline) {
    if (leader) current = leader;
    effective.push_back(current);
  }
  LeadershipSummary out;
  std::set<int> seen;
  for (const auto& l : effective)
    if (l) seen.insert(*l);
  out.distinct_unique_leaders = static_cast<int>(seen.size());
  for (auto it = effective.rbegin(); it != effective.rend() && *it == winner; ++it) ++out.winner_lead_streak;
  return out;
}

}  // namespace ddhg

#endif  // DDHG_RECORD_HPP
