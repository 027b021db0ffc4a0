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

// Persisted batch output:
//
//   per_game.csv  game_index,n_players,winner_character,winner_seat,rounds,
//                 total_throws,distinct_unique_leaders,winner_lead_streak
//   players.csv   game_index,seat,character,event_squares_affecting,
//                 cards_affecting,turns_waited,shortcuts_taken,
//                 net_event_displacement,returns_to_start,die_throws,won
//   summary.json  scenario plus every analytics reduction
//
// Fields containing commas or quotes are quoted as in RFC 4180.

#ifndef DDHG_RECORDS_IO_HPP
#define DDHG_RECORDS_IO_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddhg/analytics.hpp"
#include "ddhg/record.hpp"
#include "json.hpp"

namespace ddhg {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace csv {

inline std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace csv

inline const char* kPerGameHeader =
    "game_index,n_players,winner_character,winner_seat,rounds,total_throws,distinct_unique_leaders,"
    "winner_lead_streak";
inline const char* kPlayersHeader =
    "game_index,seat,character,event_squares_affecting,cards_affecting,turns_waited,shortcuts_taken,"
    "net_event_displacement,returns_to_start,die_throws,won";

inline void write_per_game_csv(std::ostream& out, const TrialSet& trials) {
  out << kPerGameHeader << '\n';
  for (const auto& r : trials.records)
    out << r.game_index << ',' << r.n_players << ',' << csv::quote(r.winner_character) << ',' << r.winner_seat << ','
        << r.rounds << ',' << r.total_throws << ',' << r.distinct_unique_leaders << ',' << r.winner_lead_streak << '\n';
}

inline void write_players_csv(std::ostream& out, const TrialSet& trials) {
  out << kPlayersHeader << '\n';
  for (const auto& r : trials.records)
    for (const auto& p : r.players) {
      const auto& c = p.counters;
      out << r.game_index << ',' << p.seat << ',' << csv::quote(p.character) << ',' << c.event_squares_affecting << ','
          << c.cards_affecting << ',' << c.turns_waited << ',' << c.shortcuts_taken << ',' << c.net_event_displacement
          << ',' << c.returns_to_start << ',' << c.die_throws << ',' << (p.won ? 1 : 0) << '\n';
    }
}

inline nlohmann::json to_json(const Scenario& s) {
  return {{"ruleset", s.ruleset},     {"variant", s.variant},   {"n_players", s.n_players},
          {"master_seed", s.master_seed}, {"n_games", s.n_games}, {"seconds_per_turn", s.seconds_per_turn}};
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario s;
  s.ruleset = j.at("ruleset").get<std::string>();
  s.variant = j.at("variant").get<std::string>();
  s.n_players = j.at("n_players").get<int>();
  s.master_seed = j.at("master_seed").get<std::uint64_t>();
  s.n_games = j.at("n_games").get<std::uint64_t>();
  s.seconds_per_turn = j.at("seconds_per_turn").get<int>();
  return s;
}

inline nlohmann::json to_json(const DurationStats& d) {
  return {{"mean", d.mean},
          {"median", d.median},
          {"stdev", d.stdev},
          {"quartile_means", {d.quartile_means[0], d.quartile_means[1], d.quartile_means[2], d.quartile_means[3]}},
          {"min", d.min},
          {"max", d.max}};
}

inline nlohmann::json to_json(const WinEntry& e) {
  return {{"label", e.label}, {"games", e.games},  {"wins", e.wins},
          {"share", e.share}, {"z", e.z},          {"significant_at_99", e.significant_at_99}};
}

inline nlohmann::json to_json(const WinBalance& wb) {
  nlohmann::json chars = nlohmann::json::array(), seats = nlohmann::json::array();
  for (const auto& e : wb.characters) chars.push_back(to_json(e));
  for (const auto& e : wb.seats) seats.push_back(to_json(e));
  return {{"n_games", wb.n_games}, {"n_players", wb.n_players}, {"characters", chars}, {"seats", seats}};
}

inline nlohmann::json to_json(const LeadMetrics& m) {
  return {{"mean_winner_lead_streak", m.mean_winner_lead_streak},
          {"mean_lead_share", m.mean_lead_share},
          {"mean_distinct_unique_leaders", m.mean_distinct_unique_leaders}};
}

inline nlohmann::json to_json(const IdlenessAndTime& t) {
  return {{"mean_idleness", t.mean_idleness},
          {"mean_minutes", t.mean_minutes},
          {"frac_over_60_min", t.frac_over_60_min},
          {"frac_over_120_min", t.frac_over_120_min}};
}

inline nlohmann::json to_json(const ExposureRow& r) {
  return {{"character", r.character},
          {"games", r.games},
          {"event_squares_affecting", r.event_squares_affecting},
          {"cards_affecting", r.cards_affecting},
          {"turns_waited", r.turns_waited},
          {"shortcuts_taken", r.shortcuts_taken},
          {"net_event_displacement", r.net_event_displacement}};
}

inline nlohmann::json to_json(const ComparisonReport& report) {
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : report.columns)
    cols.push_back({{"label", c.label},
                    {"wins", c.wins},
                    {"duration", to_json(c.duration)},
                    {"wins_delta", c.wins_delta},
                    {"mean_rounds_delta", c.mean_rounds_delta},
                    {"max_rounds_delta", c.max_rounds_delta}});
  return {{"n_players", report.n_players}, {"columns", cols}};
}

inline nlohmann::json summary_json(const TrialSet& trials) {
  nlohmann::json exposure = nlohmann::json::array();
  for (const auto& row : exposure_table(trials)) exposure.push_back(to_json(row));
  double throws = 0;
  for (const auto& r : trials.records) throws += r.total_throws;
  return {{"scenario", to_json(trials.scenario)},
          {"duration", to_json(duration_stats(trials))},
          {"mean_total_throws", throws / static_cast<double>(trials.records.size())},
          {"win_balance", to_json(win_balance(trials))},
          {"lead", to_json(lead_metrics(trials))},
          {"idleness_time", to_json(idleness_and_time(trials, trials.scenario.seconds_per_turn))},
          {"exposure", exposure}};
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string summary_text(const TrialSet& trials) { return summary_json(trials).dump(2) + "\n"; }

/// Writes per_game.csv, players.csv and summary.json into `dir`.
inline void write_records(const TrialSet& trials, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
  std::ostringstream per_game, players;
  write_per_game_csv(per_game, trials);
  write_players_csv(players, trials);
  write_text_file(dir / "per_game.csv", per_game.str());
  write_text_file(dir / "players.csv", players.str());
  write_text_file(dir / "summary.json", summary_text(trials));
}

/// Rebuilds a TrialSet from the CSV files in `dir`. The scenario comes from
/// summary.json when present; otherwise it is inferred from the rows.
inline TrialSet read_records(const std::filesystem::path& dir) {
  TrialSet trials;
  auto lines_of = [](const std::filesystem::path& p, const char* header) {
    std::istringstream in(read_text_file(p));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    if (!std::getline(in, line) || line != header) throw IoError("'" + p.string() + "': unexpected header");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      rows.push_back(csv::split(line));
      if (rows.back().size() != csv::split(header).size())
        throw IoError("'" + p.string() + "' line " + std::to_string(line_no) + ": wrong column count");
    }
    return rows;
  };
  auto num = [](const std::string& s) -> long long {
    try {
      std::size_t used = 0;
      long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw IoError("not an integer: '" + s + "'");
    }
  };

  for (const auto& f : lines_of(dir / "per_game.csv", kPerGameHeader)) {
    GameRecord r;
    r.game_index = static_cast<std::uint64_t>(num(f[0]));
    r.n_players = static_cast<int>(num(f[1]));
    r.winner_character = f[2];
    r.winner_seat = static_cast<int>(num(f[3]));
    r.rounds = static_cast<int>(num(f[4]));
    r.total_throws = static_cast<int>(num(f[5]));
    r.distinct_unique_leaders = static_cast<int>(num(f[6]));
    r.winner_lead_streak = static_cast<int>(num(f[7]));
    if (r.game_index != trials.records.size()) throw IoError("per_game.csv: game_index out of sequence");
    trials.records.push_back(std::move(r));
  }
  for (const auto& f : lines_of(dir / "players.csv", kPlayersHeader)) {
    const auto gi = static_cast<std::size_t>(num(f[0]));
    if (gi >= trials.records.size()) throw IoError("players.csv: unknown game_index " + f[0]);
    PlayerRow p;
    p.seat = static_cast<int>(num(f[1]));
    p.character = f[2];
    p.counters.event_squares_affecting = static_cast<int>(num(f[3]));
    p.counters.cards_affecting = static_cast<int>(num(f[4]));
    p.counters.turns_waited = static_cast<int>(num(f[5]));
    p.counters.shortcuts_taken = static_cast<int>(num(f[6]));
    p.counters.net_event_displacement = static_cast<int>(num(f[7]));
    p.counters.returns_to_start = static_cast<int>(num(f[8]));
    p.counters.die_throws = static_cast<int>(num(f[9]));
    p.won = num(f[10]) != 0;
    trials.records[gi].players.push_back(std::move(p));
  }

  const auto summary_path = dir / "summary.json";
  if (std::filesystem::exists(summary_path)) {
    try {
      trials.scenario = scenario_from_json(nlohmann::json::parse(read_text_file(summary_path)).at("scenario"));
    } catch (const nlohmann::json::exception& e) {
      throw IoError("'" + summary_path.string() + "': " + e.what());
    }
  } else {
    trials.scenario.ruleset = "unknown";
    trials.scenario.variant = "unknown";
    trials.scenario.n_games = trials.records.size();
    if (!trials.records.empty()) trials.scenario.n_players = trials.records.front().n_players;
  }
  return trials;
}

}  // namespace ddhg

#endif  // DDHG_RECORDS_IO_HPP
