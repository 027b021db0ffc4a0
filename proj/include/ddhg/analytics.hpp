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

// Statistical reductions over batches of game records. Every function is
// pure and insensitive to record order.

#ifndef DDHG_ANALYTICS_HPP
#define DDHG_ANALYTICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ddhg/record.hpp"

namespace ddhg {

/// Two-sided critical value of the standard normal at the 99% level.
inline constexpr double kZCritical99 = 2.576;

struct DurationStats {
  double mean = 0;
  double median = 0;
  double stdev = 0;
  std::array<double, 4> quartile_means{};
  double min = 0;
  double max = 0;
};

/// Summary of a sample of game lengths. Quartile means split the sorted
/// sample into four contiguous groups whose sizes differ by at most one, the
/// earlier groups taking the remainder. With fewer than four values an empty
/// group repeats the mean of the group before it.
inline DurationStats duration_stats_of(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("duration_stats: empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  DurationStats s;
  s.min = values.front();
  s.max = values.back();
  // Sum in sorted order so the result does not depend on input order.
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  s.median = n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
  if (n > 1) {
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stdev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  std::size_t begin = 0;
  for (std::size_t q = 0; q < 4; ++q) {
    const std::size_t size = n / 4 + (q < n % 4 ? 1 : 0);
    if (size == 0) {
      s.quartile_means[q] = s.quartile_means[q - 1];
      continue;
    }
    s.quartile_means[q] =
        std::accumulate(values.begin() + static_cast<std::ptrdiff_t>(begin),
                        values.begin() + static_cast<std::ptrdiff_t>(begin + size), 0.0) /
        static_cast<double>(size);
    begin += size;
  }
  return s;
}

inline std::vector<double> rounds_of(const TrialSet& trials) {
  std::vector<double> out;
  out.reserve(trials.records.size());
  for (const auto& r : trials.records) out.push_back(r.rounds);
  return out;
}

inline DurationStats duration_stats(const TrialSet& trials) {
  if (trials.records.empty()) throw std::invalid_argument("duration_stats: empty TrialSet");
  return duration_stats_of(rounds_of(trials));
}

/// z statistic of `wins` successes in `n` trials against success rate p0.
inline double binomial_z(double wins, double n, double p0) {
  return (wins - n * p0) / std::sqrt(n * p0 * (1 - p0));
}

/// Pooled two-proportion z statistic for w1/n1 versus w2/n2.
inline double two_proportion_z(double w1, double n1, double w2, double n2) {
  const double p1 = w1 / n1, p2 = w2 / n2;
  const double pooled = (w1 + w2) / (n1 + n2);
  const double se = std::sqrt(pooled * (1 - pooled) * (1 / n1 + 1 / n2));
  return se == 0 ? 0.0 : (p1 - p2) / se;
}

struct WinEntry {
  std::string label;
  int games = 0;  // games in which this character / seat took part
  int wins = 0;
  double share = 0;  // wins / all games
  double z = 0;
  bool significant_at_99 = false;
};

struct WinBalance {
  int n_games = 0;
  int n_players = 0;
  std::vector<WinEntry> characters;  // sorted by name
  std::vector<WinEntry> seats;       // seat 0..n-1

  const WinEntry* character(const std::string& name) const {
    for (const auto& e : characters)
      if (e.label == name) return &e;
    return nullptr;
  }
};

/// Win counts tested against equal chances p0 = 1 / n_players. A character's
/// z uses the games it took part in, which is every game when all
/// characters play.
inline WinBalance win_balance(const TrialSet& trials) {
  if (trials.records.empty()) throw std::invalid_argument("win_balance: empty TrialSet");
  WinBalance wb;
  wb.n_games = static_cast<int>(trials.records.size());
  wb.n_players = trials.records.front().n_players;
  const double p0 = 1.0 / wb.n_players;

  std::map<std::string, std::pair<int, int>> by_character;  // games, wins
  std::vector<std::pair<int, int>> by_seat(static_cast<std::size_t>(wb.n_players));
  for (const auto& rec : trials.records) {
    if (rec.n_players != wb.n_players) throw std::invalid_argument("win_balance: mixed player counts");
    for (const auto& p : rec.players) {
      auto& c = by_character[p.character];
      ++c.first;
      c.second += p.won;
      auto& s = by_seat.at(static_cast<std::size_t>(p.seat));
      ++s.first;
      s.second += p.won;
    }
  }
  auto entry = [&](std::string label, std::pair<int, int> gw) {
    WinEntry e;
    e.label = std::move(label);
    e.games = gw.first;
    e.wins = gw.second;
    e.share = static_cast<double>(e.wins) / wb.n_games;
    e.z = binomial_z(e.wins, e.games, p0);
    e.significant_at_99 = std::abs(e.z) > kZCritical99;
    return e;
  };
  for (const auto& [name, gw] : by_character) wb.characters.push_back(entry(name, gw));
  for (std::size_t s = 0; s < by_seat.size(); ++s) wb.seats.push_back(entry(std::to_string(s), by_seat[s]));
  return wb;
}

struct LeadMetrics {
  double mean_winner_lead_streak = 0;
  double mean_lead_share = 0;
  double mean_distinct_unique_leaders = 0;
};

inline LeadMetrics lead_metrics(const TrialSet& trials) {
  LeadMetrics m;
  if (trials.records.empty()) return m;
  // Sum integers exactly; only the lead shares need a deterministic order.
  long long streak = 0, leaders = 0;
  std::vector<double> shares;
  for (const auto& r : trials.records) {
    streak += r.winner_lead_streak;
    leaders += r.distinct_unique_leaders;
    shares.push_back(static_cast<double>(r.winner_lead_streak) / r.rounds);
  }
  std::sort(shares.begin(), shares.end());
  const double n = static_cast<double>(trials.records.size());
  m.mean_winner_lead_streak = static_cast<double>(streak) / n;
  m.mean_distinct_unique_leaders = static_cast<double>(leaders) / n;
  m.mean_lead_share = std::accumulate(shares.begin(), shares.end(), 0.0) / n;
  return m;
}

struct IdlenessAndTime {
  double mean_idleness = 0;
  double mean_minutes = 0;
  double frac_over_60_min = 0;
  double frac_over_120_min = 0;
};

inline double game_minutes(int rounds, int n_players, int seconds_per_turn) {
  return static_cast<double>(rounds) * n_players * seconds_per_turn / 60.0;
}

/// Idleness of a game: turns waited per round, averaged over its players.
inline double game_idleness(const GameRecord& r) {
  if (r.players.empty()) return 0;
  double sum = 0;
  for (const auto& p : r.players) sum += static_cast<double>(p.counters.turns_waited) / r.rounds;
  return sum / static_cast<double>(r.players.size());
}

/// Pools any number of batches; each game weighs equally.
inline IdlenessAndTime idleness_and_time(const std::vector<const TrialSet*>& batches, int seconds_per_turn) {
  IdlenessAndTime out;
  std::vector<double> idle, minutes;
  for (const TrialSet* t : batches)
    for (const auto& r : t->records) {
      idle.push_back(game_idleness(r));
      minutes.push_back(game_minutes(r.rounds, r.n_players, seconds_per_turn));
    }
  if (idle.empty()) return out;
  std::sort(idle.begin(), idle.end());
  std::sort(minutes.begin(), minutes.end());
  const double n = static_cast<double>(idle.size());
  out.mean_idleness = std::accumulate(idle.begin(), idle.end(), 0.0) / n;
  out.mean_minutes = std::accumulate(minutes.begin(), minutes.end(), 0.0) / n;
  out.frac_over_60_min = static_cast<double>(std::count_if(minutes.begin(), minutes.end(), [](double m) { return m > 60; })) / n;
  out.frac_over_120_min = static_cast<double>(std::count_if(minutes.begin(), minutes.end(), [](double m) { return m > 120; })) / n;
  return out;
}

inline IdlenessAndTime idleness_and_time(const TrialSet& trials, int seconds_per_turn) {
  return idleness_and_time(std::vector<const TrialSet*>{&trials}, seconds_per_turn);
}

struct ExposureRow {
  std::string character;
  int games = 0;
  double event_squares_affecting = 0;
  double cards_affecting = 0;
  double turns_waited = 0;
  double shortcuts_taken = 0;
  double net_event_displacement = 0;
};

/// Per-character means of the exposure counters over the games each
/// character played, sorted by character name.
inline std::vector<ExposureRow> exposure_table(const TrialSet& trials) {
  struct Sums {
    int games = 0;
    long long squares = 0, cards = 0, waited = 0, shortcuts = 0, displacement = 0;
  };
  std::map<std::string, Sums> sums;
  for (const auto& rec : trials.records)
    for (const auto& p : rec.players) {
      auto& s = sums[p.character];
      ++s.games;
      s.squares += p.counters.event_squares_affecting;
      s.cards += p.counters.cards_affecting;
      s.waited += p.counters.turns_waited;
      s.shortcuts += p.counters.shortcuts_taken;
      s.displacement += p.counters.net_event_displacement;
    }
  std::vector<ExposureRow> rows;
  for (const auto& [name, s] : sums) {
    const double g = s.games;
    rows.push_back({name, s.games, static_cast<double>(s.squares) / g, static_cast<double>(s.cards) / g,
                    static_cast<double>(s.waited) / g, static_cast<double>(s.shortcuts) / g,
                    static_cast<double>(s.displacement) / g});
  }
  return rows;
}

struct ScenarioColumn {
  std::string label;
  std::map<std::string, int> wins;  // by character
  DurationStats duration;
  std::map<std::string, int> wins_delta;  // versus the first column
  double mean_rounds_delta = 0;
  double max_rounds_delta = 0;
};

struct ComparisonReport {
  int n_players = 0;
  std::vector<ScenarioColumn> columns;
};

/// Side-by-side wins and durations; deltas are taken against the first label.
inline ComparisonReport compare_scenarios(const std::vector<std::pair<std::string, const TrialSet*>>& labelled) {
  ComparisonReport report;
  if (labelled.empty()) return report;
  report.n_players = labelled.front().second->scenario.n_players;
  for (const auto& [label, trials] : labelled) {
    if (trials->scenario.n_players != report.n_players)
      throw std::invalid_argument("compare_scenarios: '" + label + "' has " +
                                  std::to_string(trials->scenario.n_players) + " players, expected " +
                                  std::to_string(report.n_players));
    ScenarioColumn col;
    col.label = label;
    for (const auto& e : win_balance(*trials).characters) col.wins[e.label] = e.wins;
    col.duration = duration_stats(*trials);
    report.columns.push_back(std::move(col));
  }
  const auto& base = report.columns.front();
  for (auto& col : report.columns) {
    for (const auto& [name, w] : col.wins) {
      auto it = base.wins.find(name);
      col.wins_delta[name] = w - (it == base.wins.end() ? 0 : it->second);
    }
    col.mean_rounds_delta = col.duration.mean - base.duration.mean;
    col.max_rounds_delta = col.duration.max - base.duration.max;
  }
  return report;
}

}  // namespace ddhg

#endif  // DDHG_ANALYTICS_HPP
