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

// Command-line front end. Exit status: 0 success, 1 runtime fault, 2 usage
// error.

#ifndef DDHG_CLI_HPP
#define DDHG_CLI_HPP

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ddhg/board.hpp"
#include "ddhg/engine.hpp"
#include "ddhg/experiments.hpp"
#include "ddhg/histogram.hpp"
#include "ddhg/records_io.hpp"
#include "ddhg/rules_io.hpp"
#include "ddhg/runner.hpp"

namespace ddhg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFault = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One transcript line: round, seat, character, throws and resolved trace.
inline std::string format_turn(const TurnLog& log, const GameState& state) {
  const RuleSet& rules = state.rule_set();
  auto name = [&](int seat) {
    return rules.characters[static_cast<std::size_t>(state.players[static_cast<std::size_t>(seat)].character)].name;
  };
  std::ostringstream out;
  out << "round " << log.round << " seat " << log.seat << " (" << name(log.seat) << ") throws [";
  for (std::size_t i = 0; i < log.throws.size(); ++i) out << (i ? "," : "") << log.throws[i];
  out << "]";
  for (std::size_t i = 0; i < log.trace.size(); ++i) {
    const auto& e = log.trace[i];
    out << (i ? "; " : " : ");
    switch (e.kind) {
      case TraceKind::card:
      case TraceKind::setback:
        out << to_string(e.kind) << " #" << e.detail;
        break;
      case TraceKind::square:
      case TraceKind::capped:
        out << to_string(e.kind) << " [" << e.detail << "]";
        break;
      default:
        out << to_string(e.kind);
    }
    if (e.seat != log.seat) out << " seat " << e.seat;
    if (!e.applied) out << " (no effect)";
    out << " " << e.before << "->" << e.after;
  }
  return out.str();
}

namespace cli_detail {

inline unsigned threads_from_env() {
  const char* env = std::getenv("THREADS");
  if (!env || !*env) return std::max(1u, std::thread::hardware_concurrency());
  const std::string s(env);
  if (s.find_first_not_of("0123456789") != std::string::npos) throw UsageError("THREADS must be a positive integer");
  const unsigned long v = std::stoul(s);
  if (v < 1 || v > 4096) throw UsageError("THREADS must be a positive integer");
  return static_cast<unsigned>(v);
}

struct RulesChoice {
  RuleSet rules;
  std::string id;
};

inline RulesChoice load_choice(const std::string& rules_file, const std::string& variant) {
  RulesChoice c;
  if (rules_file.empty()) {
    c.rules = default_ddhg();
    c.id = "ddhg";
  } else {
    c.rules = load_rules_file(rules_file);
    c.id = std::filesystem::path(rules_file).stem().string();
  }
  auto violations = validate_rules(c.rules);
  if (!violations.empty()) {
    std::string msg = "invalid rules:";
    for (const auto& v : violations) msg += "\n  " + v.location + ": " + v.invariant;
    throw RulesError(msg);
  }
  auto spec = find_variant(variant);
  if (!spec) throw UsageError("--variant: unknown variant '" + variant + "'");
  c.rules = apply_variant(c.rules, *spec);
  return c;
}

}  // namespace cli_detail

/// Runs one command. `args` excludes the program name.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Monte Carlo simulator and balance analyzer for Game-of-the-Goose variants", "ddhg"};
  app.require_subcommand(1);

  int players = 5;
  std::uint64_t games = 10000, seed = 42, game_index = 0;
  std::string rules_file, variant = "original", out_dir, in_dir;
  std::vector<int> player_list;
  std::vector<std::string> variant_list;
  int bin_width = 10;
  bool svg = false, positions = false;

  auto* simulate = app.add_subcommand("simulate", "run one scenario and write per_game.csv, players.csv, summary.json");
  simulate->add_option("--players", players, "number of players")->required()->check(CLI::Range(2, 5));
  simulate->add_option("--games", games, "number of games")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "master seed")->required();
  simulate->add_option("--rules", rules_file, "rules file (JSON); default is the built-in game")->check(CLI::ExistingFile);
  simulate->add_option("--variant", variant, "rule variant preset");
  simulate->add_option("--out", out_dir, "output directory")->required();
  simulate->add_flag("--positions", positions, "also write the winner's per-round progress (winner_paths.csv)");

  auto* matrix = app.add_subcommand("matrix", "run player counts x variants");
  matrix->add_option("--players", player_list, "player counts, comma separated")
      ->required()->delimiter(',')->check(CLI::Range(2, 5));
  matrix->add_option("--variants", variant_list, "variant presets, comma separated")->delimiter(',');
  matrix->add_option("--games", games, "games per cell")->required()->check(CLI::PositiveNumber);
  matrix->add_option("--seed", seed, "master seed")->required();
  matrix->add_option("--rules", rules_file, "rules file (JSON)")->check(CLI::ExistingFile);
  matrix->add_option("--out", out_dir, "output directory")->required();

  auto* analyze = app.add_subcommand("analyze", "recompute summary.json from the CSV files");
  analyze->add_option("--in", in_dir, "directory written by simulate")->required()->check(CLI::ExistingDirectory);

  auto* replay = app.add_subcommand("replay", "print the turn transcript of one game");
  replay->add_option("--players", players, "number of players")->required()->check(CLI::Range(2, 5));
  replay->add_option("--seed", seed, "master seed")->required();
  replay->add_option("--game", game_index, "game index within the batch")->required();
  replay->add_option("--rules", rules_file, "rules file (JSON)")->check(CLI::ExistingFile);
  replay->add_option("--variant", variant, "rule variant preset");

  auto* plot = app.add_subcommand("plot", "write the rounds histogram (histogram.csv, optional histogram.svg)");
  plot->add_option("--in", in_dir, "directory written by simulate")->required()->check(CLI::ExistingDirectory);
  plot->add_option("--bin-width", bin_width, "bin width in rounds")->check(CLI::PositiveNumber);
  plot->add_flag("--svg", svg, "also render histogram.svg");

  std::vector<std::string> argv_store;
  argv_store.push_back("ddhg");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*simulate) {
      const unsigned threads = cli_detail::threads_from_env();
      auto choice = cli_detail::load_choice(rules_file, variant);
      Scenario sc;
      sc.ruleset = choice.id;
      sc.variant = variant;
      sc.n_players = players;
      sc.master_seed = seed;
      sc.n_games = games;
      TrialSet trials = run_trials(choice.rules, sc, {threads, positions});
      write_records(trials, out_dir);
      if (positions) {
        std::ostringstream paths;
        paths << "game_index,round,winner_progress\n";
        for (const auto& r : trials.records)
          for (std::size_t i = 0; i < r.winner_positions.size(); ++i)
            paths << r.game_index << ',' << i + 1 << ',' << r.winner_positions[i] << '\n';
        write_text_file(std::filesystem::path(out_dir) / "winner_paths.csv", paths.str());
      }
      out << "wrote " << trials.records.size() << " games to " << out_dir << "\n";
    } else if (*matrix) {
      const unsigned threads = cli_detail::threads_from_env();
      if (variant_list.empty()) variant_list = {"original"};
      std::vector<VariantSpec> specs;
      for (const auto& name : variant_list) {
        auto v = find_variant(name);
        if (!v) throw UsageError("--variants: unknown variant '" + name + "'");
        specs.push_back(*v);
      }
      auto choice = cli_detail::load_choice(rules_file, "original");
      Matrix m = run_matrix(choice.rules, choice.id, player_list, specs, games, seed, {threads, false});
      write_matrix(m, out_dir);
      out << "wrote " << m.cells.size() << " cells to " << out_dir << "\n";
    } else if (*analyze) {
      TrialSet trials = read_records(in_dir);
      if (trials.records.empty()) throw IoError("no games in '" + in_dir + "'");
      write_text_file(std::filesystem::path(in_dir) / "summary.json", summary_text(trials));
      out << summary_text(trials);
    } else if (*replay) {
      auto choice = cli_detail::load_choice(rules_file, variant);
      GameOptions opts;
      opts.on_turn = [&out](const TurnLog& log, const GameState& state) { out << format_turn(log, state) << "\n"; };
      GameRecord rec = play_game(choice.rules, players, derive_seed(seed, game_index), opts);
      out << "winner: seat " << rec.winner_seat << " (" << rec.winner_character << ") after " << rec.rounds
          << " rounds\n";
    } else if (*plot) {
      TrialSet trials = read_records(in_dir);
      std::vector<int> rounds;
      for (const auto& r : trials.records) rounds.push_back(r.rounds);
      auto bins = histogram(rounds, bin_width);
      std::ostringstream csv_text;
      write_histogram_csv(csv_text, bins);
      write_text_file(std::filesystem::path(in_dir) / "histogram.csv", csv_text.str());
      if (svg) {
        std::ostringstream svg_text;
        write_histogram_svg(svg_text, bins,
                            "Rounds to finish, " + std::to_string(trials.scenario.n_players) + " players (" +
                                trials.scenario.variant + ")");
        write_text_file(std::filesystem::path(in_dir) / "histogram.svg", svg_text.str());
      }
      out << "wrote " << bins.size() << " bins to " << in_dir << "\n";
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFault;
  }
  return kExitOk;
}

}  // namespace ddhg

#endif  // DDHG_CLI_HPP
