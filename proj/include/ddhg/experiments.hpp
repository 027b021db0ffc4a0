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

#ifndef DDHG_EXPERIMENTS_HPP
#define DDHG_EXPERIMENTS_HPP

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ddhg/analytics.hpp"
#include "ddhg/board.hpp"
#include "ddhg/records_io.hpp"
#include "ddhg/rng.hpp"
#include "ddhg/runner.hpp"

namespace ddhg {

/// A rule modification: cards taken out of the deck and per-player caps on
/// individual events.
struct VariantSpec {
  std::string name;
  std::set<int> removed_card_ids;
  std::map<EventKey, int> caps;

  friend bool operator==(const VariantSpec&, const VariantSpec&) = default;
};

inline const std::vector<VariantSpec>& preset_variants() {
  static const std::vector<VariantSpec> presets = {
      {"original", {}, {}},
      {"no-rain", {11}, {}},
      {"no-wind", {1, 2}, {}},
      {"no-rain-and-wind", {1, 2, 11}, {}},
      {"no-rain-and-tailwind", {2, 11}, {}},
      {"revised", {2, 11}, {{EventKey::card(7), 1}, {EventKey::square(112), 1}}},
  };
  return presets;
}

inline std::optional<VariantSpec> find_variant(const std::string& name) {
  for (const auto& v : preset_variants())
    if (v.name == name) return v;
  return std::nullopt;
}

/// Returns a modified copy of `rules`; `rules` itself is not touched.
inline RuleSet apply_variant(const RuleSet& rules, const VariantSpec& variant) {
  for (int id : variant.removed_card_ids)
    if (!rules.card(id))
      throw RulesError("variant '" + variant.name + "' removes unknown card #" + std::to_string(id));
  for (const auto& [key, max] : variant.caps) {
    if (max < 1) throw RulesError("variant '" + variant.name + "' caps " + key.str() + " below 1");
    const bool known = key.source == EventKey::Source::card ? rules.card(key.id) != nullptr
                                                            : rules.effects.count(key.id) > 0;
    if (!known) throw RulesError("variant '" + variant.name + "' caps unknown event " + key.str());
  }
  RuleSet out = rules;
  std::erase_if(out.deck, [&](const CardSpec& c) { return variant.removed_card_ids.count(c.id) > 0; });
  for (const auto& [key, max] : variant.caps) out.caps[key] = max;
  return out;
}

/// Master seed of one (player count, variant) cell.
constexpr std::uint64_t cell_seed(std::uint64_t master_seed, int n_players, std::size_t variant_index) {
  return derive_seed(derive_seed(master_seed, static_cast<std::uint64_t>(n_players)), variant_index);
}

struct MatrixCell {
  int n_players = 0;
  std::string variant;
  TrialSet trials;
};

struct Matrix {
  std::vector<MatrixCell> cells;  // player counts outer, variants inner
  std::map<int, ComparisonReport> comparisons;  // by player count

  const MatrixCell* cell(int n_players, const std::string& variant) const {
    for (const auto& c : cells)
      if (c.n_players == n_players && c.variant == variant) return &c;
    return nullptr;
  }
};

inline Matrix run_matrix(const RuleSet& rules, const std::string& ruleset_id, const std::vector<int>& player_counts,
                         const std::vector<VariantSpec>& variants, std::uint64_t n_games, std::uint64_t master_seed,
                         const RunOptions& options = {}) {
  if (player_counts.empty() || variants.empty())
    throw std::invalid_argument("run_matrix: player counts and variants must be non-empty");
  Matrix m;
  for (int n : player_counts) {
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
      const RuleSet cell_rules = apply_variant(rules, variants[vi]);
      Scenario sc;
      sc.ruleset = ruleset_id;
      sc.variant = variants[vi].name;
      sc.n_players = n;
      sc.master_seed = cell_seed(master_seed, n, vi);
      sc.n_games = n_games;
      m.cells.push_back({n, variants[vi].name, run_trials(cell_rules, sc, options)});
    }
    std::vector<std::pair<std::string, const TrialSet*>> labelled;
    for (const auto& c : m.cells)
      if (c.n_players == n) labelled.emplace_back(c.variant, &c.trials);
    m.comparisons[n] = compare_scenarios(labelled);
  }
  return m;
}

/// Layout: <out>/<n>p/<variant>/{per_game.csv,players.csv,summary.json} and
/// <out>/comparison_<n>p.json.
inline void write_matrix(const Matrix& m, const std::filesystem::path& out) {
  for (const auto& c : m.cells)
    write_records(c.trials, out / (std::to_string(c.n_players) + "p") / c.variant);
  for (const auto& [n, report] : m.comparisons)
    write_text_file(out / ("comparison_" + std::to_string(n) + "p.json"), to_json(report).dump(2) + "\n");
}

}  // namespace ddhg

#endif  // DDHG_EXPERIMENTS_HPP
