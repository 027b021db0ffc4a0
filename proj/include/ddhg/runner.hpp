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

#ifndef DDHG_RUNNER_HPP
#define DDHG_RUNNER_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ddhg/engine.hpp"
#include "ddhg/record.hpp"
#include "ddhg/rng.hpp"

namespace ddhg {

struct RunOptions {
  unsigned threads = 1;
  bool record_positions = false;
};

/// Plays `scenario.n_games` independent games. Game i uses the stream seeded
/// by derive_seed(scenario.master_seed, i), so the result does not depend on
/// the number of worker threads or on scheduling.
inline TrialSet run_trials(const RuleSet& rules, Scenario scenario, const RunOptions& options = {}) {
  if (scenario.n_games < 1) throw std::invalid_argument("n_games must be >= 1");
  scenario.seconds_per_turn = rules.options.seconds_per_turn;
  TrialSet out;
  out.scenario = scenario;
  out.records.resize(scenario.n_games);

  GameOptions game_options;
  game_options.record_positions = options.record_positions;

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> first_failure{~std::uint64_t{0}};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= scenario.n_games || i > first_failure.load()) return;
      const std::uint64_t seed = derive_seed(scenario.master_seed, i);
      try {
        GameRecord rec = play_game(rules, scenario.n_players, seed, game_options);
        rec.game_index = i;
        out.records[i] = std::move(rec);
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        // Report the lowest failing index so the error is reproducible.
        if (i < first_failure.load()) {
          first_failure.store(i);
          error = std::make_exception_ptr(EngineFault("game " + std::to_string(i) + " (seed " +
                                                      std::to_string(seed) + "): " + e.what()));
        }
      }
    }
  };

  const unsigned n_threads =
      static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads, 1, scenario.n_games));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace ddhg

#endif  // DDHG_RUNNER_HPP
