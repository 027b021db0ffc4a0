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

// Test-only reference computations. Nothing here calls into the engine's
// movement code; each oracle works from first principles.

#ifndef DDHG_TESTS_ORACLES_HPP
#define DDHG_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ddhg/board.hpp"

namespace ddhg::oracle {

/// Expected number of fair-die throws to rest exactly on `finish` from
/// square 0, with overshoot reflected back. Solves the absorbing chain
/// E[i] = 1 + 1/6 * sum_k E[next(i, k)], E[finish] = 0 by Gaussian
/// elimination with partial pivoting. Next squares are found by walking one
/// step at a time and turning around at the finish.
inline double expected_throws_to_finish(int finish) {
  const int n = finish;  // unknowns E[0..finish-1]
  auto walk = [finish](int pos, int steps) {
    int dir = 1;
    for (int s = 0; s < steps; ++s) {
      if (pos == finish) dir = -1;
      pos += dir;
    }
    return pos;
  };
  std::vector<std::vector<double>> a(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n + 1), 0.0));
  for (int i = 0; i < n; ++i) {
    auto& row = a[static_cast<std::size_t>(i)];
    row[static_cast<std::size_t>(i)] += 1.0;
    row[static_cast<std::size_t>(n)] = 1.0;
    for (int k = 1; k <= 6; ++k) {
      const int j = walk(i, k);
      if (j != finish) row[static_cast<std::size_t>(j)] -= 1.0 / 6.0;
    }
  }
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) >
          std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(c)]))
        pivot = r;
    std::swap(a[static_cast<std::size_t>(c)], a[static_cast<std::size_t>(pivot)]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] /
                       a[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
      for (int k = c; k <= n; ++k)
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -= f * a[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
    }
  }
  return a[0][static_cast<std::size_t>(n)] / a[0][0];
}

/// A square or lane cell along a walked path.
struct Stop {
  std::string lane;  // empty for the main track
  int index = 0;
  friend bool operator==(const Stop&, const Stop&) = default;
};

/// Enumerates the squares visited one step at a time from `start`. When
/// `lane` is given the walk first passes through its cells and exit. The
/// main track reverses direction at `finish`.
inline std::vector<Stop> enumerate_path(int finish, int start, const LaneSpec* lane, int start_cell, int steps) {
  std::vector<Stop> path;
  int pos = start;
  int cell = start_cell;
  bool in_lane = lane != nullptr;
  int dir = 1;
  for (int s = 0; s < steps; ++s) {
    if (in_lane) {
      if (cell < lane->length) {
        ++cell;
        path.push_back({lane->id, cell});
        continue;
      }
      in_lane = false;
      pos = lane->exit;
      path.push_back({"", pos});
      continue;
    }
    if (pos == finish) dir = -1;
    pos += dir;
    path.push_back({"", pos});
  }
  return path;
}

/// A board with `finish` plain squares, one walking character, no cards,
/// no lanes and no start gate.
inline RuleSet eventless_board(int finish) {
  RuleSet r;
  r.num_squares = finish;
  CharacterSpec c;
  c.name = "Walker";
  c.mode = TransportMode::walking;
  r.characters = {c};
  r.options.start_rule = StartRule::immediate;
  return r;
}

}  // namespace ddhg::oracle

#endif  // DDHG_TESTS_ORACLES_HPP
