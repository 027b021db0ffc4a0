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

#ifndef DDHG_RNG_HPP
#define DDHG_RNG_HPP

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace ddhg {

/// SplitMix64 finalizer (Steele, Lea & Flood). A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Per-game stream seed:
///
///   derive_seed(m, i) = mix64(mix64(m) + (i + 1) * 0x9e3779b97f4a7c15)
///
/// The golden-ratio increment is odd, so for a fixed master seed distinct
/// indices map to distinct pre-images, and mix64 is a bijection: seeds within
/// one batch never collide.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return mix64(mix64(master_seed) + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

/// Deterministic random stream for one game. std::mt19937_64 output is fixed
/// by the standard; bounded draws use rejection sampling rather than
/// std::uniform_int_distribution, whose algorithm differs between
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Fair six-sided die.
  int die() { return static_cast<int>(below(6)) + 1; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ddhg

#endif  // DDHG_RNG_HPP
