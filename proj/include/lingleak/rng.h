/*
 * Copyright 2026 The LingLeak Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LINGLEAK_RNG_H_
#define LINGLEAK_RNG_H_

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace lingleak {

// splitmix64 finalizer.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based draw: the value depends only on (seed, stream, index), so
// placement decisions never depend on iteration order or thread layout.
constexpr uint64_t CounterHash(uint64_t seed, uint64_t stream, uint64_t index) {
  return Mix64(Mix64(Mix64(seed) ^ stream) ^ index);
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double UnitDouble(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sequential generator with a portable output stream (std:: distributions
// are implementation-defined, so callers use the helpers below instead).
class SplitMix64 {
 public:
  using result_type = uint64_t;

  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double NextDouble() { return UnitDouble((*this)()); }

  // Uniform integer in [0, n) by rejection; n must be positive.
  uint64_t NextBelow(uint64_t n) {
    const uint64_t limit = max() - max() % n;
    uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % n;
  }

 private:
  uint64_t state_;
};

// Fisher-Yates with SplitMix64.
template <typename T>
void Shuffle(std::span<T> values, SplitMix64& rng) {
  for (size_t i = values.size(); i > 1; --i) {
    const size_t j = rng.NextBelow(i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace lingleak

#endif  // LINGLEAK_RNG_H_
