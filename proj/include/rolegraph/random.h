// Copyright 2026 The Rolegraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Portable seeded randomness. std::uniform_*_distribution and std::shuffle
// are implementation-defined, so every draw that affects an output goes
// through the helpers below to keep results bit-stable across toolchains.

#ifndef ROLEGRAPH_RANDOM_H_
#define ROLEGRAPH_RANDOM_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace rolegraph {

using RandomEngine = std::mt19937_64;

inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a parent seed and a counter.
inline uint64_t DeriveSeed(uint64_t seed, uint64_t stream) {
  return SplitMix64(seed ^ SplitMix64(stream + 0x632BE59BD9B4E019ULL));
}

// Uniform integer in [0, n). n must be positive.
inline uint64_t UniformIndex(RandomEngine& rng, uint64_t n) {
  // Rejection sampling on the top of the range.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Uniform real in [0, 1).
inline double UniformReal(RandomEngine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform real in (0, 1].
inline double UniformPositiveReal(RandomEngine& rng) {
  return 1.0 - UniformReal(rng);
}

// Standard normal draw (Box-Muller).
inline double StandardNormal(RandomEngine& rng) {
  const double u1 = UniformPositiveReal(rng);
  const double u2 = UniformReal(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(6.283185307179586476925 * u2);
}

template <typename T>
void Shuffle(std::span<T> values, RandomEngine& rng) {
  for (size_t i = values.size(); i > 1; --i) {
    const size_t j = UniformIndex(rng, i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_RANDOM_H_
