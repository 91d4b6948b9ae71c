// Copyright 2026 The multinash Authors
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

#ifndef MULTINASH_RNG_H_
#define MULTINASH_RNG_H_

#include <cstdint>

namespace multinash {

// Counter-based deterministic randomness: every draw is a pure function of a
// (seed, stream, counter) triple, so entries of a game tensor can be
// generated independently, in any order, on any platform, with identical
// results. The mixer is the SplitMix64 finalizer applied to a keyed chain.

inline std::uint64_t SplitMix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// 64 uniform bits for the given key triple.
inline std::uint64_t CounterBits(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t counter) {
  return SplitMix64(SplitMix64(SplitMix64(seed) ^ stream) ^ counter);
}

// Uniform integer in [lo, hi] via a 128-bit widening multiply. The residual
// bias is span/2^64 and irrelevant at our spans.
inline std::int64_t CounterUniformInt(std::uint64_t seed, std::uint64_t stream,
                                      std::uint64_t counter, std::int64_t lo,
                                      std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t bits = CounterBits(seed, stream, counter);
  const std::uint64_t offset = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(bits) * span) >> 64);
  return lo + static_cast<std::int64_t>(offset);
}

// Uniform double in (0, 1]: 53 bits, never exactly 0 so it is log-safe.
inline double CounterUniformUnit(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t counter) {
  const std::uint64_t bits = CounterBits(seed, stream, counter) >> 11;
  return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
}

}  // namespace multinash

#endif  // MULTINASH_RNG_H_
