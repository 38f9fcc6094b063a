// Copyright 2026 The Ambush Authors
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

// Seeded random streams. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; the draws below avoid the library distributions
// (whose algorithms are implementation-defined) so that every result is
// bit-reproducible across toolchains.

#ifndef AMBUSH_RANDOM_H_
#define AMBUSH_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace ambush {

using Seed = std::uint64_t;
using Rng = std::mt19937_64;

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 64-bit FNV-1a.
inline std::uint64_t HashString(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Sub-stream seed keyed by an integer tag.
inline Seed DeriveSeed(Seed parent, std::uint64_t tag) {
  return SplitMix64(SplitMix64(parent) ^
                    SplitMix64(tag + 0x632be59bd9b4e019ULL));
}

// Sub-stream seed keyed by a string tag (courier ids, strategy names).
inline Seed DeriveSeed(Seed parent, std::string_view tag) {
  return DeriveSeed(parent, HashString(tag));
}

inline Rng MakeRng(Seed seed) { return Rng(SplitMix64(seed)); }

// Uniform double in [0, 1) with 53 random bits.
inline double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Requires n > 0.
inline std::uint64_t UniformIndex(Rng& rng, std::uint64_t n) {
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

}  // namespace ambush

#endif  // AMBUSH_RANDOM_H_
