// speechaug/rng.h

// Copyright 2026  The speechaug Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SPEECHAUG_RNG_H_
#define SPEECHAUG_RNG_H_

#include <array>
#include <cstdint>
#include <string_view>

namespace speechaug {

/// One step of splitmix64: advances `state` and returns the mixed output.
inline uint64_t SplitMix64(uint64_t &state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// FNV-1a over the bytes of `text`. Stable across platforms and runs, which
/// std::hash is not.
inline uint64_t StableHash64(std::string_view text) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Combines a global seed with a per-item value (usually StableHash64(id)).
inline uint64_t MixSeed(uint64_t seed, uint64_t value) {
  uint64_t s = seed;
  uint64_t a = SplitMix64(s);
  uint64_t t = value ^ a;
  return SplitMix64(t);
}

inline uint64_t UtteranceSeed(uint64_t global_seed, std::string_view id) {
  return MixSeed(global_seed, StableHash64(id));
}

/// xoshiro256** seeded through splitmix64, plus the handful of draws the
/// augmentations need. The output sequence for a given seed is fixed.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t s = seed;
    for (auto &word : state_) word = SplitMix64(s);
  }

  uint64_t NextU64() {
    const uint64_t result = Rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = Rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 random bits.
  double NextDouble() { return (NextU64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in the closed range [lo, hi]. Unbiased (rejection).
  int64_t UniformInt(int64_t lo, int64_t hi) {
    if (hi <= lo) return lo;
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t x;
    do {
      x = NextU64();
    } while (x >= limit);
    return lo + static_cast<int64_t>(x % span);
  }

  /// Standard normal via Box-Muller. Both outputs of each transform are
  /// used, so draws come in pairs.
  double Gaussian();

 private:
  static uint64_t Rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace speechaug

#endif  // SPEECHAUG_RNG_H_
