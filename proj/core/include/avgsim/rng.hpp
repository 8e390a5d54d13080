// Copyright 2026 The avgsim Authors
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
//
#ifndef AVGSIM_RNG_HPP_
#define AVGSIM_RNG_HPP_

#include <cstdint>

namespace avgsim {

__extension__ using Uint128 = unsigned __int128;

// Golden-ratio increment used by splitmix64 and by seed splitting.
inline constexpr std::uint64_t kSeedSplitConstant = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed for sub-stream `index` of `master`: master XOR Mix64((index + 1) * C).
constexpr std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index) {
  return master ^ Mix64((index + 1) * kSeedSplitConstant);
}

// Stream tags, so that unrelated consumers of one seed never share draws.
enum class Stream : std::uint64_t {
  kState = 0x5354415445ULL,
  kEdges = 0x4544474553ULL,
  kTau = 0x544155ULL,
  kCopy = 0x434F5059ULL,
  kGraph = 0x4752415048ULL,
  kPairs = 0x5041495253ULL,
};

constexpr std::uint64_t DeriveSeed(std::uint64_t master, Stream s) {
  return DeriveSeed(master, static_cast<std::uint64_t>(s));
}

// xoshiro256** seeded through splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& w : s_) {
      x += kSeedSplitConstant;
      w = Mix64(x);
    }
  }

  std::uint64_t Next() {
    const std::uint64_t result = Rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = Rotl(s_[3], 45);
    return result;
  }

  // Uniform integer in [0, bound), Lemire's nearly-divisionless method.
  std::uint64_t Below(std::uint64_t bound) {
    Uint128 m = static_cast<Uint128>(Next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (low < threshold) {
        m = static_cast<Uint128>(Next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform integer in [lo, hi].
  std::int64_t Between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    Below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) { return Uniform() < p; }

  // +1 or -1 with probability 1/2 each.
  int Sign() { return (Next() >> 63) ? 1 : -1; }

 private:
  static std::uint64_t Rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

}  // namespace avgsim

#endif  // AVGSIM_RNG_HPP_
