// Copyright 2026 The policycert Authors.
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

#ifndef POLICYCERT_RANDOM_H_
#define POLICYCERT_RANDOM_H_

#include <cstdint>
#include <limits>

namespace policycert {

// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a) ^ (b + 0x632BE59BD9B4E019ULL + (a << 6) + (a >> 2)));
}

// Counter-based random stream keyed by (seed, lane). Each draw hashes the
// key with an incrementing counter, so streams with different keys share no
// state and can be created in any order, on any thread.
//
// Satisfies UniformRandomBitGenerator. The built-in uniform() and normal()
// transforms are used instead of <random> distributions so that outputs do
// not depend on the standard library implementation.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t lane)
      : key_(hash_combine(seed, lane)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * 0xD1B54A32D192ED03ULL);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal by Box-Muller; consumes two draws, caches nothing.
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Lanes of a single rollout's randomness. Step t of the dynamics uses lane
// t; the others live far above any horizon.
inline constexpr std::uint64_t kLaneParameters = 0xFFFF'FFFF'0000'0001ULL;
inline constexpr std::uint64_t kLaneInitialState = 0xFFFF'FFFF'0000'0002ULL;
inline constexpr std::uint64_t kLanePolicyBase = 0xFFFF'FFFE'0000'0000ULL;

}  // namespace policycert

#endif  // POLICYCERT_RANDOM_H_
