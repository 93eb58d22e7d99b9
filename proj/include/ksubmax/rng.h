// Copyright 2026 The Authors.
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

// Seedable, splittable randomness.
//
// Every random decision in the library draws from a SplitMix64 stream keyed
// by (seed, key). Keys are step or instance counters, so extending a run or
// a suite never reshuffles the draws that came before.

#ifndef KSUBMAX_RNG_H_
#define KSUBMAX_RNG_H_

#include <cstdint>
#include <limits>

namespace ksubmax {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Independent substream for (seed, key).
inline SplitMix64 Substream(std::uint64_t seed, std::uint64_t key) {
  SplitMix64 mixer(seed);
  const std::uint64_t a = mixer();
  SplitMix64 keyed(a ^ (key * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
  keyed();
  return SplitMix64(keyed());
}

// Uniform double in [0, 1) with 53 random bits.
template <typename Engine>
double UniformUnit(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// Uniform integer in [lo, hi], unbiased.
template <typename Engine>
std::int64_t UniformInt(Engine& engine, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return lo + static_cast<std::int64_t>(engine());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = engine();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

// Seed for item `index` of a suite driven by `master`.
inline std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index) {
  return Substream(master, index)();
}

}  // namespace ksubmax

#endif  // KSUBMAX_RNG_H_
