// Copyright 2026 The cfgames Authors
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

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

namespace cfgames {

inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Derives an independent stream seed from a base seed and a tag, so that
// e.g. player A's sampling cannot perturb player B's.
inline uint64_t derive_seed(uint64_t base, std::string_view tag) {
  uint64_t s = base ^ fnv1a64(tag);
  return splitmix64(s);
}

// xoshiro256** seeded via splitmix64. <random> distributions are not
// specified bit-for-bit across standard libraries, and match records must
// reproduce byte-identically, so sampling is implemented here directly.
class RngStream {
 public:
  explicit RngStream(uint64_t seed) {
    for (auto& word : state_) word = splitmix64(seed);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n), unbiased via rejection.
  int uniform_index(int n) {
    if (n <= 0) throw std::invalid_argument("uniform_index: n must be positive");
    const uint64_t bound = static_cast<uint64_t>(n);
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t draw;
    do {
      draw = next_u64();
    } while (draw >= limit);
    return static_cast<int>(draw % bound);
  }

  // Samples an index from a probability vector by CDF walk. Probabilities
  // are assumed nonnegative; any tail slack goes to the last index.
  int sample(std::span<const double> probs) {
    if (probs.empty()) throw std::invalid_argument("sample: empty distribution");
    const double u = next_double();
    double cumulative = 0.0;
    for (size_t i = 0; i + 1 < probs.size(); ++i) {
      cumulative += probs[i];
      if (u < cumulative) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size() - 1);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t state_[4];
};

}  // namespace cfgames
