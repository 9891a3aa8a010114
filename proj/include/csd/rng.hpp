// Copyright 2026 the csd authors
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

#ifndef CSD_RNG_HPP
#define CSD_RNG_HPP

#include <cmath>
#include <cstdint>

namespace csd {

/// Counter-based splitmix64 stream. Streams derived from (seed, stream id)
/// are independent and reproducible regardless of thread scheduling.
class Rng {
 public:
  Rng() : Rng(0, 0) {}
  Rng(uint64_t seed, uint64_t stream) {
    state_ = mix(seed + 0x9e3779b97f4a7c15ull * (stream + 1));
    state_ = mix(state_ ^ 0xbf58476d1ce4e5b9ull);
  }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  /// Uniform in [0, bound) without modulo bias.
  uint64_t below(uint64_t bound) {
    if (bound <= 1) {
      return 0;
    }
    uint64_t threshold = -bound % bound;
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) {
        return r % bound;
      }
    }
  }

  /// Uniform double in [0, 1).
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Number of failures before the next success of a Bernoulli(p) stream;
  /// returns a huge value when p == 0.
  uint64_t geometric_skip(double p) {
    if (p <= 0) {
      return ~uint64_t{0};
    }
    if (p >= 1) {
      return 0;
    }
    double u = 1.0 - uniform();
    return uint64_t(std::floor(std::log(u) / std::log1p(-p)));
  }

  template <typename T>
  void shuffle(T *data, size_t count) {
    for (size_t i = count; i > 1; i--) {
      size_t j = below(i);
      std::swap(data[i - 1], data[j]);
    }
  }

 private:
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  uint64_t state_;
};

}  // namespace csd

#endif
