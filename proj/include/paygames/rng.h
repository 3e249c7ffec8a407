// Copyright 2026 The paygames Authors. All rights reserved.
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

#ifndef PAYGAMES_RNG_H_
#define PAYGAMES_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace paygames {

// SplitMix64 finalizer; used to derive independent stream seeds from
// (run seed, player, salt) so that runs are reproducible across platforms.
inline std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b = 0,
                             std::uint64_t c = 0) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1) + 0xBF58476D1CE4E5B9ULL * (c + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Thin wrapper around mt19937_64. Uniform doubles are built from the top 53
// bits directly instead of std::uniform_real_distribution, whose output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Exp(1) variate.
  double Exponential() {
    double u = Uniform();
    // 1 - u lies in (0, 1].
    return -std::log1p(-u);
  }

  // Index drawn from a probability vector. Rounding slack at the top end goes
  // to the last index with positive mass.
  int Sample(std::span<const double> probs) {
    double u = Uniform();
    double acc = 0.0;
    int last_positive = 0;
    for (int a = 0; a < static_cast<int>(probs.size()); ++a) {
      if (probs[a] <= 0.0) continue;
      acc += probs[a];
      last_positive = a;
      if (u < acc) return a;
    }
    return last_positive;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace paygames

#endif  // PAYGAMES_RNG_H_
