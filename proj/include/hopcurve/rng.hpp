// Copyright 2026 The hopcurve Authors
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

#ifndef HOPCURVE_RNG_HPP_
#define HOPCURVE_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace hopcurve {

// splitmix64 finalizer; stable across platforms.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives a child seed from a parent seed and a stream index. Grid nodes,
// gradient evaluations and learning steps all seed their rollouts through
// this, which makes results independent of evaluation order.
inline std::uint64_t mix_seed(std::uint64_t parent, std::uint64_t stream) {
  return splitmix64(parent ^ (0x9e3779b97f4a7c15ULL + splitmix64(stream)));
}

inline std::uint64_t mix_seed(std::uint64_t parent, std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(parent, a), b);
}

// Seeded generator with explicit variate mappers. std::
// distributions are implementation-defined, so uniform and normal are
// mapped here to keep identical seeds giving identical rollouts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // [0, 1)
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal, Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kRngPi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * kRngPi * u2);
  }

 private:
  static constexpr double kRngPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hopcurve

#endif  // HOPCURVE_RNG_HPP_
