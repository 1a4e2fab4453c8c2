// Copyright 2026 The waning authors.
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

#ifndef WANING_RNG_HPP
#define WANING_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace waning {

// Deterministic random source. All stochastic routines in this library draw
// through this wrapper and nothing else, so a (seed, algorithm) pair pins the
// output bit-for-bit across platforms. std::mt19937_64 has a portable,
// standard-mandated sequence; the float conversions below avoid
// std::uniform_real_distribution, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on the open interval (0, 1): (x >> 11) gives 53 high bits,
  // + 0.5 keeps both endpoints strictly out.
  double uniform01() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Unit-rate exponential via inversion; strictly positive because
  // uniform01() never returns 0 or 1. Consumes exactly one engine draw.
  double exponential() { return -std::log(uniform01()); }

  double exponential(double rate) { return exponential() / rate; }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Stream splitter for embarrassingly parallel replications (splitmix64 of
// base + (index+1)*golden). Adjacent indices give statistically independent
// seeds; derive_seed(s, i) never equals s itself for i < 2^63.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace waning

#endif  // WANING_RNG_HPP
