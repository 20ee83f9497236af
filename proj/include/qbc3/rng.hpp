// Copyright 2026 The qbc3sim Authors
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

#ifndef QBC3_RNG_HPP
#define QBC3_RNG_HPP

#include <cstdint>
#include <numbers>

namespace qbc3 {

// SplitMix64 stream. Every randomized operation takes one of these
// explicitly; there is no global generator.
//
// Child-seed derivation for trial t of a root seed s is the (t+1)-th output
// of SplitMix64(s), computed statelessly as mix(s + (t+1)*gamma). Distinct
// trials get distinct states because mix is a bijection.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform double in [0, 1), 53 mantissa bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform angle in [0, 2*pi).
  double angle() { return uniform() * 2.0 * std::numbers::pi; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo is fine here: n is tiny versus 2^64.
    return next() % n;
  }

  static std::uint64_t child_seed(std::uint64_t root, std::uint64_t trial) {
    return mix(root + (trial + 1) * kGamma);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace qbc3

#endif  // QBC3_RNG_HPP
