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

#ifndef QBC3_QUBIT_HPP
#define QBC3_QUBIT_HPP

#include <numbers>

#include "qbc3/linalg.hpp"
#include "qbc3/rng.hpp"

namespace qbc3 {

inline constexpr double kPi = std::numbers::pi;

// The protocol's state family lives on one great circle of the Bloch sphere,
// fixed here as the equator: |psi(phi)> = (|0> + e^{i phi}|1>)/sqrt(2).
// Any great circle is unitarily equivalent; the equator makes the modulation
// a plain phase rotation and matches the standard equatorial-cloner setting.
struct CircleState {
  double phi;

  explicit CircleState(double angle) : phi(reduce(angle)) {}

  static double reduce(double a) {
    double two_pi = 2.0 * kPi;
    double r = std::fmod(a, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
  }
};

// U_0 = I and U_1 = diag(1, e^{i theta}), the rotation by theta along the
// circle. theta = pi is the protocol default but stays a parameter.
struct Modulation {
  double theta = kPi;
  int bit = 0;
};

struct MeasurementOutcome {
  int index = 0;
  VectorC post_state;
};

VectorC state_from_angle(double phi);

MatrixC modulation_matrix(const Modulation& m);

VectorC modulate(const CircleState& s, const Modulation& m);

// Positive eigenvalue of sigma_0 - sigma_1 for two circle states separated
// by theta: |sin(theta/2)|.
double lambda_plus(double theta);

// Projective measurement. The projector set must be complete (sum to the
// identity) and each projector Hermitian idempotent, all within 1e-9.
MeasurementOutcome measure_projective(const VectorC& state,
                                      const std::vector<MatrixC>& projectors,
                                      SplitMix64& rng);

// Symmetric phase-covariant 1->2 cloner, as the economical isometry
// |0> -> |00>, |1> -> (|01>+|10>)/sqrt(2) on (copy1, copy2) with a blank
// third ancilla qubit. For equatorial inputs both copies reach fidelity
// 1/2 + 1/(2 sqrt(2)) to the input, independent of the phase.
struct CloneOutput {
  MatrixC copy1;        // 2x2 reduced density operator
  MatrixC copy2;        // 2x2 reduced density operator
  VectorC joint_state;  // (copy1, copy2, ancilla) register, dim 8
};

CloneOutput clone_one_to_two(const VectorC& input);

// Analytic per-copy fidelity of the cloner above on equatorial states.
inline constexpr double kCloneCopyFidelity = 0.5 + 0.5 / std::numbers::sqrt2;

}  // namespace qbc3

#endif  // QBC3_QUBIT_HPP
