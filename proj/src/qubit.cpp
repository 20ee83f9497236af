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

#include "qbc3/qubit.hpp"

#include <cmath>

namespace qbc3 {

namespace {
constexpr double kProjectorTol = 1e-9;
}

VectorC state_from_angle(double phi) {
  double r = 1.0 / std::numbers::sqrt2;
  return VectorC{cplx(r, 0.0), std::polar(r, CircleState::reduce(phi))};
}

MatrixC modulation_matrix(const Modulation& m) {
  if (m.bit != 0 && m.bit != 1) throw Error("modulation bit must be 0 or 1");
  MatrixC u = MatrixC::identity(2);
  if (m.bit == 1) u(1, 1) = std::polar(1.0, m.theta);
  return u;
}

VectorC modulate(const CircleState& s, const Modulation& m) {
  if (m.bit != 0 && m.bit != 1) throw Error("modulation bit must be 0 or 1");
  if (m.bit == 0) return state_from_angle(s.phi);
  return state_from_angle(s.phi + m.theta);
}

double lambda_plus(double theta) { return std::abs(std::sin(theta / 2.0)); }

MeasurementOutcome measure_projective(const VectorC& state,
                                      const std::vector<MatrixC>& projectors,
                                      SplitMix64& rng) {
  if (projectors.empty()) throw Error("measure_projective: empty projector set");
  int d = state.dim();
  MatrixC sum = MatrixC::zero(d, d);
  for (const auto& p : projectors) {
    if (p.rows != d || p.cols != d)
      throw Error("measure_projective: projector dimension mismatch");
    if (!p.is_hermitian(kProjectorTol))
      throw Error("measure_projective: projector not Hermitian");
    if (max_abs_diff(p * p, p) > kProjectorTol)
      throw Error("measure_projective: projector not idempotent");
    sum = sum + p;
  }
  if (max_abs_diff(sum, MatrixC::identity(d)) > kProjectorTol)
    throw Error("measure_projective: projectors do not sum to identity");

  double u = rng.uniform();
  double acc = 0.0;
  int chosen = static_cast<int>(projectors.size()) - 1;
  for (size_t k = 0; k < projectors.size(); ++k) {
    double p = std::max(0.0, std::real(inner(state, projectors[k].apply(state))));
    acc += p;
    if (u < acc) {
      chosen = static_cast<int>(k);
      break;
    }
  }
  VectorC post = projectors[static_cast<size_t>(chosen)].apply(state);
  double n = post.norm();
  if (n < 1e-15) {
    // Outcome landed on a zero-probability projector through roundoff;
    // fall back to the most likely one.
    double best = -1.0;
    for (size_t k = 0; k < projectors.size(); ++k) {
      double p = std::real(inner(state, projectors[k].apply(state)));
      if (p > best) {
        best = p;
        chosen = static_cast<int>(k);
      }
    }
    post = projectors[static_cast<size_t>(chosen)].apply(state);
    n = post.norm();
  }
  for (int i = 0; i < post.dim(); ++i) post[i] /= n;
  return MeasurementOutcome{chosen, std::move(post)};
}

CloneOutput clone_one_to_two(const VectorC& input) {
  if (input.dim() != 2) throw Error("clone_one_to_two: input must be a single qubit");
  if (std::abs(input.norm() - 1.0) > kOrthonormalTol)
    throw Error("clone_one_to_two: input is not unit norm");

  // |0> -> |00>, |1> -> (|01>+|10>)/sqrt(2), tensored with a blank ancilla.
  double r = 1.0 / std::numbers::sqrt2;
  VectorC joint(8);
  joint[0b000] = input[0];
  joint[0b010] = r * input[1];
  joint[0b100] = r * input[1];

  MatrixC rho = MatrixC::projector(joint);
  CloneOutput out;
  out.copy1 = partial_trace(rho, {2, 2, 2}, {0});
  out.copy2 = partial_trace(rho, {2, 2, 2}, {1});
  out.joint_state = std::move(joint);
  return out;
}

}  // namespace qbc3
