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

#ifndef QBC3_BOUNDS_HPP
#define QBC3_BOUNDS_HPP

#include <optional>

#include "qbc3/exactint.hpp"

namespace qbc3::bounds {

// Parameter bundle for the closed-form security bounds. n = 2l + 1 committed
// qubits carry m signals; when the majority-vote formula applies, n - m must
// also be even so that l' = (n - m)/2.
struct BoundParams {
  int n = 1;
  int m = 1;
  double theta;

  int l() const { return (n - 1) / 2; }
  int l_prime() const { return (n - m) / 2; }
  bool n_odd() const { return n % 2 == 1; }
  bool parity_ok() const { return n_odd() && m >= 1 && m <= n && (n - m) % 2 == 0; }
};

// Babe's optimal advantage over 1/2 for one signal among n = 2l + 1 qubits:
// lambda_plus * C(2l, l) / 2^n.
double helstrom_gap_m1(int n, double lambda_plus);

// Exact dyadic part C(2l, l) / 2^n of the single-signal gap.
Rational helstrom_gap_m1_rational(int n);

// Asymptotic envelope 1 / (2 sqrt(pi l)) for the gap above.
double helstrom_gap_upper(int l);

// Floor 1 / (4 sqrt(l)); strict only for l >= 2 (equality at l = 1).
double helstrom_gap_lower(int l);

// Success of guessing the signal position outright: (1 + 1/n) / 2.
double guess_baseline(int n);

// Advantage of the per-qubit majority vote with m signals, n - m decoys,
// orthogonal modulation. Requires n odd and n - m even positive.
double majority_gap(int n, int m);
Rational majority_gap_rational(int n, int m);

// Envelope (m + 1) / (2 sqrt(pi l')) for the majority-vote advantage.
double majority_gap_upper(int n, int m);

// Probability that m guessed positions avoid all m signals:
// C(n-m, m) / C(n, m). Returns 0 for n < 2m, 1 for m = 0.
double hypergeom_miss(int n, int m);
Rational hypergeom_miss_rational(int n, int m);

// p^m: the per-signal cheat probability compounds across the sequence.
double adam_decay(double p_bar, int m);

// (n)_m ordered signal placements.
BigInt ordered_placements(int n, int m);

}  // namespace qbc3::bounds

#endif  // QBC3_BOUNDS_HPP
