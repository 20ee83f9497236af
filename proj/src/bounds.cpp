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

#include "qbc3/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbc3::bounds {

namespace {

void require_odd(int n) {
  if (n < 1 || n % 2 == 0)
    throw std::invalid_argument("bounds: n must be odd and positive, got " +
                                std::to_string(n));
}

}  // namespace

Rational helstrom_gap_m1_rational(int n) {
  require_odd(n);
  int l = (n - 1) / 2;
  return Rational(binomial(2 * l, l), BigInt::pow2(n));
}

double helstrom_gap_m1(int n, double lambda_plus) {
  if (lambda_plus < 0.0 || lambda_plus > 1.0 + 1e-12)
    throw std::invalid_argument("helstrom_gap_m1: lambda_plus outside [0, 1]");
  return lambda_plus * helstrom_gap_m1_rational(n).to_double();
}

double helstrom_gap_upper(int l) {
  if (l < 1) throw std::invalid_argument("helstrom_gap_upper: l must be >= 1");
  return 1.0 / (2.0 * std::sqrt(std::numbers::pi * l));
}

double helstrom_gap_lower(int l) {
  if (l < 1) throw std::invalid_argument("helstrom_gap_lower: l must be >= 1");
  return 1.0 / (4.0 * std::sqrt(static_cast<double>(l)));
}

double guess_baseline(int n) {
  if (n < 1) throw std::invalid_argument("guess_baseline: n must be >= 1");
  return 0.5 * (1.0 + 1.0 / n);
}

Rational majority_gap_rational(int n, int m) {
  BoundParams p{n, m, 0.0};
  if (!p.parity_ok() || m >= n)
    throw std::invalid_argument("majority_gap: need n odd, 1 <= m < n, n - m even");
  int l = p.l();
  int lp = p.l_prime();
  // C(n-m, l') / 2^{n-m+1} + sum_{k=l'+1}^{l} C(n-m, k) / 2^{n-m},
  // with out-of-range binomials zero.
  Rational gap = Rational(binomial(n - m, lp), BigInt::pow2(n - m + 1));
  BigInt tail(0);
  for (int k = lp + 1; k <= l; ++k) tail = tail + binomial(n - m, k);
  gap = gap + Rational(tail, BigInt::pow2(n - m));
  return gap;
}

double majority_gap(int n, int m) { return majority_gap_rational(n, m).to_double(); }

double majority_gap_upper(int n, int m) {
  BoundParams p{n, m, 0.0};
  if (!p.parity_ok() || m >= n)
    throw std::invalid_argument("majority_gap_upper: need n odd, 1 <= m < n, n - m even");
  int lp = p.l_prime();
  if (lp < 1) throw std::invalid_argument("majority_gap_upper: l' must be >= 1");
  return (m + 1) / (2.0 * std::sqrt(std::numbers::pi * lp));
}

Rational hypergeom_miss_rational(int n, int m) {
  if (m < 0 || n < m) throw std::invalid_argument("hypergeom_miss: need 0 <= m <= n");
  if (m == 0) return Rational(1);
  if (n < 2 * m) return Rational(0);
  return Rational(binomial(n - m, m), binomial(n, m));
}

double hypergeom_miss(int n, int m) { return hypergeom_miss_rational(n, m).to_double(); }

double adam_decay(double p_bar, int m) {
  if (p_bar < 0.0 || p_bar > 1.0)
    throw std::invalid_argument("adam_decay: p_bar outside [0, 1]");
  if (m < 0) throw std::invalid_argument("adam_decay: negative m");
  return std::pow(p_bar, m);
}

BigInt ordered_placements(int n, int m) { return falling_factorial(n, m); }

}  // namespace qbc3::bounds
