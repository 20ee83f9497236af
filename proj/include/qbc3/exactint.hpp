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

#ifndef QBC3_EXACTINT_HPP
#define QBC3_EXACTINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qbc3 {

struct BigIntDivMod;

// Arbitrary-precision signed integer, sign-magnitude with 32-bit limbs.
// Sized for exact binomial work up to a few thousand bits; nothing here is
// tuned beyond schoolbook arithmetic.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);  // NOLINT(google-explicit-constructor)
  static BigInt from_u64(std::uint64_t v);
  static BigInt pow2(int k);

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }
  int bit_length() const;
  bool bit(int i) const;

  BigInt operator-() const;
  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  BigInt operator<<(int s) const;
  BigInt operator>>(int s) const;

  // Truncated division; remainder takes the dividend's sign.
  static BigIntDivMod divmod(const BigInt& a, const BigInt& b);
  BigInt operator/(const BigInt& o) const;

  // In-place multiply / divide by a small word. div_small returns the
  // remainder.
  void mul_small(std::uint32_t f);
  std::uint32_t div_small(std::uint32_t d);

  static BigInt gcd(const BigInt& a, const BigInt& b);  // nonnegative

  int compare(const BigInt& o) const;  // -1, 0, 1
  bool operator==(const BigInt& o) const { return compare(o) == 0; }
  bool operator!=(const BigInt& o) const { return compare(o) != 0; }
  bool operator<(const BigInt& o) const { return compare(o) < 0; }
  bool operator<=(const BigInt& o) const { return compare(o) <= 0; }
  bool operator>(const BigInt& o) const { return compare(o) > 0; }
  bool operator>=(const BigInt& o) const { return compare(o) >= 0; }

  double to_double() const;
  std::string to_string() const;  // decimal

 private:
  int sign_ = 0;                    // -1, 0, +1
  std::vector<std::uint32_t> mag_;  // little-endian limbs, no leading zeros

  void trim();
  static int compare_mag(const std::vector<std::uint32_t>& a,
                         const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
};

struct BigIntDivMod {
  BigInt quotient;
  BigInt remainder;
};

inline BigInt BigInt::operator/(const BigInt& o) const { return divmod(*this, o).quotient; }

// C(n, k); zero outside 0 <= k <= n.
BigInt binomial(int n, int k);

// (n)_m = n! / (n-m)!
BigInt falling_factorial(int n, int m);

// Exact rational, reduced form, positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt num, BigInt den);
  static Rational dyadic(BigInt num, int k) { return Rational(std::move(num), BigInt::pow2(k)); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;

  int compare(const Rational& o) const;
  bool operator==(const Rational& o) const { return compare(o) == 0; }
  bool operator!=(const Rational& o) const { return compare(o) != 0; }
  bool operator<(const Rational& o) const { return compare(o) < 0; }
  bool operator<=(const Rational& o) const { return compare(o) <= 0; }
  bool operator>(const Rational& o) const { return compare(o) > 0; }
  bool operator>=(const Rational& o) const { return compare(o) >= 0; }

  double to_double() const;
  std::string to_string() const;

 private:
  BigInt num_;
  BigInt den_;

  void reduce();
};

}  // namespace qbc3

#endif  // QBC3_EXACTINT_HPP
