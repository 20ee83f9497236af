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

#include "qbc3/exactint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbc3 {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v > 0 ? 1 : -1;
  std::uint64_t u = v > 0 ? static_cast<std::uint64_t>(v)
                          : ~static_cast<std::uint64_t>(v) + 1;
  mag_.push_back(static_cast<std::uint32_t>(u));
  if (u >> 32) mag_.push_back(static_cast<std::uint32_t>(u >> 32));
}

BigInt BigInt::from_u64(std::uint64_t v) {
  BigInt b;
  if (v == 0) return b;
  b.sign_ = 1;
  b.mag_.push_back(static_cast<std::uint32_t>(v));
  if (v >> 32) b.mag_.push_back(static_cast<std::uint32_t>(v >> 32));
  return b;
}

BigInt BigInt::pow2(int k) {
  if (k < 0) throw std::invalid_argument("pow2: negative exponent");
  BigInt b;
  b.sign_ = 1;
  b.mag_.assign(static_cast<size_t>(k / 32) + 1, 0);
  b.mag_.back() = 1u << (k % 32);
  return b;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::bit_length() const {
  if (sign_ == 0) return 0;
  int bits = static_cast<int>(mag_.size() - 1) * 32;
  std::uint32_t top = mag_.back();
  while (top) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

bool BigInt::bit(int i) const {
  size_t limb = static_cast<size_t>(i) / 32;
  if (limb >= mag_.size()) return false;
  return (mag_[limb] >> (i % 32)) & 1u;
}

int BigInt::compare_mag(const std::vector<std::uint32_t>& a,
                        const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  const auto& big = a.size() >= b.size() ? a : b;
  const auto& small = a.size() >= b.size() ? b : a;
  std::vector<std::uint32_t> out(big.size() + 1, 0);
  std::uint64_t carry = 0;
  for (size_t i = 0; i < big.size(); ++i) {
    std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0u);
    out[i] = static_cast<std::uint32_t>(s);
    carry = s >> 32;
  }
  out[big.size()] = static_cast<std::uint32_t>(carry);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out(a.size(), 0);
  std::int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow -
                     (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
    if (d < 0) {
      d += static_cast<std::int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out[i] = static_cast<std::uint32_t>(d);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BigInt BigInt::operator-() const {
  BigInt out = *this;
  out.sign_ = -out.sign_;
  return out;
}

BigInt BigInt::operator+(const BigInt& o) const {
  if (sign_ == 0) return o;
  if (o.sign_ == 0) return *this;
  BigInt out;
  if (sign_ == o.sign_) {
    out.sign_ = sign_;
    out.mag_ = add_mag(mag_, o.mag_);
  } else {
    int c = compare_mag(mag_, o.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
      out.sign_ = sign_;
      out.mag_ = sub_mag(mag_, o.mag_);
    } else {
      out.sign_ = o.sign_;
      out.mag_ = sub_mag(o.mag_, mag_);
    }
  }
  return out;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  if (sign_ == 0 || o.sign_ == 0) return BigInt();
  BigInt out;
  out.sign_ = sign_ * o.sign_;
  out.mag_.assign(mag_.size() + o.mag_.size(), 0);
  for (size_t i = 0; i < mag_.size(); ++i) {
    std::uint64_t carry = 0;
    std::uint64_t ai = mag_[i];
    for (size_t j = 0; j < o.mag_.size(); ++j) {
      std::uint64_t s = out.mag_[i + j] + ai * o.mag_[j] + carry;
      out.mag_[i + j] = static_cast<std::uint32_t>(s);
      carry = s >> 32;
    }
    size_t k = i + o.mag_.size();
    while (carry) {
      std::uint64_t s = out.mag_[k] + carry;
      out.mag_[k] = static_cast<std::uint32_t>(s);
      carry = s >> 32;
      ++k;
    }
  }
  out.trim();
  return out;
}

BigInt BigInt::operator<<(int s) const {
  if (s < 0) throw std::invalid_argument("shift: negative amount");
  if (sign_ == 0 || s == 0) return *this;
  BigInt out;
  out.sign_ = sign_;
  int limbs = s / 32, bits = s % 32;
  out.mag_.assign(mag_.size() + static_cast<size_t>(limbs) + 1, 0);
  for (size_t i = 0; i < mag_.size(); ++i) {
    std::uint64_t v = static_cast<std::uint64_t>(mag_[i]) << bits;
    out.mag_[i + static_cast<size_t>(limbs)] |= static_cast<std::uint32_t>(v);
    out.mag_[i + static_cast<size_t>(limbs) + 1] |= static_cast<std::uint32_t>(v >> 32);
  }
  out.trim();
  return out;
}

BigInt BigInt::operator>>(int s) const {
  if (s < 0) throw std::invalid_argument("shift: negative amount");
  if (sign_ == 0 || s == 0) return *this;
  int limbs = s / 32, bits = s % 32;
  if (static_cast<size_t>(limbs) >= mag_.size()) return BigInt();
  BigInt out;
  out.sign_ = sign_;
  out.mag_.assign(mag_.size() - static_cast<size_t>(limbs), 0);
  for (size_t i = 0; i < out.mag_.size(); ++i) {
    std::uint64_t v = mag_[i + static_cast<size_t>(limbs)] >> bits;
    if (bits && i + static_cast<size_t>(limbs) + 1 < mag_.size())
      v |= static_cast<std::uint64_t>(mag_[i + static_cast<size_t>(limbs) + 1]) << (32 - bits);
    out.mag_[i] = static_cast<std::uint32_t>(v);
  }
  out.trim();
  return out;
}

BigIntDivMod BigInt::divmod(const BigInt& a, const BigInt& b) {
  if (b.sign_ == 0) throw std::invalid_argument("divmod: division by zero");
  BigIntDivMod dm;
  if (a.sign_ == 0) return dm;
  if (compare_mag(a.mag_, b.mag_) < 0) {
    dm.remainder = a;
    return dm;
  }

  // Bitwise long division on magnitudes.
  BigInt r, q;
  q.mag_.assign(a.mag_.size(), 0);
  for (int i = a.bit_length() - 1; i >= 0; --i) {
    r = r << 1;
    if (a.bit(i)) {
      if (r.sign_ == 0) {
        r.sign_ = 1;
        r.mag_.assign(1, 1);
      } else {
        r.mag_[0] |= 1u;
      }
    }
    if (r.sign_ != 0 && compare_mag(r.mag_, b.mag_) >= 0) {
      r.mag_ = sub_mag(r.mag_, b.mag_);
      r.trim();
      q.mag_[static_cast<size_t>(i) / 32] |= 1u << (i % 32);
    }
  }
  q.sign_ = 1;
  q.trim();
  dm.quotient = q;
  dm.remainder = r;
  dm.quotient.sign_ = q.sign_ == 0 ? 0 : a.sign_ * b.sign_;
  dm.remainder.sign_ = r.sign_ == 0 ? 0 : a.sign_;
  return dm;
}

void BigInt::mul_small(std::uint32_t f) {
  if (sign_ == 0) return;
  if (f == 0) {
    sign_ = 0;
    mag_.clear();
    return;
  }
  std::uint64_t carry = 0;
  for (auto& limb : mag_) {
    std::uint64_t s = static_cast<std::uint64_t>(limb) * f + carry;
    limb = static_cast<std::uint32_t>(s);
    carry = s >> 32;
  }
  if (carry) mag_.push_back(static_cast<std::uint32_t>(carry));
}

std::uint32_t BigInt::div_small(std::uint32_t d) {
  if (d == 0) throw std::invalid_argument("div_small: division by zero");
  if (sign_ == 0) return 0;
  std::uint64_t rem = 0;
  for (size_t i = mag_.size(); i-- > 0;) {
    std::uint64_t cur = (rem << 32) | mag_[i];
    mag_[i] = static_cast<std::uint32_t>(cur / d);
    rem = cur % d;
  }
  trim();
  return static_cast<std::uint32_t>(rem);
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
  BigInt x = a, y = b;
  x.sign_ = x.sign_ == 0 ? 0 : 1;
  y.sign_ = y.sign_ == 0 ? 0 : 1;
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;

  auto trailing_zeros = [](const BigInt& v) {
    int tz = 0;
    for (size_t i = 0; i < v.mag_.size(); ++i) {
      if (v.mag_[i] == 0) {
        tz += 32;
        continue;
      }
      std::uint32_t limb = v.mag_[i];
      while (!(limb & 1u)) {
        ++tz;
        limb >>= 1;
      }
      break;
    }
    return tz;
  };

  int shift = std::min(trailing_zeros(x), trailing_zeros(y));
  x = x >> trailing_zeros(x);
  while (!y.is_zero()) {
    y = y >> trailing_zeros(y);
    if (compare_mag(x.mag_, y.mag_) > 0) std::swap(x, y);
    y = y - x;
  }
  return x << shift;
}

int BigInt::compare(const BigInt& o) const {
  if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
  int c = compare_mag(mag_, o.mag_);
  return sign_ >= 0 ? c : -c;
}

double BigInt::to_double() const {
  if (sign_ == 0) return 0.0;
  int bits = bit_length();
  double out;
  if (bits <= 63) {
    std::uint64_t v = mag_[0];
    if (mag_.size() > 1) v |= static_cast<std::uint64_t>(mag_[1]) << 32;
    out = static_cast<double>(v);
  } else {
    // Top 64 bits as mantissa, scaled back up.
    BigInt top = *this >> (bits - 64);
    std::uint64_t v = top.mag_[0];
    if (top.mag_.size() > 1) v |= static_cast<std::uint64_t>(top.mag_[1]) << 32;
    out = std::ldexp(static_cast<double>(v), bits - 64);
  }
  return sign_ < 0 ? -out : out;
}

std::string BigInt::to_string() const {
  if (sign_ == 0) return "0";
  BigInt v = *this;
  std::vector<std::uint32_t> groups;
  while (!v.is_zero()) groups.push_back(v.div_small(1000000000u));
  std::string s = sign_ < 0 ? "-" : "";
  s += std::to_string(groups.back());
  for (size_t i = groups.size() - 1; i-- > 0;) {
    std::string g = std::to_string(groups[i]);
    s += std::string(9 - g.size(), '0') + g;
  }
  return s;
}

BigInt binomial(int n, int k) {
  if (n < 0) throw std::invalid_argument("binomial: negative n");
  if (k < 0 || k > n) return BigInt(0);
  k = std::min(k, n - k);
  BigInt c(1);
  for (int i = 1; i <= k; ++i) {
    c.mul_small(static_cast<std::uint32_t>(n - k + i));
    std::uint32_t rem = c.div_small(static_cast<std::uint32_t>(i));
    if (rem != 0) throw std::logic_error("binomial: non-exact division");
  }
  return c;
}

BigInt falling_factorial(int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("falling_factorial: negative argument");
  if (m > n) throw std::invalid_argument("falling_factorial: m exceeds n");
  BigInt p(1);
  for (int i = 0; i < m; ++i) p.mul_small(static_cast<std::uint32_t>(n - i));
  return p;
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("rational: zero denominator");
  reduce();
}

void Rational::reduce() {
  if (den_.sign() < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (g != BigInt(1)) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(num_ * o.num_, den_ * o.den_);
}

int Rational::compare(const Rational& o) const {
  return (num_ * o.den_).compare(o.num_ * den_);
}

double Rational::to_double() const {
  if (num_.is_zero()) return 0.0;
  BigInt a = num_.sign() < 0 ? -num_ : num_;
  const BigInt& b = den_;
  int diff = a.bit_length() - b.bit_length();
  double out;
  if (diff >= 64) {
    out = (a / b).to_double();
  } else {
    int p = 64 - diff;
    out = std::ldexp(((a << p) / b).to_double(), -p);
  }
  return num_.sign() < 0 ? -out : out;
}

std::string Rational::to_string() const {
  return num_.to_string() + "/" + den_.to_string();
}

}  // namespace qbc3
