// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace exactnn {

/// Arbitrary-precision rational kept in canonical form: positive
/// denominator, gcd(|num|, den) = 1. Every value the library certifies
/// is carried by this type; no floating point enters any computation.
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(long n) : value_(n) {}  // NOLINT: implicit by design, matches int literals
  Rational(long num, long den);
  Rational(mpz_class num, mpz_class den);
  explicit Rational(mpq_class q);

  /// Parses "p/q" or a bare integer "p". Rejects decimals, exponents,
  /// zero denominators, and any other malformed input.
  static Rational parse(std::string_view text);

  /// 2^k for any sign of k.
  static Rational pow2(long k);

  const mpq_class& raw() const { return value_; }
  mpz_class num() const { return value_.get_num(); }
  mpz_class den() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_negative() const { return sgn(value_) < 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  /// Largest integer <= value.
  mpz_class floor() const;

  /// Canonical "p/q" rendering; zero prints as "0/1".
  std::string to_string() const;

  /// Decimal rendering truncated toward zero to `digits` fractional
  /// digits, e.g. "0.50000". Used for report tables only.
  std::string to_decimal(int digits) const;

  Rational operator-() const { return Rational(mpq_class(-value_)); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  mpq_class value_;
};

Rational abs(const Rational& q);

/// Smallest integer m with 2^m >= q, for q > 0.
long ceil_log2_ub(const Rational& q);

/// Rational upper bound on sqrt(q) with error <= 2^(-k); exact when
/// sqrt(q) has denominator dividing den(q)*2^k (perfect squares in
/// particular). Requires q >= 0.
Rational sqrt_ub(const Rational& q, unsigned k);

/// Rational lower bound on sqrt(q) with error <= 2^(-k). Requires q >= 0.
Rational sqrt_lb(const Rational& q, unsigned k);

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace exactnn
