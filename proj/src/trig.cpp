// SPDX-License-Identifier: Apache-2.0

#include "exactnn/trig.hpp"

#include "exactnn/errors.hpp"

namespace exactnn {

namespace {

// The alternating series run in fixed-point: integers scaled by 2^W with
// outward rounding. Sums of dyadics stay dyadic, so partial sums never
// accumulate coprime denominators the way exact rational summation does.

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

struct ScaledBounds {
  mpz_class lo;
  mpz_class hi;
  long scale;

  RatInterval to_interval() const {
    const Rational unit = Rational::pow2(-scale);
    return {Rational(lo, 1) * unit, Rational(hi, 1) * unit};
  }
};

long scale_for(const Rational& tol) {
  // Enough headroom that per-term rounding noise stays far below tol.
  return std::max(8L, -ceil_log2_ub(tol)) + 32;
}

mpz_class scaled_cutoff(const Rational& tol, long scale) {
  // tol/4 at the working scale, rounded down.
  mpz_class n = tol.num();
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(scale - 2));
  return floor_div(n, tol.den());
}

ScaledBounds atan_scaled(const Rational& x, const Rational& tol) {
  const long scale = scale_for(tol);
  mpz_class unit = 1;
  mpz_mul_2exp(unit.get_mpz_t(), unit.get_mpz_t(), static_cast<mp_bitcnt_t>(scale));
  const mpz_class p2 = x.num() * x.num();
  const mpz_class q2 = x.den() * x.den();
  // t_i = x^(2i+1) / (2i+1); track x^(2i+1) and divide per term.
  const mpz_class cutoff = scaled_cutoff(tol, scale);
  mpz_class pow_lo = floor_div(x.num() * unit, x.den());
  mpz_class pow_hi = ceil_div(x.num() * unit, x.den());
  mpz_class sum_lo = 0, sum_hi = 0;
  for (long i = 0;; ++i) {
    const mpz_class t_lo = floor_div(pow_lo, mpz_class(2 * i + 1));
    const mpz_class t_hi = ceil_div(pow_hi, mpz_class(2 * i + 1));
    if (i % 2 == 0) {
      sum_lo += t_lo;
      sum_hi += t_hi;
    } else {
      sum_lo -= t_hi;
      sum_hi -= t_lo;
    }
    pow_lo = floor_div(pow_lo * p2, q2);
    pow_hi = ceil_div(pow_hi * p2, q2);
    const mpz_class next_hi = ceil_div(pow_hi, mpz_class(2 * i + 3));
    // Terms strictly decrease for x < 1, so the alternating tail is
    // bounded by the next term as soon as that term is small enough.
    if (next_hi <= cutoff) {
      if (i % 2 == 0)
        sum_lo -= next_hi;
      else
        sum_hi += next_hi;
      return {std::move(sum_lo), std::move(sum_hi), scale};
    }
  }
}

ScaledBounds maclaurin_scaled(const Rational& x, const Rational& tol, bool odd) {
  const long scale = scale_for(tol);
  mpz_class unit = 1;
  mpz_mul_2exp(unit.get_mpz_t(), unit.get_mpz_t(), static_cast<mp_bitcnt_t>(scale));
  const mpz_class p2 = x.num() * x.num();
  const mpz_class q2 = x.den() * x.den();
  const Rational x2 = x * x;
  mpz_class t0_lo, t0_hi;
  if (odd) {
    t0_lo = floor_div(x.num() * unit, x.den());
    t0_hi = ceil_div(x.num() * unit, x.den());
  } else {
    t0_lo = unit;
    t0_hi = unit;
  }
  const mpz_class cutoff = scaled_cutoff(tol, scale);
  mpz_class sum_lo = 0, sum_hi = 0;
  mpz_class t_lo = std::move(t0_lo), t_hi = std::move(t0_hi);
  for (long i = 0;; ++i) {
    if (i % 2 == 0) {
      sum_lo += t_lo;
      sum_hi += t_hi;
    } else {
      sum_lo -= t_hi;
      sum_hi -= t_lo;
    }
    const long a = odd ? 2 * i + 2 : 2 * i + 1;
    const mpz_class den = q2 * a * (a + 1);
    mpz_class next_lo = floor_div(t_lo * p2, den);
    mpz_class next_hi = ceil_div(t_hi * p2, den);
    // The ratio |t_{j+1}/t_j| = x^2 / ((2j+..)(2j+..+1)) shrinks with j,
    // so one exact check certifies the whole tail is decreasing and the
    // alternating remainder is bounded by the next term.
    const long b = odd ? 2 * i + 4 : 2 * i + 3;
    const bool decreasing = x2 < Rational(b * (b + 1));
    if (decreasing && next_hi <= cutoff) {
      if (i % 2 == 0)
        sum_lo -= next_hi;
      else
        sum_hi += next_hi;
      return {std::move(sum_lo), std::move(sum_hi), scale};
    }
    t_lo = std::move(next_lo);
    t_hi = std::move(next_hi);
  }
}

}  // namespace

RatInterval atan_interval(const Rational& x, const Rational& tol) {
  if (!(Rational(0) < x) || !(x < Rational(1)))
    throw DomainError("atan_interval argument outside (0, 1)");
  return atan_scaled(x, tol).to_interval();
}

RatInterval pi_interval(const Rational& tol) {
  // Machin: pi = 16 atan(1/5) - 4 atan(1/239), rounded outward.
  const RatInterval a5 = atan_interval(Rational(1, 5), tol / Rational(32));
  const RatInterval a239 = atan_interval(Rational(1, 239), tol / Rational(8));
  const Rational c16(16), c4(4);
  return {c16 * a5.lb - c4 * a239.ub, c16 * a5.ub - c4 * a239.lb};
}

RatInterval sin_interval(const Rational& x, const Rational& tol) {
  if (x.is_negative() || x > Rational(2))
    throw DomainError("sin_interval argument outside [0, 2]");
  return maclaurin_scaled(x, tol, /*odd=*/true).to_interval();
}

RatInterval cos_interval(const Rational& x, const Rational& tol) {
  if (x.is_negative() || x > Rational(2))
    throw DomainError("cos_interval argument outside [0, 2]");
  return maclaurin_scaled(x, tol, /*odd=*/false).to_interval();
}

CReal pi_name() {
  return CReal([](int k) {
    return pi_interval(Rational::pow2(-k)).midpoint();
  });
}

CReal tan_pi_times(const Rational& t) {
  if (!(Rational(0) < t) || !(t < Rational(1, 2)))
    throw DomainError("tan_pi_times requires 0 < t < 1/2");
  return CReal([t](int k) {
    // Tighten until the enclosure of tan(pi*t) is narrow enough for the
    // 2^(-k) contract. tan is increasing on [0, pi/2), so endpoint
    // quotients of the sin/cos enclosures bound it; the cos lower bound
    // must certify positivity (theta < pi/2) before dividing.
    for (int p = k + 3;; p += 8) {
      const Rational tol = Rational::pow2(-p);
      const RatInterval pi = pi_interval(tol);
      const Rational theta_lo = pi.lb * t;
      const Rational theta_hi = pi.ub * t;
      if (!(theta_hi < pi.lb / Rational(2))) continue;
      const RatInterval sin_lo = sin_interval(theta_lo, tol);
      const RatInterval sin_hi = sin_interval(theta_hi, tol);
      const RatInterval cos_lo = cos_interval(theta_lo, tol);
      const RatInterval cos_hi = cos_interval(theta_hi, tol);
      if (!(Rational(0) < cos_hi.lb)) continue;
      const Rational lo = sin_lo.lb / cos_lo.ub;
      const Rational hi = sin_hi.ub / cos_hi.lb;
      if (hi - lo <= Rational::pow2(-k + 1)) return (lo + hi) / Rational(2);
    }
  });
}

}  // namespace exactnn
