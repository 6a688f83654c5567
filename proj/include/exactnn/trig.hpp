// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "exactnn/creal.hpp"
#include "exactnn/rational.hpp"

namespace exactnn {

/// Closed rational interval certified to contain a real value.
struct RatInterval {
  Rational lb;
  Rational ub;

  Rational width() const { return ub - lb; }
  Rational midpoint() const { return (lb + ub) / Rational(2); }
};

/// Encloses arctan(x) for rational 0 < x < 1 with width <= tol, by the
/// alternating Maclaurin series (terms strictly decrease for x < 1, so
/// consecutive partial sums bracket the value).
RatInterval atan_interval(const Rational& x, const Rational& tol);

/// Encloses pi with width <= tol via 16*arctan(1/5) - 4*arctan(1/239).
RatInterval pi_interval(const Rational& tol);

/// Encloses sin(x) / cos(x) for rational 0 <= x <= 2 with width <= tol.
RatInterval sin_interval(const Rational& x, const Rational& tol);
RatInterval cos_interval(const Rational& x, const Rational& tol);

/// pi as a computable-real name.
CReal pi_name();

/// tan(pi * t) as a computable-real name, for rational 0 < t < 1/2.
/// This is the decision threshold x0(eps) = tan(pi*(1-eps)/2) of the
/// sign-function exit flag, with t = (1-eps)/2.
CReal tan_pi_times(const Rational& t);

}  // namespace exactnn
