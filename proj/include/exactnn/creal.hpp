// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "exactnn/linalg.hpp"
#include "exactnn/rational.hpp"

namespace exactnn {

/// A computable real: an approximation procedure where approx(k) is a
/// rational within 2^(-k) of the represented value, for every k >= 0.
/// Names are stored already rapid, so the error budget at index k is
/// always exactly 2^(-k).
///
/// Values are immutable; approx results are memoized per index under a
/// lock, so the same index always yields the identical rational and
/// instances can be shared across threads.
class CReal {
 public:
  using ApproxFn = std::function<Rational(int)>;

  /// Wraps a procedure that already satisfies the 2^(-k) contract.
  explicit CReal(ApproxFn fn);

  static CReal from_rational(Rational q);

  /// Negative indices are clamped to 0 (the contract only weakens there).
  Rational approx(int k) const;

 private:
  struct State {
    ApproxFn fn;
    mutable std::mutex mutex;
    mutable std::map<int, Rational> memo;
  };
  std::shared_ptr<State> state_;
};

// Arithmetic closes over operand names with the precision offsets needed
// to keep the result within 2^(-k):
//   a+b, a-b   query both operands at k+1;
//   a*b        queries a at k+2+mag(b) and b at k+2+mag(a), where
//              mag(x) = max(0, ceil_log2(|approx_x(0)| + 2)) bounds the
//              true magnitude via |x| <= |approx_x(0)| + 1.
// Division is deliberately absent: nothing in the library needs it and
// it is not total near zero.
CReal operator+(const CReal& a, const CReal& b);
CReal operator-(const CReal& a, const CReal& b);
CReal operator-(const CReal& a);
CReal operator*(const CReal& a, const CReal& b);
CReal abs(const CReal& a);

/// Name for sqrt(q), q >= 0: approx(k) = floor(sqrt(q * 4^k)) / 2^k
/// computed on integers, which is within 2^(-k) below the true root.
CReal creal_sqrt(const Rational& q);

enum class Ordering { Less, Greater, Unknown };

/// Fuel-bounded certified comparison. Scans precisions k = 0..fuel and
/// returns Less/Greater as soon as the intervals approx +- 2^(-k) are
/// strictly disjoint; Unknown if no precision up to fuel separates them.
/// A verdict certified at fuel t is returned for every fuel >= t.
Ordering creal_compare(const CReal& a, const CReal& b, int fuel);

/// A point of R^d with computable-real coordinates.
struct CRealVector {
  std::vector<CReal> components;

  int dim() const { return static_cast<int>(components.size()); }

  /// Componentwise approximation: every coordinate within 2^(-k).
  RatVector approx(int k) const;

  static CRealVector from_rationals(const RatVector& v);
};

}  // namespace exactnn
