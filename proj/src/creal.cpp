// SPDX-License-Identifier: Apache-2.0

#include "exactnn/creal.hpp"

#include <utility>

#include "exactnn/errors.hpp"

namespace exactnn {

CReal::CReal(ApproxFn fn) : state_(std::make_shared<State>()) {
  state_->fn = std::move(fn);
}

CReal CReal::from_rational(Rational q) {
  return CReal([q = std::move(q)](int) { return q; });
}

Rational CReal::approx(int k) const {
  if (k < 0) k = 0;
  std::lock_guard<std::mutex> lock(state_->mutex);
  auto it = state_->memo.find(k);
  if (it != state_->memo.end()) return it->second;
  Rational value = state_->fn(k);
  state_->memo.emplace(k, value);
  return value;
}

namespace {

// max(0, ceil_log2(|approx(0)| + 2)), so that 2^mag >= |x| + 1 and
// 2^mag >= |approx(k)| + 1 for every k.
long magnitude_exponent(const CReal& x) {
  const Rational bound = abs(x.approx(0)) + Rational(2);
  return std::max(0L, ceil_log2_ub(bound));
}

}  // namespace

CReal operator+(const CReal& a, const CReal& b) {
  return CReal([a, b](int k) { return a.approx(k + 1) + b.approx(k + 1); });
}

CReal operator-(const CReal& a, const CReal& b) {
  return CReal([a, b](int k) { return a.approx(k + 1) - b.approx(k + 1); });
}

CReal operator-(const CReal& a) {
  return CReal([a](int k) { return -a.approx(k); });
}

CReal operator*(const CReal& a, const CReal& b) {
  // |ab - pq| <= |a||b - q| + |q||a - p|
  //           <= 2^ma * 2^(-k-2-ma) + 2^mb * 2^(-k-2-mb) = 2^(-k-1).
  return CReal([a, b](int k) {
    const long ma = magnitude_exponent(a);
    const long mb = magnitude_exponent(b);
    const Rational p = a.approx(static_cast<int>(k + 2 + mb));
    const Rational q = b.approx(static_cast<int>(k + 2 + ma));
    return p * q;
  });
}

CReal abs(const CReal& a) {
  return CReal([a](int k) { return abs(a.approx(k)); });
}

CReal creal_sqrt(const Rational& q) {
  if (q.is_negative()) throw DomainError("creal_sqrt of a negative rational");
  return CReal([q](int k) { return sqrt_lb(q, static_cast<unsigned>(k)); });
}

Ordering creal_compare(const CReal& a, const CReal& b, int fuel) {
  if (fuel < 1) throw DomainError("creal_compare requires fuel >= 1");
  for (int k = 0; k <= fuel; ++k) {
    const Rational r = Rational::pow2(-k);
    const Rational qa = a.approx(k);
    const Rational qb = b.approx(k);
    if (qa + r < qb - r) return Ordering::Less;
    if (qb + r < qa - r) return Ordering::Greater;
  }
  return Ordering::Unknown;
}

RatVector CRealVector::approx(int k) const {
  RatVector out(dim());
  for (int i = 0; i < dim(); ++i) out[i] = components[static_cast<size_t>(i)].approx(k);
  return out;
}

CRealVector CRealVector::from_rationals(const RatVector& v) {
  CRealVector out;
  out.components.reserve(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.components.push_back(CReal::from_rational(v[i]));
  return out;
}

}  // namespace exactnn
