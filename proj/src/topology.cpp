// SPDX-License-Identifier: Apache-2.0

#include "exactnn/topology.hpp"

#include "exactnn/errors.hpp"

namespace exactnn {

SpikeFamilyMember build_spike(int k) {
  if (k < 1) throw DomainError("spike index starts at 1");
  const Rational height = Rational::pow2(-k);
  const Rational half_width = Rational::pow2(-2 * k - 1);
  const Rational slope = Rational::pow2(k + 1);  // height / half_width
  const Rational center(1, 2);

  Layer hidden;
  hidden.weights = RatMatrix::Constant(3, 1, Rational(1));
  hidden.bias = RatVector(3);
  hidden.bias[0] = -(center - half_width);
  hidden.bias[1] = -center;
  hidden.bias[2] = -(center + half_width);

  Layer out;
  out.weights = RatMatrix(1, 3);
  out.weights(0, 0) = slope;
  out.weights(0, 1) = Rational(-2) * slope;
  out.weights(0, 2) = slope;
  out.bias = RatVector::Constant(1, Rational(0));

  SpikeFamilyMember member;
  member.k = k;
  member.network = Network(Architecture({1, 3, 1}), {std::move(hidden), std::move(out)});
  member.exact_sup = height;
  member.exact_lip = slope;
  return member;
}

Rational scaling_norm_lower_bound(const SpikeFamilyMember& member) {
  constexpr unsigned kSqrtPrecision = 16;
  const Architecture& arch = member.network.arch;
  // ReLU family: Lip(sigma) = 1 drops out of the denominator.
  Rational denom = 1;
  for (int l = 1; l <= arch.depth(); ++l) {
    const long rows = arch.dims[static_cast<size_t>(l)];
    const long cols = arch.dims[static_cast<size_t>(l) - 1];
    denom *= sqrt_ub(Rational(rows * cols), kSqrtPrecision);
  }
  const Rational product_bound = member.exact_lip / denom;
  // Depth 2: (max_l ||A_l||)^2 >= prod_l ||A_l|| >= product_bound.
  return sqrt_lb(product_bound, kSqrtPrecision);
}

}  // namespace exactnn
