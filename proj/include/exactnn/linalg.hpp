// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include "exactnn/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<exactnn::Rational> : GenericNumTraits<exactnn::Rational> {
  typedef exactnn::Rational Real;
  typedef exactnn::Rational NonInteger;
  typedef exactnn::Rational Nested;
  typedef exactnn::Rational Literal;

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100,
  };
};

}  // namespace Eigen

namespace exactnn {

using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

inline Rational squared_norm(const RatVector& v) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += v[i] * v[i];
  return s;
}

inline Rational max_abs_coeff(const RatMatrix& m) {
  Rational best = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      Rational a = abs(m(i, j));
      if (a > best) best = a;
    }
  return best;
}

/// Strict lexicographic order on equally sized vectors; used as the map
/// key order wherever exact vectors index data.
inline bool lex_less(const RatVector& a, const RatVector& b) {
  for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

struct RatVectorLess {
  bool operator()(const RatVector& a, const RatVector& b) const {
    return lex_less(a, b);
  }
};

inline bool vec_equal(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

}  // namespace exactnn
