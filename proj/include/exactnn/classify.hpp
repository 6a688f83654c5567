// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "exactnn/creal.hpp"
#include "exactnn/linalg.hpp"

namespace exactnn {

/// Three-valued outcome of a fuel-bounded membership query. Semi-deciders
/// are one-sided: they only ever answer Accept or Unknown.
enum class Verdict { Accept, Reject, Unknown };

/// Fuel-indexed acceptance procedure for a subset of R^d. Everything this
/// library constructs is monotone (Accept at fuel t stays Accept for all
/// larger fuel) and sound (Accept only on actual members).
struct SemiDecider {
  std::function<Verdict(const CRealVector&, int)> query;
};

struct Ball {
  RatVector center;
  Rational radius;
};

/// An enumerable union of rational open balls; the canonical form of a
/// semi-decidable open set. Finite unions cycle their list so every fuel
/// level sees the whole set.
class BallUnion {
 public:
  explicit BallUnion(std::vector<Ball> balls);
  explicit BallUnion(std::function<Ball(int)> stream);  // 1-based index

  Ball ball_at(int k) const;

  /// The literal list for finite unions, nullptr for streams.
  const std::vector<Ball>* finite_balls() const;

 private:
  std::vector<Ball> balls_;
  std::function<Ball(int)> stream_;
};

/// Membership semi-decider of the union: fuel t enumerates balls 1..t and
/// precisions 1..t and accepts once some ball certifiably contains the
/// point, i.e. ||approx(x,p) - c||_ub + 2^(-p) * sqrt(d)_ub < r. Boundary
/// points are never accepted; interior points are accepted at some finite
/// fuel.
SemiDecider ball_union_semidecider(BallUnion u);

/// Fair round-robin classification over per-class semi-deciders: round t
/// grants every class fuel t. Returns the 1-based class index as soon as
/// exactly one class accepts, nullopt if the fuel runs out first. Two
/// classes accepting in the same round means the disjointness
/// precondition is violated: AmbiguousAcceptError.
std::optional<int> dovetail_classify(const std::vector<SemiDecider>& classes,
                                     const CRealVector& x, int fuel);

/// Semi-decider of the set where (2/pi)*arctan approximates the sign
/// function to within eps: |x| > x0(eps) = tan(pi*(1-eps)/2). Acceptance
/// uses a shrinking rational upper bound on x0, so it is conservative and
/// never admits the boundary.
SemiDecider exit_flag_semidecider(const Rational& eps);

/// The threshold x0(eps) itself as a computable-real name (exposed for
/// verification against independent oracles).
CReal exit_flag_threshold(const Rational& eps);

using IntVector = std::vector<long>;

/// Total lookup classifier over a finite integer domain.
class FiniteClassifier {
 public:
  /// Compiles the table; DuplicateKeyError on repeated keys, DomainError
  /// on class labels below 1.
  explicit FiniteClassifier(const std::vector<std::pair<IntVector, int>>& table);

  /// Exact lookup; DomainError outside the compiled domain.
  int classify(const IntVector& x) const;

  size_t size() const { return table_.size(); }

 private:
  std::map<IntVector, int> table_;
};

struct SeparationAudit {
  Rational min_squared_distance;
  bool below_threshold = false;
};

/// Exact minimum squared Euclidean distance between samples of distinct
/// classes, flagged when it falls below the given threshold. Distances
/// stay squared so the audit never leaves the rationals.
SeparationAudit class_separation_audit(
    const std::vector<std::pair<RatVector, int>>& samples,
    const Rational& warn_threshold);

}  // namespace exactnn
