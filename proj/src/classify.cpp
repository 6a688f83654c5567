// SPDX-License-Identifier: Apache-2.0

#include "exactnn/classify.hpp"

#include <set>

#include "exactnn/errors.hpp"
#include "exactnn/trig.hpp"

namespace exactnn {

BallUnion::BallUnion(std::vector<Ball> balls) : balls_(std::move(balls)) {
  if (balls_.empty()) throw DomainError("finite ball union needs at least one ball");
  for (const Ball& b : balls_)
    if (!(b.radius > Rational(0))) throw DomainError("ball radius must be positive");
}

BallUnion::BallUnion(std::function<Ball(int)> stream) : stream_(std::move(stream)) {}

Ball BallUnion::ball_at(int k) const {
  if (k < 1) throw DomainError("ball index is 1-based");
  if (stream_) {
    Ball b = stream_(k);
    if (!(b.radius > Rational(0))) throw DomainError("ball radius must be positive");
    return b;
  }
  return balls_[static_cast<size_t>(k - 1) % balls_.size()];
}

const std::vector<Ball>* BallUnion::finite_balls() const {
  return stream_ ? nullptr : &balls_;
}

SemiDecider ball_union_semidecider(BallUnion u) {
  return SemiDecider{[u = std::move(u)](const CRealVector& x, int fuel) {
    if (fuel < 1) throw DomainError("fuel must be positive");
    const int d = x.dim();
    for (int p = 1; p <= fuel; ++p) {
      const RatVector q = x.approx(p);
      // ||x - q|| <= 2^(-p) * sqrt(d) componentwise, rounded up.
      const Rational slack = Rational::pow2(-p) * sqrt_ub(Rational(d), static_cast<unsigned>(p));
      for (int k = 1; k <= fuel; ++k) {
        const Ball ball = u.ball_at(k);
        if (ball.center.size() != d)
          throw ShapeMismatchError("ball dimension does not match the query point");
        const Rational dist_ub =
            sqrt_ub(squared_norm(q - ball.center), static_cast<unsigned>(p));
        if (dist_ub + slack < ball.radius) return Verdict::Accept;
      }
    }
    return Verdict::Unknown;
  }};
}

std::optional<int> dovetail_classify(const std::vector<SemiDecider>& classes,
                                     const CRealVector& x, int fuel) {
  if (classes.empty()) throw DomainError("no classes to dovetail");
  if (fuel < 1) throw DomainError("fuel must be positive");
  for (int round = 1; round <= fuel; ++round) {
    int accepted = -1;
    for (size_t i = 0; i < classes.size(); ++i) {
      if (classes[i].query(x, round) != Verdict::Accept) continue;
      if (accepted >= 0)
        throw AmbiguousAcceptError("classes " + std::to_string(accepted + 1) + " and " +
                                   std::to_string(i + 1) + " both accepted");
      accepted = static_cast<int>(i);
    }
    if (accepted >= 0) return accepted + 1;
  }
  return std::nullopt;
}

CReal exit_flag_threshold(const Rational& eps) {
  if (!(Rational(0) < eps) || !(eps < Rational(1)))
    throw DomainError("exit flag needs 0 < eps < 1");
  return tan_pi_times((Rational(1) - eps) / Rational(2));
}

SemiDecider exit_flag_semidecider(const Rational& eps) {
  const CReal threshold = exit_flag_threshold(eps);
  return SemiDecider{[threshold](const CRealVector& x, int fuel) {
    if (x.dim() != 1)
      throw ShapeMismatchError("the sign exit flag is one-dimensional");
    if (fuel < 1) throw DomainError("fuel must be positive");
    for (int p = 1; p <= fuel; ++p) {
      const Rational q = abs(x.components[0].approx(p));
      const Rational r = Rational::pow2(-p);
      // |x| >= |q| - 2^(-p) and x0 <= approx(p) + 2^(-p): a strict gap
      // between the two certifies |x| > x0.
      if (q - r > threshold.approx(p) + r) return Verdict::Accept;
    }
    return Verdict::Unknown;
  }};
}

FiniteClassifier::FiniteClassifier(
    const std::vector<std::pair<IntVector, int>>& table) {
  for (const auto& [key, cls] : table) {
    if (cls < 1) throw DomainError("class labels start at 1");
    if (!table_.emplace(key, cls).second)
      throw DuplicateKeyError("repeated key in classifier table");
  }
}

int FiniteClassifier::classify(const IntVector& x) const {
  const auto it = table_.find(x);
  if (it == table_.end()) throw DomainError("input outside the compiled domain");
  return it->second;
}

SeparationAudit class_separation_audit(
    const std::vector<std::pair<RatVector, int>>& samples,
    const Rational& warn_threshold) {
  std::set<int> labels;
  for (const auto& [x, cls] : samples) {
    (void)x;
    labels.insert(cls);
  }
  if (labels.size() < 2)
    throw InsufficientClassesError("audit needs samples from at least two classes");
  bool have = false;
  Rational best = 0;
  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t j = i + 1; j < samples.size(); ++j) {
      if (samples[i].second == samples[j].second) continue;
      const Rational d2 = squared_norm(samples[i].first - samples[j].first);
      if (!have || d2 < best) {
        best = d2;
        have = true;
      }
    }
  return SeparationAudit{best, best < warn_threshold};
}

}  // namespace exactnn
