// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: every criterion runs at its stated scale and
// tolerance and prints one PASS/FAIL line. Expected values come from
// independent oracles (naive forward pass, mpfr with directed rounding)
// or are asserted exactly in rational arithmetic.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <random>
#include <set>

#include "exactnn/classify.hpp"
#include "exactnn/errors.hpp"
#include "exactnn/learners.hpp"
#include "exactnn/topology.hpp"
#include "exactnn/trig.hpp"
#include "oracles.hpp"

using exactnn::Activation;
using exactnn::Architecture;
using exactnn::Ball;
using exactnn::BallUnion;
using exactnn::CReal;
using exactnn::CRealVector;
using exactnn::Dataset;
using exactnn::LearnerConfig;
using exactnn::LearnReport;
using exactnn::Network;
using exactnn::Rational;
using exactnn::RatVector;
using exactnn::SemiDecider;
using exactnn::Verdict;

namespace {

void report_line(int criterion, bool pass, const std::string& text) {
  std::printf("[C%d] %s - %s\n", criterion, pass ? "PASS" : "FAIL", text.c_str());
  std::fflush(stdout);
}

Network random_net(std::mt19937_64& rng, const Architecture& arch,
                   const std::vector<Rational>& values) {
  std::vector<Rational> params;
  for (long i = 0; i < arch.free_param_count(); ++i)
    params.push_back(values[rng() % values.size()]);
  return Network::from_params(arch, params, false);
}

std::vector<Rational> integer_values(long bound) {
  std::vector<Rational> v;
  for (long i = -bound; i <= bound; ++i) v.emplace_back(i);
  return v;
}

// Entries with numerator and denominator at most 2.
std::vector<Rational> small_rational_values() {
  return {Rational(0),     Rational(1),  Rational(-1), Rational(2),
          Rational(-2),    Rational(1, 2), Rational(-1, 2)};
}

CRealVector point1(const Rational& x) {
  RatVector v(1);
  v[0] = x;
  return CRealVector::from_rationals(v);
}

}  // namespace

TEST_CASE("C1 exact quantized reconstruction") {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(10001);
  const Architecture arch({2, 3, 1});
  const Activation relu = Activation::relu();
  const auto values = integer_values(3);
  int exact = 0;
  const int runs = 200;
  for (int run = 0; run < runs; ++run) {
    const Network truth = random_net(rng, arch, values);
    Dataset data;
    data.d = 2;
    for (int i = 0; i < 5; ++i) {
      RatVector x(2);
      x[0] = Rational(oracles::random_int(rng, -5, 5));
      x[1] = Rational(oracles::random_int(rng, -5, 5));
      data.pairs.emplace_back(x, realize(truth, relu, x));
    }
    const LearnReport report = quantized_enum_learn(data, arch, LearnerConfig{});
    if (report.budget_exhausted) continue;
    bool all_equal = true;
    for (const auto& [x, y] : data.pairs)
      if (!(oracles::naive_forward_relu(report.learned, x) == y)) all_equal = false;
    if (all_equal) ++exact;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = exact == runs && seconds < 300.0;
  report_line(1, pass,
              std::to_string(exact) + "/" + std::to_string(runs) +
                  " exact agreements, " + std::to_string(seconds) + " s (< 300 s)");
  CHECK(pass);
}

TEST_CASE("C2 parameter-exact encoded reconstruction") {
  std::mt19937_64 rng(10002);
  const Architecture arch({2, 3, 1});
  const Activation relu = Activation::relu();
  const auto values = integer_values(5);
  int exact = 0;
  double worst_ms = 0;
  const int runs = 100;
  for (int run = 0; run < runs; ++run) {
    const Network truth = random_net(rng, arch, values);
    const auto t0 = std::chrono::steady_clock::now();
    const Dataset data = make_encoded_dataset(truth, 3, relu);
    const Network learned = quantized_learn_encode(data, arch);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    worst_ms = std::max(worst_ms, ms);
    if (networks_equal(learned, truth) && ms < 10.0) ++exact;
  }
  const bool pass = exact == runs;
  report_line(2, pass,
              std::to_string(exact) + "/" + std::to_string(runs) +
                  " parameter-exact, worst " + std::to_string(worst_ms) + " ms (< 10 ms)");
  CHECK(pass);
}

TEST_CASE("C3 eps-learning halts with certified residuals") {
  std::mt19937_64 rng(10003);
  const Architecture arch({1, 2, 1});
  const Activation relu = Activation::relu();
  const auto values = small_rational_values();
  const Rational eps = Rational::pow2(-4);
  int good = 0;
  const int runs = 50;
  for (int run = 0; run < runs; ++run) {
    const Network truth = random_net(rng, arch, values);
    Dataset data;
    data.d = 1;
    for (int i = 0; i < 4; ++i) {
      RatVector x(1);
      x[0] = values[rng() % values.size()];
      data.pairs.emplace_back(x, realize(truth, relu, x));
    }
    LearnerConfig cfg;
    cfg.epsilon = eps;
    cfg.max_steps = 1000000;
    const LearnReport report = enum_learn(data, arch, cfg);
    if (report.budget_exhausted || report.steps > 1000000) continue;
    bool residuals_ok = true;
    for (const auto& [x, y] : data.pairs)
      if (!(abs(oracles::naive_forward_relu(report.learned, x) - y) < eps))
        residuals_ok = false;
    if (residuals_ok) ++good;
  }
  const bool pass = good == runs;
  report_line(3, pass,
              std::to_string(good) + "/" + std::to_string(runs) +
                  " runs with all residuals < 2^-4 within 10^6 steps");
  CHECK(pass);
}

TEST_CASE("C4 psi generalization radius") {
  std::mt19937_64 rng(10004);
  const Architecture arch({1, 2, 1});
  const Activation relu = Activation::relu();
  const auto values = small_rational_values();  // scaling norm <= 2 = A_max
  const Rational eps(1, 4);
  int good = 0;
  const int runs = 50;
  for (int run = 0; run < runs; ++run) {
    const Network truth = random_net(rng, arch, values);
    Dataset data;
    data.d = 1;
    for (int i = 0; i < 3; ++i) {
      RatVector x(1);
      x[0] = values[rng() % values.size()];
      data.pairs.emplace_back(x, realize(truth, relu, x));
    }
    LearnerConfig cfg;
    cfg.epsilon = eps;
    cfg.a_max = 2;
    cfg.max_steps = 1000000;
    const LearnReport report = lipschitz_enum_learn(data, arch, cfg);
    if (report.budget_exhausted || !report.psi_radius ||
        !(*report.psi_radius > Rational(0)))
      continue;
    // 51 >= 50 sampled points of X^Phi_psi, labeled by the truth.
    const Dataset samples = sample_generalization_ball(
        truth, relu, data, *report.psi_radius, 17, 10004 + static_cast<unsigned>(run));
    bool all_close = true;
    for (const auto& [x, y] : samples.pairs)
      if (!(abs(realize(report.learned, relu, x) - y) < eps)) all_close = false;
    if (all_close) ++good;
  }
  const bool pass = good == runs;
  report_line(4, pass,
              std::to_string(good) + "/" + std::to_string(runs) +
                  " runs: psi > 0 and 51 sampled residuals < 1/4, zero violations");
  CHECK(pass);
}

TEST_CASE("C5 Cauchy-name invariant and oracle containment") {
  const CReal sqrt2 = exactnn::creal_sqrt(Rational(2));
  const CReal sqrt3 = exactnn::creal_sqrt(Rational(3));
  const CReal tan38 = exactnn::tan_pi_times(Rational(3, 8));
  const std::vector<CReal> names = {
      CReal::from_rational(Rational(-7, 3)),
      CReal::from_rational(Rational(0)),
      sqrt2,
      sqrt2 + sqrt3,
      sqrt2 - sqrt3,
      sqrt2 * sqrt3,
      -sqrt2,
      abs(sqrt2 - sqrt3),
      exactnn::pi_name(),
      tan38,
  };
  long violations = 0;
  for (const CReal& x : names)
    for (int k = 0; k <= 64; ++k)
      for (int k2 = k; k2 <= 64; ++k2)
        if (!(abs(x.approx(k) - x.approx(k2)) <=
              Rational::pow2(-k) + Rational::pow2(-k2)))
          ++violations;

  // Containment against mpfr with directed rounding at 2^-48.
  const Rational slack = Rational::pow2(-48);
  const auto s2 = oracles::mpfr_sqrt_bracket(2, 256);
  bool contained = sqrt2.approx(48) >= s2.lower - slack &&
                   sqrt2.approx(48) <= s2.upper + slack;
  const auto t38 = oracles::mpfr_tan_pi_bracket(3, 8, 256);
  contained = contained && tan38.approx(48) >= t38.lower - slack &&
              tan38.approx(48) <= t38.upper + slack;

  const bool pass = violations == 0 && contained;
  report_line(5, pass,
              "pairwise |approx(k)-approx(k')| <= 2^-k + 2^-k' for k,k' <= 64 (" +
                  std::to_string(violations) + " violations); sqrt2/tan names inside " +
                  "the mpfr brackets at 2^-48");
  CHECK(pass);
}

TEST_CASE("C6 semi-decider laws") {
  std::mt19937_64 rng(10006);
  long violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const int d = 1 + static_cast<int>(rng() % 3);
    std::vector<Ball> balls;
    const int nballs = 1 + static_cast<int>(rng() % 3);
    for (int b = 0; b < nballs; ++b) {
      RatVector c(d);
      for (int j = 0; j < d; ++j) c[j] = oracles::random_rational(rng, 4, 4);
      balls.push_back(Ball{c, abs(oracles::random_rational(rng, 3, 3)) + Rational(1, 4)});
    }
    const BallUnion u(balls);
    const SemiDecider sd = ball_union_semidecider(u);
    RatVector x(d);
    for (int j = 0; j < d; ++j) x[j] = oracles::random_rational(rng, 5, 4);
    const CRealVector p = CRealVector::from_rationals(x);
    bool inside = false;
    for (const Ball& b : balls)
      if (exactnn::squared_norm(x - b.center) < b.radius * b.radius) inside = true;
    const int fuel = 1 + static_cast<int>(rng() % 24);
    const Verdict v = sd.query(p, fuel);
    if (v == Verdict::Reject) ++violations;
    if (v == Verdict::Accept) {
      if (!inside) ++violations;  // soundness
      const int more = fuel + 1 + static_cast<int>(rng() % 8);
      if (sd.query(p, more) != Verdict::Accept) ++violations;  // monotonicity
    }
  }

  int completed = 0;
  for (int i = 0; i < 100; ++i) {
    const int d = 1 + static_cast<int>(rng() % 2);
    RatVector c(d);
    for (int j = 0; j < d; ++j) c[j] = oracles::random_rational(rng, 3, 3);
    const Rational r = abs(oracles::random_rational(rng, 2, 3)) + Rational(1, 8);
    RatVector x = c;
    for (int j = 0; j < d; ++j) x[j] += r / Rational(4) * oracles::random_rational(rng, 1, 2);
    const SemiDecider sd = ball_union_semidecider(BallUnion({Ball{c, r}}));
    for (int fuel = 1; fuel <= 128; fuel *= 2)
      if (sd.query(CRealVector::from_rationals(x), fuel) == Verdict::Accept) {
        ++completed;
        break;
      }
  }

  const bool pass = violations == 0 && completed == 100;
  report_line(6, pass,
              "1000 law triples with " + std::to_string(violations) +
                  " violations; " + std::to_string(completed) +
                  "/100 interior points accepted at finite fuel");
  CHECK(pass);
}

TEST_CASE("C7 topology witness table") {
  bool pass = true;
  Rational prev_sup, prev_lip, prev_bound;
  for (int k = 1; k <= 12; ++k) {
    const exactnn::SpikeFamilyMember m = exactnn::build_spike(k);
    const Rational bound = exactnn::scaling_norm_lower_bound(m);
    pass = pass && m.exact_sup == Rational::pow2(-k);
    pass = pass && m.exact_lip == Rational::pow2(k + 1);
    if (k > 1) {
      pass = pass && m.exact_sup < prev_sup;
      pass = pass && m.exact_lip > prev_lip;
      pass = pass && bound > prev_bound;
    }
    prev_sup = m.exact_sup;
    prev_lip = m.exact_lip;
    prev_bound = bound;
  }
  report_line(7, pass,
              "k = 1..12: sup = 2^-k strictly down, Lip = 2^(k+1) strictly up, "
              "scaling lower bound strictly up (exact)");
  CHECK(pass);
}

TEST_CASE("C8 exit-flag worked example") {
  const SemiDecider half = exactnn::exit_flag_semidecider(Rational(1, 2));
  bool pass = true;
  for (const Rational& x : {Rational(2), Rational(-2), Rational(3, 2), Rational(-3, 2)})
    pass = pass && half.query(point1(x), 32) == Verdict::Accept;
  for (const Rational& x :
       {Rational(1, 2), Rational(-1, 2), Rational(0), Rational(1), Rational(-1)})
    pass = pass && half.query(point1(x), 256) == Verdict::Unknown;

  // eps = 1/4: x = 3 accepted through the tan(3pi/8) upper bound, and that
  // bound really does sit above the true threshold (mpfr check).
  const SemiDecider quarter = exactnn::exit_flag_semidecider(Rational(1, 4));
  pass = pass && quarter.query(point1(Rational(3)), 64) == Verdict::Accept;
  const Rational ub = exactnn::exit_flag_threshold(Rational(1, 4)).approx(48) +
                      Rational::pow2(-48);
  const auto bracket = oracles::mpfr_tan_pi_bracket(3, 8, 256);
  pass = pass && ub >= bracket.lower && Rational(3) > ub;

  report_line(8, pass,
              "eps=1/2: {+-2, +-3/2} accepted at fuel 32, {0, +-1/2, +-1} unknown at "
              "fuel 256; eps=1/4: 3 accepted via the certified tan(3pi/8) bound");
  CHECK(pass);
}

TEST_CASE("C9 finite-domain classifier replay") {
  std::mt19937_64 rng(10009);
  std::set<exactnn::IntVector> keys;
  std::vector<std::pair<exactnn::IntVector, int>> table;
  while (table.size() < 10000) {
    exactnn::IntVector key = {oracles::random_int(rng, -20, 20),
                              oracles::random_int(rng, -20, 20),
                              oracles::random_int(rng, -20, 20)};
    if (!keys.insert(key).second) continue;
    table.emplace_back(key, 1 + static_cast<int>(rng() % 7));
  }
  const exactnn::FiniteClassifier classifier(table);
  long agree = 0;
  for (const auto& [key, cls] : table)
    if (classifier.classify(key) == cls) ++agree;

  int covered_errors = 0;
  for (int i = 0; i < 100; ++i) {
    exactnn::IntVector outside = {oracles::random_int(rng, 21, 100),
                                  oracles::random_int(rng, -100, 100),
                                  oracles::random_int(rng, -100, 100)};
    try {
      classifier.classify(outside);
    } catch (const exactnn::DomainError&) {
      ++covered_errors;
    }
  }
  const bool pass = agree == 10000 && covered_errors == 100;
  report_line(9, pass,
              std::to_string(agree) + "/10000 replays agree; " +
                  std::to_string(covered_errors) + "/100 out-of-domain queries raise "
                  "DomainError");
  CHECK(pass);
}
