// SPDX-License-Identifier: Apache-2.0

#include "exactnn/learners.hpp"

#include <map>

#include "exactnn/errors.hpp"

namespace exactnn {

namespace {

void validate_dataset_shape(const Dataset& dataset, const Architecture& arch) {
  if (dataset.d != arch.input_dim())
    throw ShapeMismatchError("dataset dimension does not match architecture");
  for (const auto& [x, y] : dataset.pairs) {
    (void)y;
    if (x.size() != dataset.d)
      throw ShapeMismatchError("dataset pair dimension mismatch");
  }
}

// Repeated inputs must carry labels no further apart than the learner can
// reconcile, else the scan provably never terminates.
void check_consistency(const Dataset& dataset, const Rational& label_gap,
                       bool exact) {
  std::map<RatVector, Rational, RatVectorLess> seen;
  for (const auto& [x, y] : dataset.pairs) {
    auto [it, inserted] = seen.emplace(x, y);
    if (inserted) continue;
    const bool bad = exact ? !(it->second == y) : abs(it->second - y) >= label_gap;
    if (bad)
      throw InconsistentDataError("repeated input with conflicting labels at x = " +
                                  x[0].to_string());
  }
}

// Forward pass straight off the flat free-parameter vector; avoids
// building a Network per enumeration candidate.
Rational realize_params(const Architecture& arch, const Activation& act,
                        const std::vector<Rational>& params, const RatVector& x,
                        std::vector<Rational>& in, std::vector<Rational>& out) {
  in.assign(x.data(), x.data() + x.size());
  size_t pos = 0;
  const int depth = arch.depth();
  for (int l = 1; l <= depth; ++l) {
    const size_t rows = static_cast<size_t>(arch.dims[static_cast<size_t>(l)]);
    const size_t cols = static_cast<size_t>(arch.dims[static_cast<size_t>(l) - 1]);
    out.assign(rows, Rational(0));
    for (size_t i = 0; i < rows; ++i) {
      Rational acc = 0;
      for (size_t j = 0; j < cols; ++j) acc += params[pos++] * in[j];
      out[i] = std::move(acc);
    }
    if (l < depth) {
      for (size_t i = 0; i < rows; ++i) out[i] = act.eval(out[i] + params[pos + i]);
      pos += rows;
    }
    std::swap(in, out);
  }
  return in[0];
}

struct ScanResult {
  Network learned;
  std::uint64_t steps = 0;
  bool exhausted = false;
};

// Shared enumeration scan: first network whose residuals at every pair
// stay strictly below `tolerance` (tolerance 0 means exact agreement).
ScanResult scan_first_fit(const Dataset& dataset, const Architecture& arch,
                          const Activation& act, EnumMode mode,
                          const Rational& tolerance,
                          const std::optional<std::uint64_t>& max_steps) {
  EnumerationCursor cursor(arch, mode);
  std::vector<Rational> in, out;
  const bool exact = tolerance.is_zero();
  for (std::uint64_t step = 1;; ++step) {
    if (max_steps && step > *max_steps)
      return {Network::zero(arch), *max_steps, true};
    const std::vector<Rational> params = cursor.current_params();
    bool ok = true;
    for (const auto& [x, y] : dataset.pairs) {
      const Rational value = realize_params(arch, act, params, x, in, out);
      if (exact ? !(value == y) : !(abs(value - y) < tolerance)) {
        ok = false;
        break;
      }
    }
    if (ok) return {Network::from_params(arch, params, false), step, false};
    cursor = cursor.advanced();
  }
}

}  // namespace

LearnReport enum_learn(const Dataset& dataset, const Architecture& arch,
                       const LearnerConfig& cfg) {
  const Activation act = Activation::by_name(cfg.activation);
  if (!act.exact_on_rationals())
    throw InexactActivationError("enum_learn needs a rational-exact activation");
  if (!(cfg.epsilon > Rational(0))) throw DomainError("epsilon must be positive");
  validate_dataset_shape(dataset, arch);
  check_consistency(dataset, cfg.epsilon, /*exact=*/false);

  // The acceptance test runs at eps/2, mirroring the margin that makes a
  // dense enumeration provably terminate; the public bound is then < eps.
  const ScanResult r = scan_first_fit(dataset, arch, act, EnumMode::Rational,
                                      cfg.epsilon / Rational(2), cfg.max_steps);
  LearnReport report;
  report.learned = r.learned;
  report.steps = r.steps;
  report.epsilon = cfg.epsilon;
  report.budget_exhausted = r.exhausted;
  return report;
}

LearnReport lipschitz_enum_learn(const Dataset& dataset, const Architecture& arch,
                                 const LearnerConfig& cfg) {
  if (cfg.a_max < 1) throw DomainError("a_max must be at least 1");
  LearnReport report = enum_learn(dataset, arch, cfg);
  if (report.budget_exhausted) return report;
  const Activation act = Activation::by_name(cfg.activation);
  const Rational truth_side = lipschitz_bound_worst_case(arch, act, Rational(cfg.a_max));
  const Rational learned_side = lipschitz_bound(report.learned, act);
  report.psi_radius = cfg.epsilon / (Rational(2) * (truth_side + learned_side));
  return report;
}

Dataset make_encoded_dataset(const Network& net, int n, const Activation& act) {
  if (n < 1) throw DomainError("encoded dataset needs n >= 1");
  if (!net.is_integer())
    throw DomainError("encoded datasets are defined for integer networks");
  const int d = net.arch.input_dim();
  std::vector<mpz_class> params;
  for (const Rational& p : net.to_params(true)) params.push_back(p.num());
  Dataset out;
  out.d = d;
  RatVector code = godel_encode(params, d);
  Rational code_label = realize(net, act, code);
  out.pairs.emplace_back(std::move(code), std::move(code_label));
  const RatVector zero = RatVector::Constant(d, Rational(0));
  const Rational zero_label = realize(net, act, zero);
  for (int i = 1; i < n; ++i) out.pairs.emplace_back(zero, zero_label);
  return out;
}

Network quantized_learn_encode(const Dataset& dataset, const Architecture& arch) {
  if (dataset.pairs.empty()) throw DecodeError("encoded dataset is empty");
  if (dataset.d != arch.input_dim())
    throw ShapeMismatchError("dataset dimension does not match architecture");
  const std::vector<mpz_class> ints =
      godel_decode(dataset.pairs.front().first,
                   static_cast<size_t>(arch.param_count()));
  std::vector<Rational> params;
  params.reserve(ints.size());
  for (const mpz_class& v : ints) params.emplace_back(v, 1);
  if (!params.back().is_zero())
    throw DecodeError("decoded parameters carry a nonzero final bias");
  return Network::from_params(arch, params, true);
}

LearnReport quantized_enum_learn(const Dataset& dataset, const Architecture& arch,
                                 const LearnerConfig& cfg) {
  const Activation act = Activation::by_name(cfg.activation);
  if (!act.exact_on_integers())
    throw InexactActivationError(
        "quantized learning needs an integer-exact activation");
  validate_dataset_shape(dataset, arch);
  for (const auto& [x, y] : dataset.pairs) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (!x[i].is_integer()) throw DomainError("quantized learning needs integer inputs");
    if (!y.is_integer()) throw DomainError("quantized learning needs integer labels");
  }
  check_consistency(dataset, Rational(0), /*exact=*/true);

  if (cfg.activation == "relu") {
    if (auto fast = detail::quantized_fast_search(dataset, arch, cfg.max_steps))
      return *fast;
  }
  const ScanResult r = scan_first_fit(dataset, arch, act, EnumMode::Integer,
                                      Rational(0), cfg.max_steps);
  LearnReport report;
  report.learned = r.learned;
  report.steps = r.steps;
  report.budget_exhausted = r.exhausted;
  return report;
}

}  // namespace exactnn
