// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "exactnn/enumeration.hpp"
#include "exactnn/network.hpp"

namespace exactnn {

struct LearnerConfig {
  Rational epsilon = Rational(1);         // target residual bound, > 0
  long a_max = 1;                         // admissible-class bound, >= 1
  std::optional<std::uint64_t> max_steps; // candidate budget; absent = unbounded
  std::string activation = "relu";
};

/// Outcome of a learner run. When budget_exhausted is false the learned
/// network satisfies the producing operation's residual contract; when it
/// is true no claim is made and `learned` is the zero network.
struct LearnReport {
  Network learned;
  std::uint64_t steps = 0;
  Rational epsilon = Rational(0);      // 0 for the exact modes
  std::optional<Rational> psi_radius;  // present iff lipschitz_enum_learn
  bool budget_exhausted = false;
};

/// Enumeration learner: returns the first network in rational enumeration
/// order whose residuals pass the internal eps/2 test, which makes every
/// published residual strictly below eps. Terminates within the shell of
/// any rational network generating the data.
LearnReport enum_learn(const Dataset& dataset, const Architecture& arch,
                       const LearnerConfig& cfg);

/// enum_learn plus the certified generalization radius
///   psi = eps / (2 * (LipUB(a_max) + lipschitz_bound(learned))),
/// where LipUB is the worst-case bound over the admissible class. Any
/// admissible ground truth generating the data stays within eps of the
/// learned network on every ball of radius psi around a training input.
LearnReport lipschitz_enum_learn(const Dataset& dataset, const Architecture& arch,
                                 const LearnerConfig& cfg);

/// Builds the dataset that encodes an integer network into its own data:
/// the first pair is (godel_encode(params), realization there) and the
/// n-1 fillers are the zero input with its true label, so the result is a
/// legitimate size-n dataset generated by `net`.
Dataset make_encoded_dataset(const Network& net, int n, const Activation& act);

/// Reads the parameters back out of an encoded dataset: parameter-exact,
/// hence realization-exact on the whole integer domain. DecodeError when
/// the first input is not a well-formed code for the architecture.
Network quantized_learn_encode(const Dataset& dataset, const Architecture& arch);

/// Returns the first integer network in enumeration order that agrees
/// exactly with every dataset pair. Requires integer data and an
/// activation that is exact on integers.
LearnReport quantized_enum_learn(const Dataset& dataset, const Architecture& arch,
                                 const LearnerConfig& cfg);

namespace detail {

/// Order-equivalent accelerated scan for single-hidden-layer integer
/// networks: walks (A_1, b_1) prefixes lexicographically and solves the
/// linear system the output row must satisfy instead of enumerating it.
/// Returns nullopt when the instance does not fit the specialization
/// (depth != 2, non-relu activation, or magnitudes beyond the overflow
/// guards), in which case the caller falls back to the plain scan.
std::optional<LearnReport> quantized_fast_search(const Dataset& dataset,
                                                 const Architecture& arch,
                                                 const std::optional<std::uint64_t>& max_steps);

}  // namespace detail

}  // namespace exactnn
