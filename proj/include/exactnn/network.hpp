// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exactnn/creal.hpp"
#include "exactnn/linalg.hpp"
#include "exactnn/rational.hpp"

namespace exactnn {

/// Layer widths (N_0, ..., N_L). Depth L >= 1, all widths positive, and
/// the output width N_L is fixed to 1.
struct Architecture {
  std::vector<int> dims;

  Architecture() = default;
  explicit Architecture(std::vector<int> d);

  int depth() const { return static_cast<int>(dims.size()) - 1; }
  int input_dim() const { return dims.front(); }

  /// Total parameter count sum_l (N_l * N_{l-1} + N_l), final bias
  /// included even though it is pinned to zero.
  long param_count() const;

  /// param_count() minus the final bias entries; this is the length of
  /// the vectors the enumerations range over.
  long free_param_count() const { return param_count() - dims.back(); }

  friend bool operator==(const Architecture& a, const Architecture& b) {
    return a.dims == b.dims;
  }
};

/// Scalar activation with the exactness/Lipschitz metadata the learners
/// and deciders rely on. The shipped set is piecewise linear, hence
/// exact on rationals; smooth activations would enter only through
/// eval_interval.
class Activation {
 public:
  static Activation relu();
  static Activation leaky_relu(Rational slope);
  static Activation hard_sigmoid();

  /// Parses "relu", "leakyrelu:p/q", "hardsigmoid".
  static Activation by_name(const std::string& name);

  const std::string& name() const { return name_; }
  bool exact_on_rationals() const { return true; }
  /// Whether integer inputs give integer outputs (quantized learners
  /// require this of their activation).
  bool exact_on_integers() const { return exact_on_integers_; }
  const Rational& lipschitz_constant() const { return lipschitz_; }

  Rational eval(const Rational& x) const;

  /// Approximates sigma(center) within 2^(-k); the caller accounts the
  /// input uncertainty as lipschitz_constant() * radius on top. Exact
  /// activations ignore k and return sigma(center).
  Rational eval_interval(const Rational& center, const Rational& radius, int k) const;

 private:
  enum class Kind { Relu, LeakyRelu, HardSigmoid };

  Activation(Kind kind, std::string name, Rational slope, Rational lipschitz,
             bool exact_on_integers);

  Kind kind_;
  std::string name_;
  Rational slope_;
  Rational lipschitz_;
  bool exact_on_integers_;
};

struct Layer {
  RatMatrix weights;
  RatVector bias;
};

/// Exact-parameter feedforward network. Shapes are validated against the
/// architecture on construction and the final bias is required to be
/// identically zero. A network whose entries all have denominator 1 is
/// an integer network (is_integer()).
struct Network {
  Architecture arch;
  std::vector<Layer> layers;

  Network() = default;
  Network(Architecture a, std::vector<Layer> ls);

  static Network zero(const Architecture& a);

  bool is_integer() const;

  /// Flattening is layer-major, row-major, weights before biases. The
  /// final (zero) bias is appended only when include_final_bias is set;
  /// enumeration vectors omit it, pairing-encoded vectors keep it.
  std::vector<Rational> to_params(bool include_final_bias) const;
  static Network from_params(const Architecture& a, const std::vector<Rational>& params,
                             bool include_final_bias);
};

bool networks_equal(const Network& a, const Network& b);

/// Exact realization T_L . sigma . ... . sigma . T_1 at a rational point.
Rational realize(const Network& net, const Activation& act, const RatVector& x);

/// Realization at a computable-real point: the returned rational is
/// within 2^(-k) of the exact value. The per-layer radius factor is
/// |A_L| . Lip . |A_{L-1}| ... |A_1|, so querying the input at precision
/// p with factor <= 2^(p-k) certifies the budget.
Rational realize_creal(const Network& net, const Activation& act, const CRealVector& x,
                       int k);

/// max over layers of the max absolute weight entry; biases excluded.
Rational scaling_norm(const Network& net);

/// Certified upper bound on the Lipschitz constant of the realization
/// w.r.t. the Euclidean norm:
///   Lip(sigma)^(L-1) * prod_l sqrt(N_l * N_{l-1})_ub * ||A_l||_max,
/// with square roots rounded up at 2^(-16).
Rational lipschitz_bound(const Network& net, const Activation& act);

/// The same bound maximized over the admissible class
/// max_l ||A_l||_max <= a_max; this is the ground-truth side of the
/// generalization radius.
Rational lipschitz_bound_worst_case(const Architecture& arch, const Activation& act,
                                    const Rational& a_max);

struct Dataset {
  int d = 0;
  std::vector<std::pair<RatVector, Rational>> pairs;
};

/// Deterministically samples `samples_per_point` rational points inside
/// the Euclidean ball of the given radius around every dataset input and
/// labels them with the exact realization of `net`.
Dataset sample_generalization_ball(const Network& net, const Activation& act,
                                   const Dataset& dataset, const Rational& radius,
                                   int samples_per_point, std::uint64_t seed);

}  // namespace exactnn
