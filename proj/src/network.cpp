// SPDX-License-Identifier: Apache-2.0

#include "exactnn/network.hpp"

#include <random>
#include <utility>

#include "exactnn/errors.hpp"

namespace exactnn {

namespace {
constexpr unsigned kSqrtPrecision = 16;
}

Architecture::Architecture(std::vector<int> d) : dims(std::move(d)) {
  if (dims.size() < 2) throw ShapeMismatchError("architecture needs depth >= 1");
  for (int n : dims)
    if (n < 1) throw ShapeMismatchError("architecture widths must be positive");
  if (dims.back() != 1) throw ShapeMismatchError("output width must be 1");
}

long Architecture::param_count() const {
  long total = 0;
  for (size_t l = 1; l < dims.size(); ++l)
    total += static_cast<long>(dims[l]) * dims[l - 1] + dims[l];
  return total;
}

Activation::Activation(Kind kind, std::string name, Rational slope, Rational lipschitz,
                       bool exact_on_integers)
    : kind_(kind),
      name_(std::move(name)),
      slope_(std::move(slope)),
      lipschitz_(std::move(lipschitz)),
      exact_on_integers_(exact_on_integers) {}

Activation Activation::relu() {
  return Activation(Kind::Relu, "relu", Rational(0), Rational(1), true);
}

Activation Activation::leaky_relu(Rational slope) {
  const Rational lip = std::max(Rational(1), abs(slope));
  const bool exact_int = slope.is_integer();
  return Activation(Kind::LeakyRelu, "leakyrelu:" + slope.to_string(), std::move(slope),
                    lip, exact_int);
}

Activation Activation::hard_sigmoid() {
  return Activation(Kind::HardSigmoid, "hardsigmoid", Rational(0), Rational(1, 4), false);
}

Activation Activation::by_name(const std::string& name) {
  if (name == "relu") return relu();
  if (name == "hardsigmoid") return hard_sigmoid();
  const std::string prefix = "leakyrelu:";
  if (name.rfind(prefix, 0) == 0)
    return leaky_relu(Rational::parse(name.substr(prefix.size())));
  throw ParseError("unknown activation '" + name + "'");
}

Rational Activation::eval(const Rational& x) const {
  switch (kind_) {
    case Kind::Relu:
      return x.is_negative() ? Rational(0) : x;
    case Kind::LeakyRelu:
      return x.is_negative() ? slope_ * x : x;
    case Kind::HardSigmoid: {
      const Rational y = x / Rational(4) + Rational(1, 2);
      if (y.is_negative()) return Rational(0);
      if (y > Rational(1)) return Rational(1);
      return y;
    }
  }
  throw Error("unreachable activation kind");
}

Rational Activation::eval_interval(const Rational& center, const Rational&, int) const {
  // All shipped activations are exact on rationals; the 2^(-k) slack is
  // never consumed and the radius is charged by the caller.
  return eval(center);
}

Network::Network(Architecture a, std::vector<Layer> ls)
    : arch(std::move(a)), layers(std::move(ls)) {
  if (layers.size() != static_cast<size_t>(arch.depth()))
    throw ShapeMismatchError("layer count does not match architecture depth");
  for (int l = 0; l < arch.depth(); ++l) {
    const auto& layer = layers[static_cast<size_t>(l)];
    if (layer.weights.rows() != arch.dims[static_cast<size_t>(l) + 1] ||
        layer.weights.cols() != arch.dims[static_cast<size_t>(l)] ||
        layer.bias.size() != arch.dims[static_cast<size_t>(l) + 1])
      throw ShapeMismatchError("layer shape does not match architecture");
  }
  const RatVector& final_bias = layers.back().bias;
  for (Eigen::Index i = 0; i < final_bias.size(); ++i)
    if (!final_bias[i].is_zero())
      throw ShapeMismatchError("final bias must be zero");
}

Network Network::zero(const Architecture& a) {
  std::vector<Layer> layers;
  for (int l = 1; l <= a.depth(); ++l) {
    Layer layer;
    layer.weights = RatMatrix::Constant(a.dims[static_cast<size_t>(l)],
                                        a.dims[static_cast<size_t>(l) - 1], Rational(0));
    layer.bias = RatVector::Constant(a.dims[static_cast<size_t>(l)], Rational(0));
    layers.push_back(std::move(layer));
  }
  return Network(a, std::move(layers));
}

bool Network::is_integer() const {
  for (const Layer& layer : layers) {
    for (Eigen::Index j = 0; j < layer.weights.cols(); ++j)
      for (Eigen::Index i = 0; i < layer.weights.rows(); ++i)
        if (!layer.weights(i, j).is_integer()) return false;
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i)
      if (!layer.bias[i].is_integer()) return false;
  }
  return true;
}

std::vector<Rational> Network::to_params(bool include_final_bias) const {
  std::vector<Rational> params;
  params.reserve(static_cast<size_t>(arch.param_count()));
  for (size_t l = 0; l < layers.size(); ++l) {
    const Layer& layer = layers[l];
    for (Eigen::Index i = 0; i < layer.weights.rows(); ++i)
      for (Eigen::Index j = 0; j < layer.weights.cols(); ++j)
        params.push_back(layer.weights(i, j));
    if (l + 1 < layers.size() || include_final_bias)
      for (Eigen::Index i = 0; i < layer.bias.size(); ++i)
        params.push_back(layer.bias[i]);
  }
  return params;
}

Network Network::from_params(const Architecture& a, const std::vector<Rational>& params,
                             bool include_final_bias) {
  const long expected = include_final_bias ? a.param_count() : a.free_param_count();
  if (static_cast<long>(params.size()) != expected)
    throw ShapeMismatchError("parameter vector length does not match architecture");
  std::vector<Layer> layers;
  size_t pos = 0;
  for (int l = 1; l <= a.depth(); ++l) {
    const int rows = a.dims[static_cast<size_t>(l)];
    const int cols = a.dims[static_cast<size_t>(l) - 1];
    Layer layer;
    layer.weights = RatMatrix(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) layer.weights(i, j) = params[pos++];
    layer.bias = RatVector::Constant(rows, Rational(0));
    if (l < a.depth() || include_final_bias)
      for (int i = 0; i < rows; ++i) layer.bias[i] = params[pos++];
    layers.push_back(std::move(layer));
  }
  return Network(a, std::move(layers));
}

bool networks_equal(const Network& a, const Network& b) {
  if (!(a.arch == b.arch)) return false;
  const auto pa = a.to_params(true);
  const auto pb = b.to_params(true);
  for (size_t i = 0; i < pa.size(); ++i)
    if (!(pa[i] == pb[i])) return false;
  return true;
}

Rational realize(const Network& net, const Activation& act, const RatVector& x) {
  if (x.size() != net.arch.input_dim())
    throw ShapeMismatchError("input dimension does not match architecture");
  if (!act.exact_on_rationals())
    throw InexactActivationError("exact realization needs a rational-exact activation");
  RatVector h = x;
  for (size_t l = 0; l < net.layers.size(); ++l) {
    h = (net.layers[l].weights * h + net.layers[l].bias).eval();
    if (l + 1 < net.layers.size())
      for (Eigen::Index i = 0; i < h.size(); ++i) h[i] = act.eval(h[i]);
  }
  return h[0];
}

Rational realize_creal(const Network& net, const Activation& act, const CRealVector& x,
                       int k) {
  if (x.dim() != net.arch.input_dim())
    throw ShapeMismatchError("input dimension does not match architecture");
  // A unit input radius grows by |A_l| per affine map and Lip(sigma) per
  // activation; the input precision only has to cancel that factor.
  RatVector r = RatVector::Constant(net.arch.input_dim(), Rational(1));
  for (size_t l = 0; l < net.layers.size(); ++l) {
    const RatMatrix& w = net.layers[l].weights;
    RatVector next = RatVector::Constant(w.rows(), Rational(0));
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j) next[i] += abs(w(i, j)) * r[j];
    if (l + 1 < net.layers.size())
      for (Eigen::Index i = 0; i < next.size(); ++i)
        next[i] *= act.lipschitz_constant();
    r = std::move(next);
  }
  const Rational factor = r[0];
  int p = 0;
  if (!factor.is_zero()) p = std::max(0L, k + ceil_log2_ub(factor));
  return realize(net, act, x.approx(p));
}

Rational scaling_norm(const Network& net) {
  Rational best = 0;
  for (const Layer& layer : net.layers) {
    const Rational m = max_abs_coeff(layer.weights);
    if (m > best) best = m;
  }
  return best;
}

Rational lipschitz_bound(const Network& net, const Activation& act) {
  Rational bound = 1;
  for (size_t l = 0; l < net.layers.size(); ++l) {
    const auto& w = net.layers[l].weights;
    const Rational dim_factor =
        sqrt_ub(Rational(w.rows() * w.cols()), kSqrtPrecision);
    bound *= dim_factor * max_abs_coeff(w);
    if (l + 1 < net.layers.size()) bound *= act.lipschitz_constant();
  }
  return bound;
}

Rational lipschitz_bound_worst_case(const Architecture& arch, const Activation& act,
                                    const Rational& a_max) {
  Rational bound = 1;
  for (int l = 1; l <= arch.depth(); ++l) {
    const long rows = arch.dims[static_cast<size_t>(l)];
    const long cols = arch.dims[static_cast<size_t>(l) - 1];
    bound *= sqrt_ub(Rational(rows * cols), kSqrtPrecision) * a_max;
    if (l < arch.depth()) bound *= act.lipschitz_constant();
  }
  return bound;
}

Dataset sample_generalization_ball(const Network& net, const Activation& act,
                                   const Dataset& dataset, const Rational& radius,
                                   int samples_per_point, std::uint64_t seed) {
  if (dataset.d != net.arch.input_dim())
    throw ShapeMismatchError("dataset dimension does not match architecture");
  if (radius.is_negative())
    throw DomainError("sample radius must be nonnegative");
  const int d = dataset.d;
  constexpr long kGrid = 16;
  // Offsets radius * u / (G * sqrt(d)_ub) with u in [-G, G]^d satisfy
  // ||offset||^2 <= radius^2 * d G^2 / (G^2 d) = radius^2 exactly.
  const Rational scale = radius / (Rational(kGrid) * sqrt_ub(Rational(d), kSqrtPrecision));
  std::mt19937_64 rng(seed);
  Dataset out;
  out.d = d;
  for (const auto& [x, y] : dataset.pairs) {
    (void)y;
    for (int s = 0; s < samples_per_point; ++s) {
      RatVector point = x;
      for (int j = 0; j < d; ++j) {
        const long u = static_cast<long>(rng() % (2 * kGrid + 1)) - kGrid;
        point[j] += scale * Rational(u);
      }
      Rational label = realize(net, act, point);
      out.pairs.emplace_back(std::move(point), std::move(label));
    }
  }
  return out;
}

}  // namespace exactnn
