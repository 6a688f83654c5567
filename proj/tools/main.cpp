// SPDX-License-Identifier: Apache-2.0
//
// exactnn command line: learning runs, dataset generation, classification
// queries, and the demo tables, all in exact rational arithmetic. Numeric
// flags take canonical "p/q" strings; decimal input is rejected so no
// floating point can leak into a certificate.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "exactnn/classify.hpp"
#include "exactnn/errors.hpp"
#include "exactnn/learners.hpp"
#include "exactnn/serialize.hpp"
#include "exactnn/topology.hpp"
#include "exactnn/trig.hpp"

namespace {

using exactnn::Architecture;
using exactnn::Dataset;
using exactnn::Json;
using exactnn::Network;
using exactnn::Rational;
using exactnn::RatVector;

// Exit codes; documented in the README and stable across releases.
constexpr int kOk = 0;
constexpr int kInconsistentData = 10;
constexpr int kBudgetExhausted = 11;
constexpr int kDecodeError = 12;
constexpr int kAmbiguousAccept = 13;
constexpr int kShapeError = 14;
constexpr int kDomainError = 15;
constexpr int kFileError = 20;
constexpr int kUsageError = 22;

Architecture parse_arch(const std::string& text) {
  std::vector<int> dims;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t comma = text.find(',', pos);
    const std::string part = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      dims.push_back(std::stoi(part));
    } catch (...) {
      throw exactnn::ParseError("bad architecture '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return Architecture(dims);
}

RatVector parse_point(const std::string& text, int expected_dim) {
  std::vector<Rational> parts;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t comma = text.find(',', pos);
    parts.push_back(Rational::parse(
        text.substr(pos, comma == std::string::npos ? comma : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (expected_dim > 0 && static_cast<int>(parts.size()) != expected_dim)
    throw exactnn::ShapeMismatchError("point has dimension " +
                                      std::to_string(parts.size()) + ", expected " +
                                      std::to_string(expected_dim));
  RatVector v(static_cast<Eigen::Index>(parts.size()));
  for (size_t i = 0; i < parts.size(); ++i) v[static_cast<Eigen::Index>(i)] = parts[i];
  return v;
}

struct ManifestScope {
  std::string command;
  Json config = Json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit ManifestScope(std::string cmd) : command(std::move(cmd)) {}

  void write() const {
    if (outputs.empty()) return;
    Json m;
    m["command"] = command;
    m["config"] = config;
    Json ins = Json::array();
    for (const std::string& path : inputs) {
      Json ji;
      ji["path"] = path;
      ji["digest"] = exactnn::file_digest(path);
      ins.push_back(std::move(ji));
    }
    m["inputs"] = std::move(ins);
    m["outputs"] = outputs;
    m["duration_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    exactnn::write_json_file(outputs.front() + ".manifest.json", m);
  }
};

int finish_learn(const exactnn::LearnReport& report, const std::string& activation,
                 const std::string& out, const std::string& net_out,
                 ManifestScope& manifest) {
  exactnn::write_json_file(out, to_json(report, activation));
  exactnn::write_json_file(net_out, to_json(exactnn::NetworkFile{report.learned, activation}));
  manifest.outputs = {out, net_out};
  manifest.write();
  if (report.budget_exhausted) {
    std::cerr << "budget exhausted after " << report.steps << " steps\n";
    return kBudgetExhausted;
  }
  std::cout << "learned in " << report.steps << " steps -> " << out << "\n";
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"exact-arithmetic network learning and classification toolkit"};
  app.require_subcommand(1);

  // ---- learn ----
  auto* learn = app.add_subcommand("learn", "enumeration and decoding learners");
  learn->require_subcommand(1);
  std::string data_path, arch_text, epsilon_text = "1/16", activation = "relu";
  std::string out_path = "report.json", net_out_path = "learned.json";
  long a_max = 1;
  std::int64_t max_steps = -1;
  for (const char* name : {"enum", "lipschitz", "quantized", "decode"}) {
    auto* sub = learn->add_subcommand(name);
    sub->add_option("--data", data_path, "dataset file")->required();
    sub->add_option("--arch", arch_text, "architecture N0,N1,...,1")->required();
    sub->add_option("--out", out_path, "learn report output");
    sub->add_option("--net-out", net_out_path, "learned network output");
    if (std::string(name) == "enum" || std::string(name) == "lipschitz") {
      sub->add_option("--epsilon", epsilon_text, "target residual bound, p/q");
      sub->add_option("--activation", activation, "relu|leakyrelu:p/q|hardsigmoid");
    }
    if (std::string(name) == "lipschitz")
      sub->add_option("--a-max", a_max, "admissible-class weight bound")
          ->check(CLI::PositiveNumber);
    if (std::string(name) != "decode")
      sub->add_option("--max-steps", max_steps, "candidate budget")
          ->check(CLI::PositiveNumber);
  }

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate datasets from a network");
  std::string net_path, gen_out = "dataset.json", grid_text, ball_from, radius_text = "0/1";
  std::vector<std::string> point_texts;
  bool encoded = false;
  int encoded_n = 1, samples_per_point = 1;
  std::uint64_t seed = 0;
  gen->add_option("--net", net_path, "network file")->required();
  gen->add_option("--out", gen_out, "dataset output");
  gen->add_option("--point", point_texts, "explicit input point p/q,p/q,...");
  gen->add_option("--grid", grid_text, "integer grid lo..hi over every coordinate");
  gen->add_flag("--encoded", encoded, "emit the pairing-encoded dataset");
  gen->add_option("--n", encoded_n, "encoded dataset size")->check(CLI::PositiveNumber);
  gen->add_option("--ball-from", ball_from, "sample around the inputs of this dataset");
  gen->add_option("--radius", radius_text, "sampling radius p/q");
  gen->add_option("--samples-per-point", samples_per_point, "samples per input")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "sampling seed");

  // ---- classify ----
  auto* classify = app.add_subcommand("classify", "dovetailed ball-union classification");
  std::vector<std::string> class_paths;
  std::string x_text;
  int fuel = 32;
  classify->add_option("--class", class_paths, "ball union file, one per class")->required();
  classify->add_option("--x", x_text, "query point p/q,p/q,...")->required();
  classify->add_option("--fuel", fuel, "round-robin fuel")->check(CLI::PositiveNumber);

  // ---- demo ----
  auto* demo = app.add_subcommand("demo", "witness family and exit flag tables");
  demo->require_subcommand(1);
  auto* topo = demo->add_subcommand("topology");
  int k_max = 8;
  std::string topo_out = "topology.json";
  topo->add_option("--k-max", k_max, "largest family index")->check(CLI::PositiveNumber);
  topo->add_option("--out", topo_out, "report output");
  auto* exitflag = demo->add_subcommand("exitflag");
  std::string flag_eps = "1/2", flag_out = "exitflag.json";
  int flag_fuel = 32;
  exitflag->add_option("--epsilon", flag_eps, "approximation tolerance p/q");
  exitflag->add_option("--fuel", flag_fuel, "certification fuel")->check(CLI::PositiveNumber);
  exitflag->add_option("--out", flag_out, "report output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kUsageError;
  }

  const auto learner_config = [&] {
    exactnn::LearnerConfig cfg;
    cfg.epsilon = Rational::parse(epsilon_text);
    cfg.a_max = a_max;
    cfg.activation = activation;
    if (max_steps >= 0) cfg.max_steps = static_cast<std::uint64_t>(max_steps);
    return cfg;
  };

  if (learn->parsed()) {
    const std::string mode = learn->get_subcommands().front()->get_name();
    ManifestScope manifest("learn " + mode);
    manifest.inputs = {data_path};
    const Dataset dataset = exactnn::dataset_from_json(exactnn::read_json_file(data_path));
    const Architecture arch = parse_arch(arch_text);
    manifest.config = {{"data", data_path},
                       {"arch", arch_text},
                       {"epsilon", epsilon_text},
                       {"a_max", a_max},
                       {"max_steps", max_steps},
                       {"activation", activation}};
    if (mode == "enum")
      return finish_learn(enum_learn(dataset, arch, learner_config()), activation,
                          out_path, net_out_path, manifest);
    if (mode == "lipschitz")
      return finish_learn(lipschitz_enum_learn(dataset, arch, learner_config()),
                          activation, out_path, net_out_path, manifest);
    if (mode == "quantized")
      return finish_learn(quantized_enum_learn(dataset, arch, learner_config()),
                          activation, out_path, net_out_path, manifest);
    // decode: the closed-form reconstruction of an encoded dataset.
    exactnn::LearnReport report;
    report.learned = quantized_learn_encode(dataset, arch);
    report.steps = 1;
    return finish_learn(report, activation, out_path, net_out_path, manifest);
  }

  if (gen->parsed()) {
    ManifestScope manifest("gen");
    manifest.inputs = {net_path};
    const exactnn::NetworkFile file =
        exactnn::network_from_json(exactnn::read_json_file(net_path));
    const exactnn::Activation act = exactnn::Activation::by_name(file.activation);
    const int d = file.network.arch.input_dim();
    manifest.config = {{"net", net_path}};
    Dataset dataset;
    dataset.d = d;
    if (encoded) {
      manifest.config["encoded"] = true;
      manifest.config["n"] = encoded_n;
      dataset = make_encoded_dataset(file.network, encoded_n, act);
    } else if (!ball_from.empty()) {
      manifest.inputs.push_back(ball_from);
      manifest.config["ball_from"] = ball_from;
      manifest.config["radius"] = radius_text;
      manifest.config["samples_per_point"] = samples_per_point;
      manifest.config["seed"] = seed;
      const Dataset base = exactnn::dataset_from_json(exactnn::read_json_file(ball_from));
      dataset = sample_generalization_ball(file.network, act, base,
                                           Rational::parse(radius_text),
                                           samples_per_point, seed);
    } else if (!grid_text.empty()) {
      manifest.config["grid"] = grid_text;
      const size_t dots = grid_text.find("..");
      if (dots == std::string::npos)
        throw exactnn::ParseError("grid must be lo..hi");
      const long lo = std::stol(grid_text.substr(0, dots));
      const long hi = std::stol(grid_text.substr(dots + 2));
      if (hi < lo) throw exactnn::ParseError("empty grid");
      const long per_dim = hi - lo + 1;
      double total = 1;
      for (int j = 0; j < d; ++j) total *= static_cast<double>(per_dim);
      if (total > 1e6) throw exactnn::DomainError("grid has more than 10^6 points");
      std::vector<long> idx(static_cast<size_t>(d), lo);
      while (true) {
        RatVector x(d);
        for (int j = 0; j < d; ++j) x[j] = Rational(idx[static_cast<size_t>(j)]);
        dataset.pairs.emplace_back(x, realize(file.network, act, x));
        int j = d - 1;
        while (j >= 0 && idx[static_cast<size_t>(j)] == hi) idx[static_cast<size_t>(j--)] = lo;
        if (j < 0) break;
        ++idx[static_cast<size_t>(j)];
      }
    } else if (!point_texts.empty()) {
      Json jp = Json::array();
      for (const std::string& t : point_texts) jp.push_back(t);
      manifest.config["points"] = jp;
      for (const std::string& t : point_texts) {
        const RatVector x = parse_point(t, d);
        dataset.pairs.emplace_back(x, realize(file.network, act, x));
      }
    } else {
      throw exactnn::ParseError("gen needs --point, --grid, --encoded, or --ball-from");
    }
    exactnn::write_json_file(gen_out, to_json(dataset));
    manifest.outputs = {gen_out};
    manifest.write();
    std::cout << dataset.pairs.size() << " pairs -> " << gen_out << "\n";
    return kOk;
  }

  if (classify->parsed()) {
    std::vector<exactnn::SemiDecider> deciders;
    for (const std::string& path : class_paths)
      deciders.push_back(exactnn::ball_union_semidecider(
          exactnn::ball_union_from_json(exactnn::read_json_file(path))));
    const RatVector x = parse_point(x_text, -1);
    const auto verdict =
        dovetail_classify(deciders, exactnn::CRealVector::from_rationals(x), fuel);
    if (verdict)
      std::cout << "class " << *verdict << "\n";
    else
      std::cout << "unknown\n";
    return kOk;
  }

  if (topo->parsed()) {
    ManifestScope manifest("demo topology");
    manifest.config = {{"k_max", k_max}};
    Json rows = Json::array();
    std::cout << "k\tsup_norm\tlipschitz\tscaling_lower_bound\n";
    for (int k = 1; k <= k_max; ++k) {
      const exactnn::SpikeFamilyMember m = exactnn::build_spike(k);
      const Rational bound = exactnn::scaling_norm_lower_bound(m);
      Json row;
      row["k"] = k;
      row["sup_norm"] = m.exact_sup.to_string();
      row["sup_norm_decimal"] = m.exact_sup.to_decimal(6);
      row["lipschitz"] = m.exact_lip.to_string();
      row["lipschitz_decimal"] = m.exact_lip.to_decimal(6);
      row["scaling_lower_bound"] = bound.to_string();
      row["scaling_lower_bound_decimal"] = bound.to_decimal(6);
      rows.push_back(std::move(row));
      std::cout << k << "\t" << m.exact_sup.to_string() << "\t" << m.exact_lip.to_string()
                << "\t" << bound.to_string() << "\n";
    }
    Json j;
    j["rows"] = std::move(rows);
    exactnn::write_json_file(topo_out, j);
    manifest.outputs = {topo_out};
    manifest.write();
    return kOk;
  }

  if (exitflag->parsed()) {
    ManifestScope manifest("demo exitflag");
    manifest.config = {{"epsilon", flag_eps}, {"fuel", flag_fuel}};
    const Rational eps = Rational::parse(flag_eps);
    const exactnn::SemiDecider flag = exactnn::exit_flag_semidecider(eps);
    const Rational threshold_ub =
        exactnn::exit_flag_threshold(eps).approx(flag_fuel) + Rational::pow2(-flag_fuel);
    Json points = Json::array();
    for (const long num : {-6L, -5L, -4L, -3L, -2L, -1L, 0L, 1L, 2L, 3L, 4L, 5L, 6L}) {
      const Rational x(num, 2);  // grid of halves around the origin
      RatVector v(1);
      v[0] = x;
      const bool accepted =
          flag.query(exactnn::CRealVector::from_rationals(v), flag_fuel) ==
          exactnn::Verdict::Accept;
      Json row;
      row["x"] = x.to_string();
      row["verdict"] = accepted ? "accept" : "unknown";
      points.push_back(std::move(row));
      std::cout << x.to_string() << "\t" << (accepted ? "accept" : "unknown") << "\n";
    }
    Json j;
    j["epsilon"] = eps.to_string();
    j["fuel"] = flag_fuel;
    j["threshold_upper_bound"] = threshold_ub.to_string();
    j["points"] = std::move(points);
    exactnn::write_json_file(flag_out, j);
    manifest.outputs = {flag_out};
    manifest.write();
    return kOk;
  }

  return kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const exactnn::InconsistentDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInconsistentData;
  } catch (const exactnn::DecodeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDecodeError;
  } catch (const exactnn::AmbiguousAcceptError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAmbiguousAccept;
  } catch (const exactnn::ShapeMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kShapeError;
  } catch (const exactnn::InexactActivationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kShapeError;
  } catch (const exactnn::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFileError;
  } catch (const exactnn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
