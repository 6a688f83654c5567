// SPDX-License-Identifier: Apache-2.0

#include "exactnn/serialize.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "exactnn/errors.hpp"

namespace exactnn {

namespace {

Rational rational_field(const Json& j) {
  if (!j.is_string()) throw ParseError("rationals must be \"p/q\" strings");
  return Rational::parse(j.get<std::string>());
}

RatVector vector_field(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  RatVector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = rational_field(j[i]);
  return v;
}

Json vector_to_json(const RatVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i].to_string());
  return out;
}

}  // namespace

Json to_json(const NetworkFile& file) {
  Json j;
  j["architecture"] = file.network.arch.dims;
  Json layers = Json::array();
  for (const Layer& layer : file.network.layers) {
    Json jl;
    Json weights = Json::array();
    for (Eigen::Index i = 0; i < layer.weights.rows(); ++i)
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c)
        weights.push_back(layer.weights(i, c).to_string());
    jl["A"] = std::move(weights);
    jl["b"] = vector_to_json(layer.bias);
    layers.push_back(std::move(jl));
  }
  j["layers"] = std::move(layers);
  j["activation"] = file.activation;
  return j;
}

NetworkFile network_from_json(const Json& j) {
  try {
    const Architecture arch(j.at("architecture").get<std::vector<int>>());
    const Json& jlayers = j.at("layers");
    if (!jlayers.is_array() || static_cast<int>(jlayers.size()) != arch.depth())
      throw ParseError("layer count does not match architecture");
    std::vector<Layer> layers;
    for (int l = 0; l < arch.depth(); ++l) {
      const Json& jl = jlayers[static_cast<size_t>(l)];
      const int rows = arch.dims[static_cast<size_t>(l) + 1];
      const int cols = arch.dims[static_cast<size_t>(l)];
      const Json& ja = jl.at("A");
      if (!ja.is_array() || static_cast<long>(ja.size()) != static_cast<long>(rows) * cols)
        throw ParseError("weight matrix has the wrong number of entries");
      Layer layer;
      layer.weights = RatMatrix(rows, cols);
      size_t pos = 0;
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) layer.weights(r, c) = rational_field(ja[pos++]);
      layer.bias = vector_field(jl.at("b"));
      if (layer.bias.size() != rows) throw ParseError("bias vector has the wrong length");
      layers.push_back(std::move(layer));
    }
    NetworkFile file;
    file.network = Network(arch, std::move(layers));
    file.activation = j.at("activation").get<std::string>();
    return file;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed network document: ") + e.what());
  }
}

Json to_json(const Dataset& dataset) {
  Json j;
  j["d"] = dataset.d;
  Json pairs = Json::array();
  for (const auto& [x, y] : dataset.pairs) {
    Json jp;
    jp["x"] = vector_to_json(x);
    jp["y"] = y.to_string();
    pairs.push_back(std::move(jp));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

Dataset dataset_from_json(const Json& j) {
  try {
    Dataset dataset;
    dataset.d = j.at("d").get<int>();
    if (dataset.d < 1) throw ParseError("dataset dimension must be positive");
    for (const Json& jp : j.at("pairs")) {
      RatVector x = vector_field(jp.at("x"));
      if (x.size() != dataset.d) throw ParseError("dataset pair dimension mismatch");
      dataset.pairs.emplace_back(std::move(x), rational_field(jp.at("y")));
    }
    return dataset;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed dataset document: ") + e.what());
  }
}

Json to_json(const LearnReport& report, const std::string& activation) {
  Json j;
  j["learned"] = to_json(NetworkFile{report.learned, activation});
  j["steps"] = report.steps;
  j["epsilon"] = report.epsilon.to_string();
  if (report.psi_radius) j["psi_radius"] = report.psi_radius->to_string();
  j["budget_exhausted"] = report.budget_exhausted;
  return j;
}

LearnReport learn_report_from_json(const Json& j) {
  try {
    LearnReport report;
    report.learned = network_from_json(j.at("learned")).network;
    report.steps = j.at("steps").get<std::uint64_t>();
    report.epsilon = rational_field(j.at("epsilon"));
    if (j.contains("psi_radius")) report.psi_radius = rational_field(j.at("psi_radius"));
    report.budget_exhausted = j.at("budget_exhausted").get<bool>();
    return report;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed learn report: ") + e.what());
  }
}

Json to_json(const BallUnion& u) {
  const std::vector<Ball>* balls = u.finite_balls();
  if (balls == nullptr)
    throw DomainError("only finite ball unions have a literal form");
  Json j;
  Json arr = Json::array();
  for (const Ball& b : *balls) {
    Json jb;
    jb["c"] = vector_to_json(b.center);
    jb["r"] = b.radius.to_string();
    arr.push_back(std::move(jb));
  }
  j["balls"] = std::move(arr);
  return j;
}

BallUnion ball_union_from_json(const Json& j) {
  try {
    std::vector<Ball> balls;
    for (const Json& jb : j.at("balls"))
      balls.push_back(Ball{vector_field(jb.at("c")), rational_field(jb.at("r"))});
    return BallUnion(std::move(balls));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed ball union: ") + e.what());
  }
}

Json to_json(const EnumerationCursor& cursor) {
  Json j;
  j["architecture"] = cursor.architecture().dims;
  j["mode"] = enum_mode_name(cursor.mode());
  j["shell_index"] = cursor.shell_index();
  j["position_in_shell"] = cursor.position_in_shell();
  return j;
}

EnumerationCursor cursor_from_json(const Json& j) {
  try {
    return EnumerationCursor::from_checkpoint(
        Architecture(j.at("architecture").get<std::vector<int>>()),
        enum_mode_by_name(j.at("mode").get<std::string>()),
        j.at("shell_index").get<long>(),
        j.at("position_in_shell").get<std::uint64_t>());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed cursor checkpoint: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "' for digesting");
  std::uint64_t hash = 1469598103934665603ULL;
  char c;
  while (in.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << hash;
  return os.str();
}

}  // namespace exactnn
