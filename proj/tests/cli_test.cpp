// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "exactnn/serialize.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

using exactnn::Json;
using exactnn::Rational;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("exactnn_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(EXACTNN_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_spike_net(const std::string& path) {
  exactnn::write_json_file(path, exactnn::Json::parse(R"({
    "architecture": [1, 1, 1],
    "layers": [{"A": ["2/1"], "b": ["1/1"]}, {"A": ["3/1"], "b": ["0/1"]}],
    "activation": "relu"
  })"));
}

}  // namespace

TEST_CASE("quantized learning end to end") {
  TempDir dir;
  write_spike_net(dir.file("net.json"));
  REQUIRE(run_cli("gen --net " + dir.file("net.json") + " --grid -1..1 --out " +
                  dir.file("data.json")) == 0);
  REQUIRE(run_cli("learn quantized --data " + dir.file("data.json") +
                  " --arch 1,1,1 --out " + dir.file("rep.json") + " --net-out " +
                  dir.file("learned.json")) == 0);
  const auto report = exactnn::learn_report_from_json(
      exactnn::read_json_file(dir.file("rep.json")));
  CHECK_FALSE(report.budget_exhausted);
  const auto data = exactnn::dataset_from_json(exactnn::read_json_file(dir.file("data.json")));
  for (const auto& [x, y] : data.pairs)
    CHECK(oracles::naive_forward_relu(report.learned, x) == y);

  // The same dataset through the approximate learners.
  CHECK(run_cli("learn enum --data " + dir.file("data.json") +
                " --arch 1,1,1 --epsilon 1/8 --out " + dir.file("rep2.json") +
                " --net-out " + dir.file("learned2.json")) == 0);
  CHECK(run_cli("learn lipschitz --data " + dir.file("data.json") +
                " --arch 1,1,1 --epsilon 1/8 --a-max 3 --out " + dir.file("rep3.json") +
                " --net-out " + dir.file("learned3.json")) == 0);
  const auto lip = exactnn::learn_report_from_json(
      exactnn::read_json_file(dir.file("rep3.json")));
  REQUIRE(lip.psi_radius.has_value());
  CHECK(*lip.psi_radius > Rational(0));
}

TEST_CASE("encoded generation and decoding round trip") {
  TempDir dir;
  write_spike_net(dir.file("net.json"));
  REQUIRE(run_cli("gen --net " + dir.file("net.json") + " --encoded --n 3 --out " +
                  dir.file("enc.json")) == 0);
  REQUIRE(run_cli("learn decode --data " + dir.file("enc.json") + " --arch 1,1,1 --out " +
                  dir.file("rep.json") + " --net-out " + dir.file("dec.json")) == 0);
  const auto original = exactnn::network_from_json(exactnn::read_json_file(dir.file("net.json")));
  const auto decoded = exactnn::network_from_json(exactnn::read_json_file(dir.file("dec.json")));
  CHECK(networks_equal(original.network, decoded.network));

  // Corrupt the code coordinate: distinct decode-failure exit code.
  auto enc = exactnn::read_json_file(dir.file("enc.json"));
  enc["pairs"][0]["x"][0] = "-5/1";
  exactnn::write_json_file(dir.file("bad.json"), enc);
  CHECK(run_cli("learn decode --data " + dir.file("bad.json") + " --arch 1,1,1 --out " +
                dir.file("r.json") + " --net-out " + dir.file("n.json")) == 12);
}

TEST_CASE("generation labels are exact realizations") {
  TempDir dir;
  exactnn::write_json_file(dir.file("zero.json"), to_json(exactnn::NetworkFile{
      exactnn::Network::zero(exactnn::Architecture({1, 1, 1})), "relu"}));
  REQUIRE(run_cli("gen --net " + dir.file("zero.json") + " --grid -1..1 --out " +
                  dir.file("z.json")) == 0);
  const auto zeros = exactnn::dataset_from_json(exactnn::read_json_file(dir.file("z.json")));
  CHECK(zeros.pairs.size() == 3);
  for (const auto& [x, y] : zeros.pairs) {
    (void)x;
    CHECK(y.is_zero());
  }

  write_spike_net(dir.file("net.json"));
  REQUIRE(run_cli("gen --net " + dir.file("net.json") + " --point 1/1 --out " +
                  dir.file("one.json")) == 0);
  const auto one = exactnn::dataset_from_json(exactnn::read_json_file(dir.file("one.json")));
  CHECK(one.pairs.size() == 1);
  CHECK(one.pairs[0].second == Rational(9));

  REQUIRE(run_cli("gen --net " + dir.file("net.json") + " --ball-from " + dir.file("one.json") +
                  " --radius 1/4 --samples-per-point 5 --seed 7 --out " +
                  dir.file("ball.json")) == 0);
  const auto ball = exactnn::dataset_from_json(exactnn::read_json_file(dir.file("ball.json")));
  CHECK(ball.pairs.size() == 5);
}

TEST_CASE("classification queries") {
  TempDir dir;
  exactnn::write_json_file(dir.file("c1.json"),
                           Json::parse(R"({"balls": [{"c": ["1/2"], "r": "1/2"}]})"));
  exactnn::write_json_file(dir.file("c2.json"),
                           Json::parse(R"({"balls": [{"c": ["5/2"], "r": "1/2"}]})"));
  const std::string classes =
      " --class " + dir.file("c1.json") + " --class " + dir.file("c2.json");

  const std::string out = dir.file("out.txt");
  auto classify_output = [&](const std::string& x) {
    const std::string cmd = std::string(EXACTNN_BIN) + " classify" + classes + " --x " + x +
                            " --fuel 32 > " + out + " 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    return slurp(out);
  };
  CHECK(classify_output("1/2") == "class 1\n");
  CHECK(classify_output("5/2") == "class 2\n");
  CHECK(classify_output("3/2") == "unknown\n");

  CHECK(run_cli("classify --class " + dir.file("c1.json") + " --class " + dir.file("c1.json") +
                " --x 1/2 --fuel 16") == 13);
}

TEST_CASE("demo topology matches the exact-formula fixture") {
  TempDir dir;
  REQUIRE(run_cli("demo topology --k-max 8 --out " + dir.file("t.json")) == 0);
  const Json j = exactnn::read_json_file(dir.file("t.json"));
  REQUIRE(j.at("rows").size() == 8);
  for (int k = 1; k <= 8; ++k) {
    const Json& row = j.at("rows")[static_cast<size_t>(k - 1)];
    CHECK(row.at("k") == k);
    CHECK(row.at("sup_norm") == Rational::pow2(-k).to_string());
    CHECK(row.at("lipschitz") == Rational::pow2(k + 1).to_string());
  }
}

TEST_CASE("demo exitflag verdicts") {
  TempDir dir;
  REQUIRE(run_cli("demo exitflag --epsilon 1/2 --fuel 32 --out " + dir.file("f.json")) == 0);
  const Json j = exactnn::read_json_file(dir.file("f.json"));
  for (const Json& row : j.at("points")) {
    const Rational x = Rational::parse(row.at("x").get<std::string>());
    const bool accepted = row.at("verdict") == "accept";
    // eps = 1/2 has threshold 1: accept iff |x| > 1 on the half-integer grid.
    CHECK(accepted == (abs(x) > Rational(1)));
  }
}

TEST_CASE("identical invocations give byte-identical primary outputs") {
  TempDir dir;
  write_spike_net(dir.file("net.json"));
  REQUIRE(run_cli("gen --net " + dir.file("net.json") + " --grid -2..2 --out " +
                  dir.file("a.json")) == 0);
  REQUIRE(run_cli("gen --net " + dir.file("net.json") + " --grid -2..2 --out " +
                  dir.file("b.json")) == 0);
  CHECK(slurp(dir.file("a.json")) == slurp(dir.file("b.json")));

  // Manifests exist and name their outputs.
  const Json manifest = exactnn::read_json_file(dir.file("a.json") + ".manifest.json");
  CHECK(manifest.at("command") == "gen");
  CHECK(manifest.at("outputs")[0] == dir.file("a.json"));
  CHECK(manifest.at("inputs")[0].at("digest").get<std::string>().rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("error paths exit with their documented codes") {
  TempDir dir;
  exactnn::write_json_file(
      dir.file("conflict.json"),
      Json::parse(R"({"d": 1, "pairs": [{"x": ["0/1"], "y": "0/1"}, {"x": ["0/1"], "y": "1/1"}]})"));
  CHECK(run_cli("learn quantized --data " + dir.file("conflict.json") + " --arch 1,1,1 --out " +
                dir.file("r.json") + " --net-out " + dir.file("n.json")) == 10);

  exactnn::write_json_file(
      dir.file("hard.json"),
      Json::parse(R"({"d": 1, "pairs": [{"x": ["0/1"], "y": "1/1"}, {"x": ["1/1"], "y": "0/1"}, {"x": ["2/1"], "y": "5/1"}]})"));
  CHECK(run_cli("learn quantized --data " + dir.file("hard.json") +
                " --arch 1,1,1 --max-steps 50 --out " + dir.file("r.json") + " --net-out " +
                dir.file("n.json")) == 11);

  CHECK(run_cli("learn enum --data " + dir.file("hard.json") +
                " --arch 1,1,1 --epsilon 0.25 --out " + dir.file("r.json") + " --net-out " +
                dir.file("n.json")) == 20);
  CHECK(run_cli("nonsense") == 22);
  CHECK(run_cli("learn quantized --data " + dir.file("missing.json") + " --arch 1,1,1") == 20);
}
