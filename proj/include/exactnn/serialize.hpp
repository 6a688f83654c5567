// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include <string>

#include "exactnn/classify.hpp"
#include "exactnn/enumeration.hpp"
#include "exactnn/learners.hpp"
#include "exactnn/network.hpp"

namespace exactnn {

// All documents use insertion-ordered JSON so identical inputs serialize
// byte-identically. Every rational travels as a canonical "p/q" string.
using Json = nlohmann::ordered_json;

/// A network file bundles the parameters with the activation name:
/// {architecture: [N0,...,NL], layers: [{A: [...], b: [...]}], activation}.
/// Weight matrices are flattened row-major. Round trips are bit-exact and
/// a nonzero final bias is rejected on read.
struct NetworkFile {
  Network network;
  std::string activation;
};

Json to_json(const NetworkFile& file);
NetworkFile network_from_json(const Json& j);

/// {d, pairs: [{x: ["p/q", ...], y: "p/q"}]}
Json to_json(const Dataset& dataset);
Dataset dataset_from_json(const Json& j);

/// {learned: <network file>, steps, epsilon, psi_radius?, budget_exhausted}
Json to_json(const LearnReport& report, const std::string& activation);
LearnReport learn_report_from_json(const Json& j);

/// {balls: [{c: ["p/q", ...], r: "p/q"}]}
Json to_json(const BallUnion& u);
BallUnion ball_union_from_json(const Json& j);

/// {architecture, mode, shell_index, position_in_shell}
Json to_json(const EnumerationCursor& cursor);
EnumerationCursor cursor_from_json(const Json& j);

/// File helpers; ParseError on unreadable or malformed documents.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// FNV-1a 64-bit digest of a file's bytes, as "fnv1a64:<hex>"; used by run
/// manifests to pin inputs.
std::string file_digest(const std::string& path);

}  // namespace exactnn
