#pragma once

// JSON and DOT forms of trees, vectors, moves, curves and search results.
// Malformed documents raise InputError.

#include <json.hpp>
#include <string>
#include <string_view>

#include "dpt/explore.hpp"
#include "dpt/invariant.hpp"
#include "dpt/moves.hpp"
#include "dpt/revolution.hpp"
#include "dpt/tree.hpp"

namespace dpt::io {

using Json = nlohmann::ordered_json;

Json parse(std::string_view text);
std::string read_file(const std::string& path);
Json load(const std::string& path);

Json to_json(const Tree& tree);
Tree tree_from_json(const Json& j);

Json to_json(const InvariantVector& v);
InvariantVector vector_from_json(const Json& j);

Json to_json(const Move& m);
Move move_from_json(const Json& j);

Json to_json(const GeneratingCurve& c);
GeneratingCurve curve_from_json(const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const ReachResult& r);

/// Directed graph; conjugate edges share a color, vertices are labelled by
/// delta. Valid trees are named after their canonical code.
std::string to_dot(const Tree& tree);

/// Plain text listing for terminals.
std::string to_pretty(const Tree& tree);

}  // namespace dpt::io
