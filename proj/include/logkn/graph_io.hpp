#pragma once

// JSON form of dual graphs:
// { "name": str, "vertices": [{"id", "genus", "multiplicity", "marks"}],
//   "edges": [{"id", "ends": [tail, head]}] }

#include <filesystem>
#include <string_view>

#include "json.hpp"
#include "logkn/degen.hpp"

namespace logkn::degen {

/// Vertices and edges in id order.
nlohmann::json graph_to_json(const DualGraph& g);

/// Structural parse only; run validate() for graph-level checks.
/// Throws ParseError on missing or mistyped fields.
DualGraph graph_from_json(const nlohmann::json& j);
DualGraph parse_graph(std::string_view text);
DualGraph load_graph(const std::filesystem::path& path);

}  // namespace logkn::degen
