#include "logkn/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "logkn/error.hpp"

namespace logkn::degen {

namespace {

const nlohmann::json& field(const nlohmann::json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

std::string string_field(const nlohmann::json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_string()) throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

long integer_field(const nlohmann::json& obj, const char* key, long fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be an integer");
  }
  return v.get<long>();
}

}  // namespace

nlohmann::json graph_to_json(const DualGraph& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const auto& v : g.vertices()) {
    vertices.push_back({{"id", v.id}, {"genus", v.genus}, {"multiplicity", v.multiplicity}, {"marks", v.marks}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({{"id", e.id}, {"ends", {e.tail, e.head}}});
  return {{"name", g.name()}, {"vertices", vertices}, {"edges", edges}};
}

DualGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "graph must be a JSON object");
  const std::string name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "";
  const auto& jv = field(j, "vertices");
  if (!jv.is_array()) throw Error(ErrorCode::ParseError, "'vertices' must be an array");
  std::vector<Vertex> vertices;
  for (const auto& v : jv) {
    vertices.push_back({string_field(v, "id"), integer_field(v, "genus", 0),
                        integer_field(v, "multiplicity", 1), integer_field(v, "marks", 0)});
  }
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    const auto& je = j.at("edges");
    if (!je.is_array()) throw Error(ErrorCode::ParseError, "'edges' must be an array");
    for (const auto& e : je) {
      const auto& ends = field(e, "ends");
      if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string()) {
        throw Error(ErrorCode::ParseError, "'ends' must be a pair of vertex ids");
      }
      edges.push_back({string_field(e, "id"), ends[0].get<std::string>(), ends[1].get<std::string>()});
    }
  }
  return DualGraph(name, std::move(vertices), std::move(edges));
}

DualGraph parse_graph(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return graph_from_json(j);
}

DualGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

}  // namespace logkn::degen
