#include "logkn/degen.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "logkn/error.hpp"

namespace logkn::degen {

namespace {

std::string fresh_id(const std::string& prefix, const std::set<std::string>& taken) {
  for (std::size_t k = 0;; ++k) {
    std::string id = prefix + std::to_string(k);
    if (!taken.count(id)) return id;
  }
}

std::set<std::string> all_ids(const DualGraph& g) {
  std::set<std::string> ids;
  for (const auto& v : g.vertices()) ids.insert(v.id);
  for (const auto& e : g.edges()) ids.insert(e.id);
  return ids;
}

}  // namespace

DualGraph::DualGraph(std::string name, std::vector<Vertex> vertices, std::vector<Edge> edges)
    : name_(std::move(name)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::stable_sort(vertices_.begin(), vertices_.end(),
                   [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  std::stable_sort(edges_.begin(), edges_.end(),
                   [](const Edge& a, const Edge& b) { return a.id < b.id; });
}

const Vertex* DualGraph::find_vertex(std::string_view id) const {
  for (const auto& v : vertices_)
    if (v.id == id) return &v;
  return nullptr;
}

const Edge* DualGraph::find_edge(std::string_view id) const {
  for (const auto& e : edges_)
    if (e.id == id) return &e;
  return nullptr;
}

long DualGraph::degree(std::string_view vertex_id) const {
  long d = 0;
  for (const auto& e : edges_) {
    if (e.tail == vertex_id) ++d;
    if (e.head == vertex_id) ++d;
  }
  return d;
}

long DualGraph::total_genus() const {
  return std::accumulate(vertices_.begin(), vertices_.end(), 0L,
                         [](long s, const Vertex& v) { return s + v.genus; });
}

long DualGraph::total_marks() const {
  return std::accumulate(vertices_.begin(), vertices_.end(), 0L,
                         [](long s, const Vertex& v) { return s + v.marks; });
}

long DualGraph::first_betti() const {
  return static_cast<long>(edges_.size()) - static_cast<long>(vertices_.size()) + 1;
}

std::string_view to_string(GraphErrorKind kind) noexcept {
  switch (kind) {
    case GraphErrorKind::Empty: return "Empty";
    case GraphErrorKind::DuplicateId: return "DuplicateId";
    case GraphErrorKind::BadMultiplicity: return "BadMultiplicity";
    case GraphErrorKind::NegativeGenus: return "NegativeGenus";
    case GraphErrorKind::NegativeMarks: return "NegativeMarks";
    case GraphErrorKind::UnknownVertex: return "UnknownVertex";
    case GraphErrorKind::Disconnected: return "Disconnected";
  }
  return "Unknown";
}

std::vector<GraphError> validate(const DualGraph& g) {
  std::vector<GraphError> errors;
  if (g.vertices().empty()) {
    errors.push_back({GraphErrorKind::Empty, "graph has no vertices"});
    return errors;
  }
  std::set<std::string> ids;
  for (const auto& v : g.vertices()) {
    if (!ids.insert(v.id).second)
      errors.push_back({GraphErrorKind::DuplicateId, "duplicate id '" + v.id + "'"});
    if (v.multiplicity < 1)
      errors.push_back({GraphErrorKind::BadMultiplicity,
                        "vertex '" + v.id + "' has multiplicity " + std::to_string(v.multiplicity)});
    if (v.genus < 0)
      errors.push_back({GraphErrorKind::NegativeGenus, "vertex '" + v.id + "' has negative genus"});
    if (v.marks < 0)
      errors.push_back({GraphErrorKind::NegativeMarks, "vertex '" + v.id + "' has negative marks"});
  }
  const std::set<std::string> vertex_ids = ids;
  bool dangling = false;
  for (const auto& e : g.edges()) {
    if (!ids.insert(e.id).second)
      errors.push_back({GraphErrorKind::DuplicateId, "duplicate id '" + e.id + "'"});
    for (const auto* end : {&e.tail, &e.head}) {
      if (!vertex_ids.count(*end)) {
        errors.push_back({GraphErrorKind::UnknownVertex,
                          "edge '" + e.id + "' references unknown vertex '" + *end + "'"});
        dangling = true;
      }
    }
  }
  if (!dangling) {
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& e : g.edges()) {
      adj[e.tail].push_back(e.head);
      adj[e.head].push_back(e.tail);
    }
    std::set<std::string> seen{g.vertices().front().id};
    std::vector<std::string> stack{g.vertices().front().id};
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (const auto& w : adj[v])
        if (seen.insert(w).second) stack.push_back(w);
    }
    if (seen.size() != vertex_ids.size())
      errors.push_back({GraphErrorKind::Disconnected, "dual graph is not connected"});
  }
  return errors;
}

void require_valid(const DualGraph& g) {
  const auto errors = validate(g);
  if (errors.empty()) return;
  std::string msg;
  for (const auto& e : errors) {
    if (!msg.empty()) msg += "; ";
    msg += std::string(to_string(e.kind)) + ": " + e.message;
  }
  throw Error(ErrorCode::InvalidGraph, msg);
}

bool is_semistable(const DualGraph& g) {
  return std::all_of(g.vertices().begin(), g.vertices().end(),
                     [](const Vertex& v) { return v.multiplicity == 1; });
}

std::string describe(const BlowupMove& move) {
  if (const auto* n = std::get_if<NodeBlowup>(&move)) return "node-blowup(" + n->edge + ")";
  const auto& s = std::get<SmoothPointBlowup>(move);
  return "smooth-point-blowup(" + s.vertex + (s.through_mark ? ", through-mark)" : ")");
}

DualGraph apply_blowup(const DualGraph& g, const BlowupMove& move) {
  auto vertices = g.vertices();
  auto edges = g.edges();
  auto taken = all_ids(g);
  auto vertex_named = [&](const std::string& id) -> Vertex& {
    for (auto& v : vertices)
      if (v.id == id) return v;
    throw Error(ErrorCode::UnknownReference, "no vertex '" + id + "'");
  };

  if (const auto* node = std::get_if<NodeBlowup>(&move)) {
    const auto it = std::find_if(edges.begin(), edges.end(),
                                 [&](const Edge& e) { return e.id == node->edge; });
    if (it == edges.end()) throw Error(ErrorCode::UnknownReference, "no edge '" + node->edge + "'");
    const Edge old = *it;
    edges.erase(it);
    Vertex exceptional;
    exceptional.id = fresh_id("E", taken);
    taken.insert(exceptional.id);
    exceptional.multiplicity = vertex_named(old.tail).multiplicity + vertex_named(old.head).multiplicity;
    const std::string first = fresh_id(old.id + "a", taken);
    taken.insert(first);
    const std::string second = fresh_id(old.id + "b", taken);
    edges.push_back({first, old.tail, exceptional.id});
    edges.push_back({second, exceptional.id, old.head});
    vertices.push_back(std::move(exceptional));
  } else {
    const auto& smooth = std::get<SmoothPointBlowup>(move);
    Vertex& v = vertex_named(smooth.vertex);
    if (smooth.through_mark && v.marks < 1) {
      throw Error(ErrorCode::NoMarkToMove, "vertex '" + v.id + "' has no horizontal mark to move");
    }
    Vertex leaf;
    leaf.id = fresh_id("E", taken);
    taken.insert(leaf.id);
    leaf.multiplicity = v.multiplicity;
    if (smooth.through_mark) {
      --v.marks;
      leaf.marks = 1;
    }
    edges.push_back({fresh_id("f", taken), v.id, leaf.id});
    vertices.push_back(std::move(leaf));
  }
  return DualGraph(g.name(), std::move(vertices), std::move(edges));
}

std::vector<BlowupMove> applicable_moves(const DualGraph& g) {
  std::vector<BlowupMove> moves;
  for (const auto& e : g.edges()) moves.emplace_back(NodeBlowup{e.id});
  for (const auto& v : g.vertices()) {
    moves.emplace_back(SmoothPointBlowup{v.id, false});
    if (v.marks >= 1) moves.emplace_back(SmoothPointBlowup{v.id, true});
  }
  return moves;
}

long punctured_euler_characteristic(const DualGraph& g, const Vertex& v) {
  return 2 - 2 * v.genus - g.degree(v.id) - v.marks;
}

long euler_characteristic_fiber(const DualGraph& g) {
  long chi = 0;
  for (const auto& v : g.vertices()) chi += v.multiplicity * punctured_euler_characteristic(g, v);
  return chi;
}

ZetaFunction zeta_function(const DualGraph& g) {
  std::map<long, long> exponents;
  for (const auto& v : g.vertices()) exponents[v.multiplicity] -= punctured_euler_characteristic(g, v);
  ZetaFunction zeta;
  for (const auto& [m, e] : exponents)
    if (e != 0) zeta.push_back({m, e});
  return zeta;
}

std::string to_string(const ZetaFunction& zeta) {
  if (zeta.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    if (i) os << " * ";
    os << "(1 - t";
    if (zeta[i].multiplicity != 1) os << '^' << zeta[i].multiplicity;
    os << ")^" << zeta[i].exponent;
  }
  return os.str();
}

DualGraph tate_ngon(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "a Tate n-gon needs n >= 1");
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    vertices.push_back({"v" + std::to_string(i), 0, 1, 0});
    edges.push_back({"e" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string((i + 1) % n)});
  }
  return DualGraph("tate-" + std::to_string(n), std::move(vertices), std::move(edges));
}

DualGraph good_reduction(long genus) {
  if (genus < 0) throw Error(ErrorCode::InvalidArgument, "genus must be non-negative");
  return DualGraph("good-reduction-" + std::to_string(genus), {{"v0", genus, 1, 0}}, {});
}

}  // namespace logkn::degen
