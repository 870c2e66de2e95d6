#pragma once

// Dual graphs of snc special fibers of curve degenerations, the blowup move
// system on them, and the multiplicity-level invariants (Euler
// characteristic of the nearby fiber, monodromy zeta function).

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace logkn::degen {

struct Vertex {
  std::string id;
  long genus = 0;
  long multiplicity = 1;
  long marks = 0;  // horizontal boundary points on this component

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// A node. `tail` and `head` fix an orientation used for homology bookkeeping;
/// the underlying graph is undirected and loops are allowed.
struct Edge {
  std::string id;
  std::string tail;
  std::string head;

  bool is_loop() const noexcept { return tail == head; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Vertices and edges are kept sorted by id.
class DualGraph {
 public:
  DualGraph() = default;
  DualGraph(std::string name, std::vector<Vertex> vertices, std::vector<Edge> edges);

  const std::string& name() const noexcept { return name_; }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const Vertex* find_vertex(std::string_view id) const;
  const Edge* find_edge(std::string_view id) const;
  /// Loops count twice.
  long degree(std::string_view vertex_id) const;
  long total_genus() const;
  long total_marks() const;
  /// |E| - |V| + 1; meaningful for connected graphs.
  long first_betti() const;

  friend bool operator==(const DualGraph&, const DualGraph&) = default;

 private:
  std::string name_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

enum class GraphErrorKind {
  Empty,
  DuplicateId,
  BadMultiplicity,
  NegativeGenus,
  NegativeMarks,
  UnknownVertex,
  Disconnected,
};

std::string_view to_string(GraphErrorKind kind) noexcept;

struct GraphError {
  GraphErrorKind kind;
  std::string message;
};

/// All violations, in a fixed order; empty means valid.
std::vector<GraphError> validate(const DualGraph& g);
/// Throws InvalidGraph listing the violations.
void require_valid(const DualGraph& g);

bool is_semistable(const DualGraph& g);

struct NodeBlowup {
  std::string edge;
};

struct SmoothPointBlowup {
  std::string vertex;
  bool through_mark = false;
};

using BlowupMove = std::variant<NodeBlowup, SmoothPointBlowup>;

std::string describe(const BlowupMove& move);

/// NodeBlowup(e = (v, w)): e is replaced by v - E - w with E of genus 0 and
/// multiplicity m_v + m_w. SmoothPointBlowup(v): a genus-0 leaf E of
/// multiplicity m_v is attached to v; with through_mark the strict transform
/// of one horizontal point moves from v to E.
/// Throws UnknownReference for a missing id, NoMarkToMove when through_mark
/// is set on a vertex without marks.
DualGraph apply_blowup(const DualGraph& g, const BlowupMove& move);

/// Every move applicable to g: one NodeBlowup per edge, one
/// SmoothPointBlowup per vertex, plus the through-mark variant where
/// marks >= 1.
std::vector<BlowupMove> applicable_moves(const DualGraph& g);

/// chi(V°) = 2 - 2 genus - degree - marks.
long punctured_euler_characteristic(const DualGraph& g, const Vertex& v);

/// Sum over vertices of multiplicity * chi(V°).
long euler_characteristic_fiber(const DualGraph& g);

struct ZetaFactor {
  long multiplicity;  // m in (1 - t^m)
  long exponent;      // e_m = - sum of chi(V°) over vertices with m_V = m

  friend bool operator==(const ZetaFactor&, const ZetaFactor&) = default;
};

/// prod (1 - t^m)^{e_m}, zero exponents dropped, sorted by m.
using ZetaFunction = std::vector<ZetaFactor>;

ZetaFunction zeta_function(const DualGraph& g);
std::string to_string(const ZetaFunction& zeta);

/// Cycle of n rational curves (n = 1: one vertex with a loop).
DualGraph tate_ngon(std::size_t n);
/// A single smooth component of genus g.
DualGraph good_reduction(long genus);

}  // namespace logkn::degen
