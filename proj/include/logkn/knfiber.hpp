#pragma once

// Kato-Nakayama fiber surface of a semistable curve degeneration: H_1 data
// with node circle classes, the monodromy as a product of Dehn twists, the
// total space over S^1 as a mapping torus, blowup invariance checks and two
// hardcoded examples (Tate gluing, Hopf surface).

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "logkn/degen.hpp"
#include "logkn/intlin.hpp"

namespace logkn::knfiber {

using intlin::ChainComplex;
using intlin::ChainMap;
using intlin::HomologySummary;
using intlin::IntegerMatrix;

enum class BasisKind { HandleA, HandleB, CycleAlpha, CycleBeta, Boundary };

/// HandleA/HandleB: ref = vertex id, index = handle number.
/// CycleAlpha/CycleBeta: ref = non-tree edge id, index = 0.
/// Boundary: ref = vertex id, index = mark slot on that vertex.
struct BasisLabel {
  BasisKind kind;
  std::string ref;
  std::size_t index = 0;

  friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

std::string to_string(const BasisLabel& label);

/// Absolute H_1 of the fiber surface in a labeled basis. Basis order: handle
/// pairs per vertex (vertex-id order), then (alpha_j, beta_j) per non-tree
/// edge (edge-id order), then all boundary circles but the first, whose class
/// is minus the sum of the others.
struct FiberSurface {
  long genus = 0;                  // g_F
  std::size_t boundary_count = 0;  // sum of marks
  long first_betti = 0;            // b_1 of the dual graph
  long vertex_genus = 0;           // sum of g_V
  std::vector<BasisLabel> basis;
  std::optional<BasisLabel> eliminated_boundary;
  IntegerMatrix intersection_form;  // J; boundary rows and columns are zero
  std::vector<std::string> tree_edges;
  std::vector<std::string> cycle_edges;
  std::vector<std::string> node_ids;               // all edges, id order
  std::vector<std::vector<Integer>> node_classes;  // [c_e] per node_ids entry

  std::size_t rank() const noexcept { return basis.size(); }
  bool closed() const noexcept { return boundary_count == 0; }
  std::optional<std::size_t> index_of(const BasisLabel& label) const;
  /// Coordinates of a basis label or of the eliminated boundary circle;
  /// throws UnknownReference otherwise.
  std::vector<Integer> coordinates_of(const BasisLabel& label) const;
  const std::vector<Integer>& node_class(const std::string& edge_id) const;
};

/// x^T J y.
Integer intersection(const FiberSurface& f, const std::vector<Integer>& x,
                     const std::vector<Integer>& y);

/// Spanning tree: Kruskal over edges in id order. A tree edge e gets
/// [c_e] = sum_j eps_j(e) beta_j - sum of the boundary circles on the tail
/// side of e, eps_j(e) the signed incidence of e in the fundamental cycle of
/// e_j (traversed tail to head, then back through the tree).
/// Throws NotSemistable on a multiplicity > 1, InvalidGraph on invalid input.
FiberSurface build_fiber(const degen::DualGraph& g);

struct MonodromyReport {
  IntegerMatrix T;  // columns are images of basis vectors
  IntegerMatrix N;  // T - I
  std::size_t rank_n = 0;
  std::size_t nilpotency_degree = 0;  // least k with N^k = 0
  std::array<long, 3> weights{};      // (b_1, 2 sum g_V, b_1)
};

/// T(x) = x + sum_e <x, c_e> c_e: one right-handed twist per node.
MonodromyReport monodromy(const FiberSurface& f);

bool preserves_form(const IntegerMatrix& t, const IntegerMatrix& j);

/// sum_k N^k / k! while N^k != 0; nullopt if N is not nilpotent within
/// dim + 1 steps or a term is not integral.
std::optional<IntegerMatrix> exp_nilpotent(const IntegerMatrix& n);
/// sum_k (-1)^{k+1} (T - I)^k / k under the same conditions.
std::optional<IntegerMatrix> log_unipotent(const IntegerMatrix& t);

/// Minimal CW model of the fiber (one 0-cell, one 1-cell per H_1 basis
/// vector, one 2-cell if closed; all boundaries zero) with the twist as the
/// degree-1 chain map.
struct FiberChainModel {
  ChainComplex complex;
  ChainMap twist;
};

FiberChainModel chain_model(const FiberSurface& f, const MonodromyReport& r);
HomologySummary fiber_homology(const FiberSurface& f);
HomologySummary total_space_homology(const FiberSurface& f, const MonodromyReport& r);

/// P with P T P^{-1} = [[1, k], [0, 1]], k >= 0, for a 2x2 T with
/// (T - I)^2 = 0; nullopt otherwise.
struct TransvectionForm {
  IntegerMatrix conjugator;  // P
  Integer shear;             // k
};

std::optional<TransvectionForm> transvection_normal_form(const IntegerMatrix& t);

struct InvarianceCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct InvarianceReport {
  std::string move;
  bool full = false;  // fiber-level path; otherwise chi and zeta only
  std::vector<InvarianceCheck> checks;

  bool passed() const;
};

/// SmoothPointBlowup on a multiplicity-1 vertex of a semistable graph:
/// compares g_F, boundary count, T under the inherited basis, the new node
/// class and total homology, plus chi and zeta. Any other move: chi and zeta.
InvarianceReport blowup_invariance(const degen::DualGraph& g, const degen::BlowupMove& move);

struct HopfReport {
  HomologySummary fiber;
  HomologySummary total;
};

/// Fiber S^1 x S^3 as the product of minimal CW models; the gluing rotation
/// is isotopic to the identity, so the monodromy chain map is the identity.
HopfReport hopf_surface();

/// Quotient of [0, inf] x S^1 under (0, a) ~ (inf, rho(tau) a), rho(tau) = tau,
/// compared with build_fiber/monodromy on tate_ngon(1).
struct TateGluingReport {
  HomologySummary fiber;
  HomologySummary total;
  HomologySummary total_via_seam;  // mapping torus of the seam map on T^2
  long winding = 0;                // of tau -> rho(tau) around the base
  IntegerMatrix monodromy;         // on H_1 of the quotient
  IntegerMatrix conjugator;        // Q with T_builder = Q T_quotient Q^{-1}
  bool orientation_reversed = false;
  bool ok = false;
};

TateGluingReport tate_gluing_check();

}  // namespace logkn::knfiber
