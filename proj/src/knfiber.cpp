#include "logkn/knfiber.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include "logkn/error.hpp"

namespace logkn::knfiber {

namespace {

using degen::DualGraph;

std::string_view kind_name(BasisKind kind) {
  switch (kind) {
    case BasisKind::HandleA: return "a";
    case BasisKind::HandleB: return "b";
    case BasisKind::CycleAlpha: return "alpha";
    case BasisKind::CycleBeta: return "beta";
    case BasisKind::Boundary: return "d";
  }
  return "?";
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

struct TreeStep {
  std::size_t to;
  std::size_t edge;
  int sign;  // +1 when the step runs tail -> head
};

std::vector<Integer> zero_vector(std::size_t n) { return std::vector<Integer>(n, 0); }

// I + sum_k coeff(k) M^k over k >= 1 while M^k != 0;
// nullopt if M is not nilpotent or a term is not integral.
std::optional<IntegerMatrix> nilpotent_series(const IntegerMatrix& m,
                                              const std::function<mpq_class(std::size_t)>& coeff) {
  if (!m.is_square()) return std::nullopt;
  auto result = IntegerMatrix::identity(m.rows());
  auto p = m;
  for (std::size_t k = 1; k <= m.rows() + 1; ++k) {
    if (p.is_zero()) return result;
    const mpq_class c = coeff(k);
    for (std::size_t r = 0; r < p.rows(); ++r) {
      for (std::size_t s = 0; s < p.cols(); ++s) {
        mpq_class term = c * mpq_class(p(r, s));
        term.canonicalize();
        if (term.get_den() != 1) return std::nullopt;
        result(r, s) += term.get_num();
      }
    }
    p = p * m;
  }
  return p.is_zero() ? std::optional<IntegerMatrix>(result) : std::nullopt;
}

// Accumulated argument of f over t in [0, 1], in turns.
long winding_number(const std::function<std::complex<double>(double)>& f, int steps) {
  double turns = 0.0;
  auto prev = f(0.0);
  for (int k = 1; k <= steps; ++k) {
    const auto cur = f(static_cast<double>(k) / steps);
    turns += std::arg(cur / prev);
    prev = cur;
  }
  return std::lround(turns / (2.0 * std::numbers::pi));
}

HomologySummary expected_tate_fiber() {
  HomologySummary h;
  h.groups = {{1, {}}, {2, {}}, {1, {}}};
  return h;
}

InvarianceCheck make_check(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail)};
}

}  // namespace

std::string to_string(const BasisLabel& label) {
  std::string s(kind_name(label.kind));
  s += '(' + label.ref;
  if (label.kind == BasisKind::HandleA || label.kind == BasisKind::HandleB ||
      label.kind == BasisKind::Boundary) {
    s += ',' + std::to_string(label.index);
  }
  return s + ')';
}

std::optional<std::size_t> FiberSurface::index_of(const BasisLabel& label) const {
  const auto it = std::find(basis.begin(), basis.end(), label);
  if (it == basis.end()) return std::nullopt;
  return static_cast<std::size_t>(it - basis.begin());
}

std::vector<Integer> FiberSurface::coordinates_of(const BasisLabel& label) const {
  auto v = zero_vector(rank());
  if (const auto i = index_of(label)) {
    v[*i] = 1;
    return v;
  }
  if (eliminated_boundary && *eliminated_boundary == label) {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i].kind == BasisKind::Boundary) v[i] = -1;
    return v;
  }
  throw Error(ErrorCode::UnknownReference, "no homology class " + to_string(label));
}

const std::vector<Integer>& FiberSurface::node_class(const std::string& edge_id) const {
  const auto it = std::find(node_ids.begin(), node_ids.end(), edge_id);
  if (it == node_ids.end()) throw Error(ErrorCode::UnknownReference, "no node '" + edge_id + "'");
  return node_classes[static_cast<std::size_t>(it - node_ids.begin())];
}

Integer intersection(const FiberSurface& f, const std::vector<Integer>& x,
                     const std::vector<Integer>& y) {
  const auto jy = f.intersection_form * y;
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * jy[i];
  return s;
}

FiberSurface build_fiber(const DualGraph& g) {
  degen::require_valid(g);
  if (!degen::is_semistable(g)) {
    throw Error(ErrorCode::NotSemistable, "fiber surface needs every multiplicity to be 1");
  }
  const auto& vs = g.vertices();
  const auto& es = g.edges();
  std::map<std::string, std::size_t> vindex;
  for (std::size_t i = 0; i < vs.size(); ++i) vindex[vs[i].id] = i;

  FiberSurface f;
  f.first_betti = g.first_betti();
  f.vertex_genus = g.total_genus();
  f.genus = f.vertex_genus + f.first_betti;
  f.boundary_count = static_cast<std::size_t>(g.total_marks());

  UnionFind uf(vs.size());
  std::vector<std::vector<TreeStep>> tree(vs.size());
  std::vector<std::size_t> cycle_edge_index;
  std::vector<bool> is_tree(es.size(), false);
  for (std::size_t k = 0; k < es.size(); ++k) {
    const auto t = vindex.at(es[k].tail);
    const auto h = vindex.at(es[k].head);
    if (uf.unite(t, h)) {
      is_tree[k] = true;
      tree[t].push_back({h, k, +1});
      tree[h].push_back({t, k, -1});
      f.tree_edges.push_back(es[k].id);
    } else {
      cycle_edge_index.push_back(k);
      f.cycle_edges.push_back(es[k].id);
    }
  }

  for (const auto& v : vs) {
    for (long i = 0; i < v.genus; ++i) {
      f.basis.push_back({BasisKind::HandleA, v.id, static_cast<std::size_t>(i)});
      f.basis.push_back({BasisKind::HandleB, v.id, static_cast<std::size_t>(i)});
    }
  }
  for (const auto& id : f.cycle_edges) {
    f.basis.push_back({BasisKind::CycleAlpha, id, 0});
    f.basis.push_back({BasisKind::CycleBeta, id, 0});
  }
  const std::size_t symplectic_rank = f.basis.size();
  std::vector<BasisLabel> circles;
  for (const auto& v : vs)
    for (long s = 0; s < v.marks; ++s)
      circles.push_back({BasisKind::Boundary, v.id, static_cast<std::size_t>(s)});
  if (!circles.empty()) {
    f.eliminated_boundary = circles.front();
    f.basis.insert(f.basis.end(), circles.begin() + 1, circles.end());
  }

  const std::size_t n = f.basis.size();
  f.intersection_form = IntegerMatrix(n, n);
  for (std::size_t i = 0; i < symplectic_rank; i += 2) {
    f.intersection_form(i, i + 1) = 1;
    f.intersection_form(i + 1, i) = -1;
  }

  // eps[j][k]: coefficient of edge k in the fundamental cycle of cycle edge j.
  std::vector<std::vector<int>> eps(cycle_edge_index.size(), std::vector<int>(es.size(), 0));
  for (std::size_t j = 0; j < cycle_edge_index.size(); ++j) {
    const auto& e = es[cycle_edge_index[j]];
    const auto t = vindex.at(e.tail);
    const auto h = vindex.at(e.head);
    eps[j][cycle_edge_index[j]] = 1;
    // Tree path h -> t: search from h, then read the steps back from t.
    std::vector<std::optional<TreeStep>> came_by(vs.size());
    std::vector<std::size_t> from(vs.size(), vs.size());
    std::vector<bool> seen(vs.size(), false);
    std::vector<std::size_t> stack{h};
    seen[h] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (const auto& step : tree[u]) {
        if (seen[step.to]) continue;
        seen[step.to] = true;
        came_by[step.to] = step;
        from[step.to] = u;
        stack.push_back(step.to);
      }
    }
    for (auto v = t; v != h; v = from[v]) eps[j][came_by[v]->edge] += came_by[v]->sign;
  }

  const auto beta_index = [&](std::size_t j) { return 2 * static_cast<std::size_t>(f.vertex_genus) + 2 * j + 1; };
  std::size_t cycle_pos = 0;
  for (std::size_t k = 0; k < es.size(); ++k) {
    auto c = zero_vector(n);
    if (!is_tree[k]) {
      c[beta_index(cycle_pos++)] = 1;
    } else {
      for (std::size_t j = 0; j < cycle_edge_index.size(); ++j) c[beta_index(j)] += eps[j][k];
      // Boundary circles on the tail side of the cut.
      std::vector<bool> tail_side(vs.size(), false);
      std::vector<std::size_t> stack{vindex.at(es[k].tail)};
      tail_side[stack.front()] = true;
      while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (const auto& step : tree[u]) {
          if (step.edge == k || tail_side[step.to]) continue;
          tail_side[step.to] = true;
          stack.push_back(step.to);
        }
      }
      for (const auto& circle : circles) {
        if (!tail_side[vindex.at(circle.ref)]) continue;
        const auto d = f.coordinates_of(circle);
        for (std::size_t i = 0; i < n; ++i) c[i] -= d[i];
      }
    }
    f.node_ids.push_back(es[k].id);
    f.node_classes.push_back(std::move(c));
  }
  return f;
}

MonodromyReport monodromy(const FiberSurface& f) {
  const std::size_t n = f.rank();
  MonodromyReport r;
  r.T = IntegerMatrix::identity(n);
  for (const auto& c : f.node_classes) {
    // Column i gains <e_i, c> c = (J c)_i c.
    const auto jc = f.intersection_form * c;
    for (std::size_t row = 0; row < n; ++row)
      for (std::size_t col = 0; col < n; ++col) r.T(row, col) += c[row] * jc[col];
  }
  r.N = r.T - IntegerMatrix::identity(n);
  r.rank_n = intlin::rank(r.N);
  r.nilpotency_degree = 1;
  for (auto p = r.N; !p.is_zero() && r.nilpotency_degree <= n; p = p * r.N) ++r.nilpotency_degree;
  r.weights = {f.first_betti, 2 * f.vertex_genus, f.first_betti};
  return r;
}

bool preserves_form(const IntegerMatrix& t, const IntegerMatrix& j) {
  return t.transpose() * j * t == j;
}

std::optional<IntegerMatrix> exp_nilpotent(const IntegerMatrix& n) {
  return nilpotent_series(n, [](std::size_t k) {
    mpz_class fact = 1;
    for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<unsigned long>(i);
    return mpq_class(1, fact);
  });
}

std::optional<IntegerMatrix> log_unipotent(const IntegerMatrix& t) {
  if (!t.is_square()) return std::nullopt;
  auto series = nilpotent_series(t - IntegerMatrix::identity(t.rows()), [](std::size_t k) {
    return mpq_class(k % 2 == 1 ? 1 : -1, static_cast<unsigned long>(k));
  });
  if (series) *series -= IntegerMatrix::identity(t.rows());
  return series;
}

FiberChainModel chain_model(const FiberSurface& f, const MonodromyReport& r) {
  const std::size_t n = f.rank();
  std::vector<std::size_t> dims{1, n};
  std::vector<IntegerMatrix> boundaries{IntegerMatrix(1, n)};
  ChainMap twist{{IntegerMatrix::identity(1), r.T}};
  if (f.closed()) {
    dims.push_back(1);
    boundaries.emplace_back(n, 1);
    twist.components.push_back(IntegerMatrix::identity(1));
  }
  return {ChainComplex(std::move(dims), std::move(boundaries)), std::move(twist)};
}

HomologySummary fiber_homology(const FiberSurface& f) {
  return intlin::homology(chain_model(f, monodromy(f)).complex);
}

HomologySummary total_space_homology(const FiberSurface& f, const MonodromyReport& r) {
  const auto model = chain_model(f, r);
  return intlin::mapping_torus_homology(model.complex, model.twist);
}

std::optional<TransvectionForm> transvection_normal_form(const IntegerMatrix& t) {
  if (t.rows() != 2 || t.cols() != 2) return std::nullopt;
  const auto n = t - IntegerMatrix::identity(2);
  if (n.is_zero()) return TransvectionForm{IntegerMatrix::identity(2), 0};
  if (!(n * n).is_zero()) return std::nullopt;
  // u: primitive generator of im N; f2 completes u to a basis.
  auto u = n.column(0);
  if (u[0] == 0 && u[1] == 0) u = n.column(1);
  const Integer content = gcd(u[0], u[1]);
  u[0] /= content;
  u[1] /= content;
  Integer g, s, r;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(), u[0].get_mpz_t(), u[1].get_mpz_t());
  std::vector<Integer> f2{-r, s};  // det[u f2] = u0 s + u1 r = 1
  const auto image = n * f2;
  const Integer lambda = u[0] != 0 ? Integer(image[0] / u[0]) : Integer(image[1] / u[1]);
  std::vector<Integer> f1 = u;
  Integer shear = lambda;
  if (lambda < 0) {
    f1 = {-u[0], -u[1]};
    shear = -lambda;
  }
  const auto basis = IntegerMatrix::from_columns(2, {f1, f2});
  return TransvectionForm{intlin::unimodular_inverse(basis), shear};
}

bool InvarianceReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const InvarianceCheck& c) { return c.passed; });
}

InvarianceReport blowup_invariance(const DualGraph& g, const degen::BlowupMove& move) {
  degen::require_valid(g);
  const auto h = degen::apply_blowup(g, move);
  InvarianceReport report;
  report.move = degen::describe(move);

  const long chi0 = degen::euler_characteristic_fiber(g);
  const long chi1 = degen::euler_characteristic_fiber(h);
  report.checks.push_back(make_check("euler", chi0 == chi1,
                                     std::to_string(chi0) + " -> " + std::to_string(chi1)));
  const auto z0 = degen::zeta_function(g);
  const auto z1 = degen::zeta_function(h);
  report.checks.push_back(make_check("zeta", z0 == z1, degen::to_string(z0) + " -> " + degen::to_string(z1)));
  report.checks.push_back(make_check("valid", degen::validate(h).empty(), "blown-up graph validates"));

  const auto* smooth = std::get_if<degen::SmoothPointBlowup>(&move);
  if (!smooth || !degen::is_semistable(g)) return report;
  report.full = true;

  const auto f0 = build_fiber(g);
  const auto f1 = build_fiber(h);
  const auto r0 = monodromy(f0);
  const auto r1 = monodromy(f1);
  report.checks.push_back(make_check("genus", f0.genus == f1.genus,
                                     std::to_string(f0.genus) + " -> " + std::to_string(f1.genus)));
  report.checks.push_back(make_check("boundary", f0.boundary_count == f1.boundary_count,
                                     std::to_string(f0.boundary_count) + " -> " +
                                         std::to_string(f1.boundary_count)));
  if (f0.rank() != f1.rank()) {
    report.checks.push_back(make_check("inherited-basis", false, "H_1 ranks differ"));
    return report;
  }

  std::string leaf;
  for (const auto& v : h.vertices())
    if (!g.find_vertex(v.id)) leaf = v.id;
  std::string new_edge;
  for (const auto& e : h.edges())
    if (!g.find_edge(e.id)) new_edge = e.id;
  const BasisLabel moved{BasisKind::Boundary, smooth->vertex,
                         static_cast<std::size_t>(g.find_vertex(smooth->vertex)->marks - 1)};
  const BasisLabel leaf_circle{BasisKind::Boundary, leaf, 0};

  std::vector<std::vector<Integer>> columns;
  for (const auto& label : f0.basis)
    columns.push_back(f1.coordinates_of(smooth->through_mark && label == moved ? leaf_circle : label));
  // Every label but the moved circle maps to itself; sum d = 0 on both sides,
  // so the choice of eliminated circle does not matter.
  const auto p = IntegerMatrix::from_columns(f1.rank(), columns);
  report.checks.push_back(make_check("inherited-basis", intlin::is_unimodular(p) || p.rows() == 0,
                                     "basis change " + intlin::to_string(p)));
  report.checks.push_back(make_check("monodromy", r1.T * p == p * r0.T,
                                     intlin::to_string(r0.T) + " -> " + intlin::to_string(r1.T)));
  report.checks.push_back(make_check("intersection-form",
                                     p.transpose() * f1.intersection_form * p == f0.intersection_form,
                                     "pulled back along the basis change"));

  const auto& c = f1.node_class(new_edge);
  bool node_ok;
  if (smooth->through_mark) {
    auto d = f1.coordinates_of(leaf_circle);
    auto minus = d;
    for (auto& x : minus) x = -x;
    node_ok = c == d || c == minus;
  } else {
    node_ok = std::all_of(c.begin(), c.end(), [](const Integer& x) { return x == 0; });
  }
  report.checks.push_back(make_check("new-node-class", node_ok,
                                     smooth->through_mark ? "parallel to the moved boundary circle"
                                                          : "leaf circle bounds a disk"));
  const auto t0 = total_space_homology(f0, r0);
  const auto t1 = total_space_homology(f1, r1);
  report.checks.push_back(make_check("total-homology", t0 == t1,
                                     intlin::to_string(t0) + " -> " + intlin::to_string(t1)));
  return report;
}

HopfReport hopf_surface() {
  const ChainComplex circle({1, 1}, {IntegerMatrix(1, 1)});
  const ChainComplex sphere3({1, 0, 0, 1}, {IntegerMatrix(1, 0), IntegerMatrix(0, 0), IntegerMatrix(0, 1)});
  const auto fiber = intlin::tensor_product(circle, sphere3);
  return {intlin::homology(fiber), intlin::mapping_torus_homology(fiber, intlin::identity_map(fiber))};
}

TateGluingReport tate_gluing_check() {
  TateGluingReport out;
  const auto rho = [](std::complex<double> tau) { return tau; };
  constexpr int kSteps = 360;
  const auto circle = [](double t) { return std::polar(1.0, 2.0 * std::numbers::pi * t); };
  // Degree of a -> rho(1) a on the seam circle, and winding of rho around the base.
  const long seam_degree = winding_number([&](double t) { return rho(1.0) * circle(t); }, kSteps);
  out.winding = winding_number([&](double t) { return rho(circle(t)); }, kSteps);

  // Cylinder [0, inf] x S^1: 0-cells v0, v1; 1-cells sigma (v0 -> v1), g0, g1;
  // 2-cell F with boundary sigma + g1 - sigma - g0.
  const IntegerMatrix d1{{-1, 0, 0}, {1, 0, 0}};
  const IntegerMatrix d2{{0}, {-1}, {1}};
  // Quotient q: v1 -> v0, g1 -> seam_degree * g; the section picks sigma, g0.
  const IntegerMatrix q0{{1, 1}};
  const IntegerMatrix q1{{1, 0, 0}, {0, 1, seam_degree}};
  const IntegerMatrix s1{{1, 0}, {0, 1}, {0, 0}};
  const ChainComplex quotient({1, 2, 1}, {q0 * d1 * s1, q1 * d2});

  // Transport once around the base: sigma picks up -winding copies of g.
  ChainMap phi{{IntegerMatrix::identity(1), IntegerMatrix{{1, 0}, {-out.winding, 1}}, IntegerMatrix::identity(1)}};
  intlin::check_chain_map(quotient, quotient, phi);
  out.fiber = intlin::homology(quotient);
  out.total = intlin::mapping_torus_homology(quotient, phi);
  out.monodromy = intlin::HomologyCoordinates(quotient, 1).induced(phi.components[1]);

  // Seam map (tau, a) -> (tau, rho(tau) a) on the torus of the seam.
  const ChainComplex seam_torus({1, 2, 1}, {IntegerMatrix(1, 2), IntegerMatrix(2, 1)});
  ChainMap seam{{IntegerMatrix::identity(1), IntegerMatrix{{1, 0}, {out.winding, seam_degree}},
                 IntegerMatrix{{seam_degree}}}};
  out.total_via_seam = intlin::mapping_torus_homology(seam_torus, seam);

  const auto f = build_fiber(degen::tate_ngon(1));
  const auto r = monodromy(f);
  const auto form_q = transvection_normal_form(out.monodromy);
  const auto form_b = transvection_normal_form(r.T);
  if (!form_q || !form_b) return out;
  out.conjugator = intlin::unimodular_inverse(form_b->conjugator) * form_q->conjugator;
  out.orientation_reversed = intlin::determinant(out.conjugator) < 0;
  const bool conjugate =
      out.conjugator * out.monodromy * intlin::unimodular_inverse(out.conjugator) == r.T;
  out.ok = out.fiber == expected_tate_fiber() && out.fiber == fiber_homology(f) &&
           form_q->shear == form_b->shear && form_b->shear == 1 && conjugate &&
           out.total == total_space_homology(f, r) && out.total == out.total_via_seam;
  return out;
}

}  // namespace logkn::knfiber
