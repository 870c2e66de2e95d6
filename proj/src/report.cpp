#include "logkn/report.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "logkn/blowfiber.hpp"

namespace logkn::report {

namespace {

void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  const bool scalar_array =
      j.is_array() && std::all_of(j.begin(), j.end(), [](const json& x) { return !x.is_object(); });
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !scalar_array) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

json group_json(const intlin::ModularGroup& g) {
  json a = json::array();
  for (const auto& d : g.cyclic_orders) a.push_back(integer_json(d));
  return a;
}

}  // namespace

json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json matrix_json(const intlin::IntegerMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json homology_json(const intlin::HomologySummary& h) {
  json out = json::array();
  for (std::size_t n = 0; n < h.size(); ++n) {
    json torsion = json::array();
    for (const auto& t : h[n].torsion) torsion.push_back(integer_json(t));
    out.push_back({{"degree", n}, {"rank", h[n].rank}, {"torsion", torsion}});
  }
  return out;
}

json zeta_json(const degen::ZetaFunction& zeta) {
  json out = json::array();
  for (const auto& f : zeta) out.push_back({f.multiplicity, f.exponent});
  return out;
}

json error_json(const Error& e) {
  return {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
}

json analysis(const degen::DualGraph& g) {
  degen::require_valid(g);
  const bool semistable = degen::is_semistable(g);
  json out;
  out["input"] = {{"name", g.name()},
                  {"vertices", g.vertices().size()},
                  {"edges", g.edges().size()},
                  {"marks", g.total_marks()}};
  out["semistable"] = semistable;
  out["euler"] = degen::euler_characteristic_fiber(g);
  out["zeta"] = zeta_json(degen::zeta_function(g));
  json warnings = json::array();
  if (semistable) {
    const auto f = knfiber::build_fiber(g);
    const auto r = knfiber::monodromy(f);
    out["fiber"] = {{"genus", f.genus}, {"boundary", f.boundary_count}};
    out["monodromy"] = {{"T", matrix_json(r.T)},
                        {"rankN", r.rank_n},
                        {"weights", {r.weights[0], r.weights[1], r.weights[2]}}};
    out["total_homology"] = homology_json(knfiber::total_space_homology(f, r));
    if (!f.closed()) warnings.push_back("boundary circles present: symplectic checks skipped");
  } else {
    warnings.push_back("non-reduced: fiber surface omitted");
  }
  out["warnings"] = warnings;
  return out;
}

json invariance(const knfiber::InvarianceReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"move", r.move}, {"path", r.full ? "fiber" : "euler-zeta"}, {"passed", r.passed()}, {"checks", checks}};
}

json chart_from_generators(const monoid::FsMonoid& p) {
  const auto gp = monoid::groupification(p);
  const auto kn = monoid::kn_local_model(p);
  json torsion = json::array();
  for (const auto& t : gp.torsion) torsion.push_back(integer_json(t));
  return {{"monoid", monoid::to_string(p)},
          {"saturated", monoid::is_saturated(p)},
          {"group_rank", gp.rank},
          {"group_torsion", torsion},
          {"kn_local_model",
           {{"cone_dimension", kn.cone_dimension},
            {"torus_rank", kn.torus_rank},
            {"components", integer_json(kn.component_count)},
            {"from_saturated", kn.from_saturated}}}};
}

json chart_from_multiplicities(const monoid::MonoidHom& f) {
  json out = chart_from_generators(f.target());
  out["chart"] = matrix_json(f.lattice_map());
  out["exact"] = monoid::is_exact(f);
  out["kummer"] = monoid::is_kummer(f);
  return out;
}

json hopf() {
  const auto h = knfiber::hopf_surface();
  return {{"fiber_homology", homology_json(h.fiber)}, {"total_homology", homology_json(h.total)},
          {"fiber", intlin::to_string(h.fiber)}, {"total", intlin::to_string(h.total)}};
}

json tate_gluing() {
  const auto t = knfiber::tate_gluing_check();
  return {{"ok", t.ok},
          {"fiber_homology", homology_json(t.fiber)},
          {"total_homology", homology_json(t.total)},
          {"winding", t.winding},
          {"monodromy", matrix_json(t.monodromy)},
          {"conjugator", matrix_json(t.conjugator)},
          {"orientation_reversed", t.orientation_reversed}};
}

json blowfiber_case(std::size_t index_count, const std::vector<std::size_t>& log_indices,
                    std::size_t samples, std::uint64_t seed) {
  const auto model = blowfiber::fiber_of_simple_blowup({index_count, log_indices});
  const auto cert = blowfiber::verify_contractibility(model, samples, seed);
  return {{"I", index_count},
          {"L", log_indices},
          {"dimension", model.dimension()},
          {"expected_dimension", log_indices.size() + 2 * (index_count - log_indices.size()) - 1},
          {"nonempty", !model.empty()},
          {"structural", cert.structural_ok},
          {"samples", cert.samples},
          {"violations", cert.violations},
          {"passed", cert.passed()}};
}

json blowfiber_suite(std::size_t samples, std::uint64_t seed) {
  json cases = json::array();
  bool all = true;
  std::uint64_t case_seed = seed;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::size_t> l;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) l.push_back(i);
      auto c = blowfiber_case(n, l, samples, case_seed++);
      all = all && c["passed"].get<bool>() && c["dimension"] == c["expected_dimension"];
      cases.push_back(std::move(c));
    }
  }
  bool rejects_empty = false;
  try {
    blowfiber::fiber_of_simple_blowup({2, {}});
  } catch (const Error& e) {
    rejects_empty = e.code() == ErrorCode::CenterNotInDivisor;
  }
  return {{"cases", cases}, {"empty_center_rejected", rejects_empty}, {"passed", all && rejects_empty}};
}

json etale_table(const etalecmp::CohomologyTable& t) {
  json groups = json::array();
  for (const auto& g : t.degrees) groups.push_back(group_json(g));
  return {{"modulus", integer_json(t.modulus)}, {"ranks", t.ranks()}, {"groups", groups}};
}

json log_point_comparison(std::size_t r, long n) {
  const auto torus = etalecmp::torus_cohomology_mod_n(r, n);
  const auto group = etalecmp::group_cohomology_Zr_mod_n(r, n);
  return {{"r", r}, {"n", n}, {"torus", etale_table(torus)}, {"group", etale_table(group)},
          {"agree", torus == group}};
}

json mapping_torus_comparison(const degen::DualGraph& g, long n) {
  const auto c = etalecmp::compare_mapping_torus(g, n);
  return {{"name", g.name()},
          {"n", n},
          {"universal_coefficients", etale_table(c.from_integral)},
          {"direct", etale_table(c.direct)},
          {"h1_order", integer_json(c.h1_order)},
          {"torsor_count", integer_json(c.torsor_count)},
          {"consistent", c.consistent}};
}

std::string pretty(const json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  return os.str();
}

}  // namespace logkn::report
