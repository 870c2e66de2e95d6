#include "logkn/etalecmp.hpp"

#include <algorithm>

#include "logkn/error.hpp"
#include "logkn/knfiber.hpp"

namespace logkn::etalecmp {

namespace {

void require_modulus(long n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "modulus must be at least 2");
}

std::vector<std::vector<std::size_t>> subsets(std::size_t r, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> s;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (s.size() == k) {
      out.push_back(s);
      return;
    }
    for (std::size_t i = start; i < r; ++i) {
      s.push_back(i);
      self(self, i + 1);
      s.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

CohomologyTable make_table(long n, const std::vector<ModularGroup>& groups) {
  CohomologyTable t{Integer(n), {}};
  for (const auto& g : groups) t.degrees.push_back(canonical(g));
  return t;
}

}  // namespace

std::vector<std::size_t> CohomologyTable::ranks() const {
  std::vector<std::size_t> r;
  for (const auto& g : degrees) r.push_back(g.free_rank(modulus));
  return r;
}

CohomologyTable CohomologyTable::trimmed() const {
  CohomologyTable t = *this;
  while (!t.degrees.empty() && t.degrees.back().cyclic_orders.empty()) t.degrees.pop_back();
  return t;
}

bool operator==(const CohomologyTable& a, const CohomologyTable& b) {
  return a.modulus == b.modulus && a.trimmed().degrees == b.trimmed().degrees;
}

ModularGroup canonical(const ModularGroup& g) {
  const std::size_t k = g.cyclic_orders.size();
  intlin::IntegerMatrix d(k, k);
  for (std::size_t i = 0; i < k; ++i) d(i, i) = g.cyclic_orders[i];
  ModularGroup out;
  for (const auto& f : intlin::invariant_factors(d))
    if (f > 1) out.cyclic_orders.push_back(f);
  return out;
}

CohomologyTable torus_cohomology_mod_n(std::size_t r, long n) {
  require_modulus(n);
  CohomologyTable t{Integer(n), {}};
  for (std::size_t i = 0; i <= r; ++i) {
    Integer binom;
    mpz_bin_uiui(binom.get_mpz_t(), r, i);
    t.degrees.push_back({std::vector<Integer>(binom.get_ui(), Integer(n))});
  }
  return t;
}

intlin::ChainComplex koszul_complex(std::size_t r, const std::vector<long>& action) {
  if (action.size() != r) throw Error(ErrorCode::DimensionMismatch, "one action entry per generator");
  std::vector<std::vector<std::vector<std::size_t>>> cells;
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i <= r; ++i) {
    cells.push_back(subsets(r, i));
    dims.push_back(cells.back().size());
  }
  std::vector<intlin::IntegerMatrix> boundaries;
  for (std::size_t i = 1; i <= r; ++i) {
    intlin::IntegerMatrix d(dims[i - 1], dims[i]);
    for (std::size_t col = 0; col < dims[i]; ++col) {
      const auto& s = cells[i][col];
      for (std::size_t p = 0; p < s.size(); ++p) {
        auto face = s;
        face.erase(face.begin() + static_cast<long>(p));
        const auto row = static_cast<std::size_t>(
            std::find(cells[i - 1].begin(), cells[i - 1].end(), face) - cells[i - 1].begin());
        d(row, col) += Integer(p % 2 == 0 ? 1 : -1) * Integer(action[s[p]] - 1);
      }
    }
    boundaries.push_back(std::move(d));
  }
  return intlin::ChainComplex(std::move(dims), std::move(boundaries));
}

CohomologyTable group_cohomology_Zr_mod_n(std::size_t r, long n) {
  return group_cohomology_Zr_mod_n(r, n, std::vector<long>(r, 1));
}

CohomologyTable group_cohomology_Zr_mod_n(std::size_t r, long n, const std::vector<long>& action) {
  require_modulus(n);
  return make_table(n, intlin::cohomology_mod(koszul_complex(r, action), Integer(n)));
}

bool compare_log_point(std::size_t r, long n) {
  return torus_cohomology_mod_n(r, n) == group_cohomology_Zr_mod_n(r, n);
}

CohomologyTable universal_coefficients(const intlin::HomologySummary& h, long n) {
  require_modulus(n);
  const Integer mod(n);
  CohomologyTable t{mod, {}};
  for (std::size_t i = 0; i <= h.size(); ++i) {
    ModularGroup g;
    if (i < h.size()) {
      g.cyclic_orders.insert(g.cyclic_orders.end(), h[i].rank, mod);
      for (const auto& tor : h[i].torsion) g.cyclic_orders.push_back(gcd(tor, mod));
    }
    if (i >= 1)
      for (const auto& tor : h[i - 1].torsion) g.cyclic_orders.push_back(gcd(tor, mod));
    t.degrees.push_back(canonical(g));
  }
  return t.trimmed();
}

MappingTorusComparison compare_mapping_torus(const degen::DualGraph& g, long n) {
  require_modulus(n);
  const auto f = knfiber::build_fiber(g);
  const auto r = knfiber::monodromy(f);
  const auto model = knfiber::chain_model(f, r);
  const auto cone = intlin::mapping_torus_complex(model.complex, model.twist);

  MappingTorusComparison out;
  const auto integral = intlin::homology(cone);
  out.from_integral = universal_coefficients(integral, n);
  out.direct = make_table(n, intlin::cohomology_mod(cone, Integer(n)));
  out.h1_order = out.direct.degrees.size() > 1 ? out.direct.degrees[1].order() : Integer(1);
  out.torsor_count = 1;
  if (integral.size() > 1) {
    for (std::size_t k = 0; k < integral[1].rank; ++k) out.torsor_count *= n;
    for (const auto& tor : integral[1].torsion) out.torsor_count *= gcd(tor, Integer(n));
  }
  out.consistent = out.from_integral == out.direct && out.h1_order == out.torsor_count;
  return out;
}

bool mapping_torus_mod_n_consistency(const degen::DualGraph& g, long n) {
  return compare_mapping_torus(g, n).consistent;
}

}  // namespace logkn::etalecmp
