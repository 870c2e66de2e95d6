#pragma once

// Finite-coefficient shadows of the comparison between Kato-Nakayama space
// cohomology and Kummer-etale (profinite group) cohomology: log points and
// mapping tori of semistable curve degenerations.

#include <cstddef>
#include <vector>

#include "logkn/degen.hpp"
#include "logkn/intlin.hpp"

namespace logkn::etalecmp {

using intlin::ModularGroup;

/// H^i(-; Z/n) per degree, each group in invariant-factor form.
struct CohomologyTable {
  Integer modulus;
  std::vector<ModularGroup> degrees;

  /// Number of Z/n summands per degree.
  std::vector<std::size_t> ranks() const;
  CohomologyTable trimmed() const;

  friend bool operator==(const CohomologyTable& a, const CohomologyTable& b);
};

/// Invariant-factor form of a direct sum of cyclic groups.
ModularGroup canonical(const ModularGroup& g);

/// (S^1)^r: binomial(r, i) copies of Z/n in degree i.
CohomologyTable torus_cohomology_mod_n(std::size_t r, long n);

/// Koszul resolution of Z over Z[Z^r] tensored down to Z: degree i has one
/// generator per i-subset S, d(e_S) = sum_p (-1)^p (a_{S_p} - 1) e_{S minus S_p},
/// where generator j acts on the coefficients by multiplication by a_j.
intlin::ChainComplex koszul_complex(std::size_t r, const std::vector<long>& action);

/// H^*(Z^r; Z/n) with trivial action, from the Koszul complex. Continuous
/// cohomology of the profinite completion with finite coefficients agrees.
CohomologyTable group_cohomology_Zr_mod_n(std::size_t r, long n);
CohomologyTable group_cohomology_Zr_mod_n(std::size_t r, long n, const std::vector<long>& action);

bool compare_log_point(std::size_t r, long n);

/// H^i(M; Z/n) = Hom(H_i, Z/n) + Ext(H_{i-1}, Z/n).
CohomologyTable universal_coefficients(const intlin::HomologySummary& h, long n);

struct MappingTorusComparison {
  CohomologyTable from_integral;  // universal coefficients on H_*(M; Z)
  CohomologyTable direct;         // mod-n cohomology of the mapping cone complex
  Integer h1_order;               // |H^1(M; Z/n)|, direct
  Integer torsor_count;           // |Hom(H_1(M), Z/n)|
  bool consistent = false;
};

/// Requires a semistable graph.
MappingTorusComparison compare_mapping_torus(const degen::DualGraph& g, long n);
bool mapping_torus_mod_n_consistency(const degen::DualGraph& g, long n);

}  // namespace logkn::etalecmp
