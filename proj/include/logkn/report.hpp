#pragma once

// JSON reports shared by the command-line tool and the integration tests.

#include <cstdint>
#include <string>

#include "json.hpp"
#include "logkn/degen.hpp"
#include "logkn/error.hpp"
#include "logkn/etalecmp.hpp"
#include "logkn/knfiber.hpp"
#include "logkn/monoid.hpp"

namespace logkn::report {

using nlohmann::json;

/// Machine integer when it fits, decimal string otherwise.
json integer_json(const Integer& x);
json matrix_json(const intlin::IntegerMatrix& m);
/// [{"degree", "rank", "torsion"}] per degree.
json homology_json(const intlin::HomologySummary& h);
json zeta_json(const degen::ZetaFunction& zeta);
json error_json(const Error& e);

/// Full report for semistable graphs; chi and zeta with a warning otherwise.
/// Throws InvalidGraph on an invalid graph.
json analysis(const degen::DualGraph& g);
json invariance(const knfiber::InvarianceReport& r);
json chart_from_generators(const monoid::FsMonoid& p);
json chart_from_multiplicities(const monoid::MonoidHom& f);
json hopf();
json tate_gluing();
/// Every 1 <= |I| <= 4 and nonempty L, plus the empty-L rejection.
json blowfiber_suite(std::size_t samples, std::uint64_t seed);
json blowfiber_case(std::size_t index_count, const std::vector<std::size_t>& log_indices,
                    std::size_t samples, std::uint64_t seed);
json etale_table(const etalecmp::CohomologyTable& t);
json log_point_comparison(std::size_t r, long n);
json mapping_torus_comparison(const degen::DualGraph& g, long n);

/// Aligned "path  value" lines, one per leaf.
std::string pretty(const json& j);

}  // namespace logkn::report
