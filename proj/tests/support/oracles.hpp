#pragma once

// Brute-force oracles independent of the library algorithms.

#include <cstdint>
#include <random>
#include <vector>

namespace logkn::testing {

using SmallMatrix = std::vector<std::vector<long>>;

SmallMatrix random_small_matrix(std::mt19937_64& rng, int max_dim, long max_entry);

/// d_k = D_k / D_{k-1}, D_k the gcd of all k x k minors (cofactor expansion).
std::vector<long> invariant_factors_by_minors(const SmallMatrix& a);

/// x in the monoid generated by `gens`, by enumerating coefficient vectors
/// with entries 0..max_coefficient.
bool in_monoid_by_enumeration(const std::vector<std::vector<long>>& gens, const std::vector<long>& x,
                              long max_coefficient);

}  // namespace logkn::testing
