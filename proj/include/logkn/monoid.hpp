#pragma once

// Finitely generated submonoids of Z^n (n <= 4): groupification, saturation,
// exactness and Kummer predicates, good-model charts, and the local
// Kato-Nakayama model Hom(P, R_{>=0} x S^1).

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "logkn/intlin.hpp"

namespace logkn::monoid {

using Vector = std::vector<long>;

inline constexpr std::size_t kMaxAmbientRank = 4;

/// Submonoid of Z^n generated by a finite list of vectors. Zero vectors and
/// duplicates are dropped; generators are kept in lexicographic order.
class FsMonoid {
 public:
  /// Throws RankTooLarge when ambient_rank > 4, DimensionMismatch on a
  /// generator of the wrong length.
  FsMonoid(std::size_t ambient_rank, std::vector<Vector> generators);

  /// N^r with its standard basis.
  static FsMonoid free(std::size_t r);
  /// Parses "1,0;1,1;1,2"; an empty string is the trivial monoid in rank 0.
  static FsMonoid parse(std::string_view text);

  std::size_t ambient_rank() const noexcept { return rank_; }
  const std::vector<Vector>& generators() const noexcept { return generators_; }
  bool is_trivial() const noexcept { return generators_.empty(); }

  /// Generators as the columns of an ambient_rank x count matrix.
  intlin::IntegerMatrix generator_matrix() const;

  /// Exact membership x in P (see monoid.cpp for the procedure).
  bool contains(const Vector& x) const;
  /// x in P^gp.
  bool in_group(const Vector& x) const;
  /// x in the real cone spanned by P.
  bool in_cone(const Vector& x) const;

  friend bool operator==(const FsMonoid& a, const FsMonoid& b);

 private:
  std::size_t rank_;
  std::vector<Vector> generators_;
};

std::string to_string(const FsMonoid& p);

struct GroupStructure {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
};

/// Monoid homomorphism given by an integer matrix on ambient lattices.
class MonoidHom {
 public:
  /// Throws NotAHomomorphism when a source generator does not land in the
  /// target, DimensionMismatch on a badly shaped matrix.
  MonoidHom(FsMonoid source, FsMonoid target, intlin::IntegerMatrix lattice_map);

  const FsMonoid& source() const noexcept { return source_; }
  const FsMonoid& target() const noexcept { return target_; }
  const intlin::IntegerMatrix& lattice_map() const noexcept { return map_; }

  Vector apply(const Vector& x) const;

 private:
  FsMonoid source_;
  FsMonoid target_;
  intlin::IntegerMatrix map_;
};

struct KNLocalModel {
  std::size_t cone_dimension = 0;  // Hom(P, R_{>=0})
  std::size_t torus_rank = 0;      // Hom(P^gp, S^1)
  std::vector<Integer> torsion;    // dual of the torsion of P^gp; always empty here
  Integer component_count = 1;
  bool from_saturated = true;      // false flags a non-saturated input
};

GroupStructure groupification(const FsMonoid& p);

/// P = P^gp intersected with cone(P), decided by enumerating the fundamental
/// parallelepipeds of all simplicial subcones. Throws RankTooLarge.
bool is_saturated(const FsMonoid& p);

/// Every x in P^gp with f(x) in Q already lies in P, checked over the box
/// |x_i| <= exactness_search_radius(f). Throws RankTooLarge.
bool is_exact(const MonoidHom& f);
long exactness_search_radius(const MonoidHom& f);

/// f^gp injective with finite cokernel.
bool is_kummer(const MonoidHom& f);

/// The chart N -> N^r, 1 |-> (a_1, ..., a_r) of u - prod x_i^{a_i}.
/// Throws EmptyMultiplicity when r = 0 or some a_i < 1.
MonoidHom good_model_chart(const std::vector<long>& multiplicities);

/// Parses "a1,...,ar" and builds the chart.
MonoidHom good_model_chart(std::string_view text);

KNLocalModel kn_local_model(const FsMonoid& p);

}  // namespace logkn::monoid
