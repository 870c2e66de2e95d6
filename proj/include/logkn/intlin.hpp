#pragma once

// Exact integer linear algebra: matrices over Z (GMP integers), Smith normal
// form, chain complexes and their homology, mapping cones and mapping tori,
// and homology with Z/n coefficients.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace logkn {

using Integer = mpz_class;

}  // namespace logkn

namespace logkn::intlin {

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);
  /// Builds a rows x cols.size() matrix whose j-th column is cols[j].
  static IntegerMatrix from_columns(std::size_t rows,
                                    const std::vector<std::vector<Integer>>& cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::vector<Integer> column(std::size_t c) const;
  std::vector<Integer> row(std::size_t r) const;
  IntegerMatrix transpose() const;
  bool is_zero() const;
  bool is_diagonal() const;

  IntegerMatrix& operator+=(const IntegerMatrix& other);
  IntegerMatrix& operator-=(const IntegerMatrix& other);
  IntegerMatrix& operator*=(const Integer& scalar);

  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntegerMatrix operator+(IntegerMatrix a, const IntegerMatrix& b);
IntegerMatrix operator-(IntegerMatrix a, const IntegerMatrix& b);
IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
std::vector<Integer> operator*(const IntegerMatrix& a, const std::vector<Integer>& x);

IntegerMatrix hstack(const IntegerMatrix& left, const IntegerMatrix& right);
IntegerMatrix vstack(const IntegerMatrix& top, const IntegerMatrix& bottom);
/// [[a, b], [c, d]]; block shapes must agree.
IntegerMatrix block(const IntegerMatrix& a, const IntegerMatrix& b,
                    const IntegerMatrix& c, const IntegerMatrix& d);

Integer determinant(const IntegerMatrix& a);
std::size_t rank(const IntegerMatrix& a);
bool is_unimodular(const IntegerMatrix& a);
/// Throws InvalidArgument unless a is square with determinant +-1.
IntegerMatrix unimodular_inverse(const IntegerMatrix& a);
std::string to_string(const IntegerMatrix& a);

/// U * A * V = S with U, V unimodular and S diagonal, d1 | d2 | ... , di >= 0.
struct SmithDecomposition {
  IntegerMatrix U;
  IntegerMatrix S;
  IntegerMatrix V;

  /// The min(rows, cols) diagonal entries of S.
  std::vector<Integer> diagonal() const;
  std::size_t rank() const;
};

SmithDecomposition smith_normal_form(const IntegerMatrix& a);

struct SmithWithInverses {
  SmithDecomposition snf;
  IntegerMatrix U_inv;
  IntegerMatrix V_inv;
};

SmithWithInverses smith_normal_form_with_inverses(const IntegerMatrix& a);

/// Nonzero diagonal entries of the Smith form.
std::vector<Integer> invariant_factors(const IntegerMatrix& a);

/// Columns form a Z-basis of {x : A x = 0}.
IntegerMatrix kernel_basis(const IntegerMatrix& a);

/// Columns form a Z-basis of the lattice spanned by the columns of
/// `generators` (zero columns allowed).
IntegerMatrix lattice_basis(const IntegerMatrix& generators);

/// Integer X with basis * X = targets, if one exists. `basis` must have full
/// column rank.
std::optional<IntegerMatrix> solve_in_lattice(const IntegerMatrix& basis,
                                              const IntegerMatrix& targets);

struct HomologyGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // invariant factors >= 2, divisibility chain

  friend bool operator==(const HomologyGroup& a, const HomologyGroup& b);
};

struct HomologySummary {
  std::vector<HomologyGroup> groups;  // index = degree

  std::size_t size() const noexcept { return groups.size(); }
  const HomologyGroup& operator[](std::size_t n) const { return groups[n]; }
  std::vector<std::size_t> betti() const;
  /// Drops trailing zero groups.
  HomologySummary trimmed() const;

  friend bool operator==(const HomologySummary& a, const HomologySummary& b);
};

std::string to_string(const HomologySummary& h);

/// Free abelian chain complex C_0 <- C_1 <- ... <- C_top. boundary(n) is the
/// matrix of d_n : C_n -> C_{n-1}, of shape dim(n-1) x dim(n).
class ChainComplex {
 public:
  ChainComplex() = default;
  /// Throws MalformedComplex when shapes disagree or d_n d_{n+1} != 0.
  ChainComplex(std::vector<std::size_t> dims, std::vector<IntegerMatrix> boundaries);

  std::size_t top_degree() const noexcept { return dims_.empty() ? 0 : dims_.size() - 1; }
  std::size_t length() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t n) const noexcept { return n < dims_.size() ? dims_[n] : 0; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }

  /// d_n for any n >= 0; zero matrices outside 1..top.
  IntegerMatrix boundary(std::size_t n) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<IntegerMatrix> boundaries_;  // boundaries_[n-1] = d_n
};

/// Degreewise components T_n : C_n -> C_n (or C_n -> D_n for maps between
/// different complexes).
struct ChainMap {
  std::vector<IntegerMatrix> components;
};

ChainMap identity_map(const ChainComplex& c);

/// Throws NotChainMap unless T d = d T in every degree.
void check_chain_map(const ChainComplex& source, const ChainComplex& target, const ChainMap& f);

HomologySummary homology(const ChainComplex& c);

/// Cone(f)_n = C_{n-1} (+) D_n with d(a, b) = (-d a, f a + d b).
ChainComplex mapping_cone(const ChainComplex& source, const ChainComplex& target,
                          const ChainMap& f);

/// Algebraic mapping torus: the cone of (id - T) on C.
ChainComplex mapping_torus_complex(const ChainComplex& c, const ChainMap& t);

HomologySummary mapping_torus_homology(const ChainComplex& c, const ChainMap& t);

/// Rank over Q of the endomorphism of H_n(C; Q) induced by f.
std::size_t induced_rank(const ChainComplex& c, const ChainMap& f, std::size_t n);

/// Wang bookkeeping: betti_n(M) = (b_n - r_n) + (b_{n-1} - r_{n-1}), with
/// r_k the rank of T_* - id on H_k(C; Q).
bool wang_ranks_consistent(const ChainComplex& c, const ChainMap& t,
                           const HomologySummary& torus);

ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b);

/// Cochain complex Hom(C, Z) regraded as a chain complex: degree k holds
/// C^{top-k}, with boundary the transpose of d_{top-k+1}.
ChainComplex dual_complex(const ChainComplex& c);

/// A finite Z/n-module as a list of cyclic orders, each > 1 and dividing n.
struct ModularGroup {
  std::vector<Integer> cyclic_orders;

  /// Number of Z/n summands.
  std::size_t free_rank(const Integer& modulus) const;
  Integer order() const;
  friend bool operator==(const ModularGroup& a, const ModularGroup& b);
};

/// H_*(C (x) Z/n), computed from the mod-n reduced boundary matrices.
std::vector<ModularGroup> homology_mod(const ChainComplex& c, const Integer& modulus);

/// H^*(C; Z/n) = H_*(Hom(C, Z/n)).
std::vector<ModularGroup> cohomology_mod(const ChainComplex& c, const Integer& modulus);

/// Coordinates on the free part of H_n(C): maps cycles to coordinate vectors
/// and coordinate basis vectors back to representative cycles.
class HomologyCoordinates {
 public:
  HomologyCoordinates(const ChainComplex& c, std::size_t degree);

  std::size_t rank() const noexcept { return rank_; }
  bool is_cycle(const std::vector<Integer>& chain) const;
  /// Throws InvalidArgument if `chain` is not a cycle.
  std::vector<Integer> coordinates(const std::vector<Integer>& chain) const;
  std::vector<Integer> representative(std::size_t j) const;
  /// Matrix of the map induced on the free part by a degree-n chain map
  /// component (columns are images of the basis).
  IntegerMatrix induced(const IntegerMatrix& component) const;

 private:
  IntegerMatrix boundary_out_;  // d_n
  IntegerMatrix cycles_;        // columns: basis of ker d_n
  IntegerMatrix u_;             // Smith transform of boundaries in cycle coords
  IntegerMatrix u_inv_;
  std::size_t boundary_rank_ = 0;
  std::size_t rank_ = 0;
};

}  // namespace logkn::intlin
