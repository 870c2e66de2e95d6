#include "logkn/monoid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "logkn/error.hpp"

namespace logkn::monoid {

using intlin::IntegerMatrix;

namespace {

using Rational = mpq_class;
using RationalMatrix = std::vector<std::vector<Rational>>;

IntegerMatrix columns_of(std::size_t rows, const std::vector<Vector>& vs) {
  IntegerMatrix m(rows, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = vs[j][i];
  return m;
}

std::vector<Integer> to_integers(const Vector& v) {
  return {v.begin(), v.end()};
}

// Inverse of a square rational matrix; nullopt when singular.
std::optional<RationalMatrix> inverse(RationalMatrix a) {
  const std::size_t n = a.size();
  RationalMatrix inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Rational pivot = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= pivot;
      inv[c][j] /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Real cone spanned by a finite set of vectors. Membership uses
// Caratheodory: x lies in the cone iff it has nonnegative coordinates with
// respect to some basis of the span chosen among the generators.
class Cone {
 public:
  Cone(std::size_t n, std::vector<Vector> gens) : n_(n), gens_(std::move(gens)) {
    span_rank_ = intlin::rank(columns_of(n_, gens_));
    if (span_rank_ == 0) return;
    for (const auto& s : subsets(gens_.size(), span_rank_)) {
      // left inverse (B^T B)^{-1} B^T of the n x d matrix B
      RationalMatrix btb(span_rank_, std::vector<Rational>(span_rank_, 0));
      for (std::size_t i = 0; i < span_rank_; ++i)
        for (std::size_t j = 0; j < span_rank_; ++j)
          for (std::size_t k = 0; k < n_; ++k) btb[i][j] += gens_[s[i]][k] * gens_[s[j]][k];
      auto inv = inverse(btb);
      if (!inv) continue;
      RationalMatrix left(span_rank_, std::vector<Rational>(n_, 0));
      for (std::size_t i = 0; i < span_rank_; ++i)
        for (std::size_t k = 0; k < n_; ++k)
          for (std::size_t j = 0; j < span_rank_; ++j) left[i][k] += (*inv)[i][j] * gens_[s[j]][k];
      left_inverses_.push_back(std::move(left));
    }
  }

  bool contains(const Vector& x) const {
    if (span_rank_ == 0) return std::all_of(x.begin(), x.end(), [](long v) { return v == 0; });
    auto with_x = gens_;
    with_x.push_back(x);
    if (intlin::rank(columns_of(n_, with_x)) != span_rank_) return false;
    for (const auto& left : left_inverses_) {
      bool nonnegative = true;
      for (std::size_t i = 0; i < span_rank_ && nonnegative; ++i) {
        Rational c = 0;
        for (std::size_t k = 0; k < n_; ++k) c += left[i][k] * x[k];
        if (c < 0) nonnegative = false;
      }
      if (nonnegative) return true;
    }
    return false;
  }

 private:
  std::size_t n_;
  std::vector<Vector> gens_;
  std::size_t span_rank_ = 0;
  std::vector<RationalMatrix> left_inverses_;
};

// Membership in a sublattice of Z^n, via one Smith form of its basis.
class Lattice {
 public:
  Lattice(std::size_t n, const std::vector<Vector>& gens) : n_(n) {
    if (gens.empty()) return;
    basis_ = intlin::lattice_basis(columns_of(n, gens));
    if (basis_.cols() == 0) return;
    const auto snf = intlin::smith_normal_form(basis_);
    u_ = snf.U;
    diag_ = snf.diagonal();
  }

  std::size_t rank() const noexcept { return diag_.size(); }
  const IntegerMatrix& basis() const noexcept { return basis_; }

  bool contains(const Vector& x) const {
    if (diag_.empty()) return std::all_of(x.begin(), x.end(), [](long v) { return v == 0; });
    const auto y = u_ * to_integers(x);
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (i < diag_.size()) {
        if (!mpz_divisible_p(y[i].get_mpz_t(), diag_[i].get_mpz_t())) return false;
      } else if (y[i] != 0) {
        return false;
      }
    }
    return true;
  }

 private:
  std::size_t n_;
  IntegerMatrix basis_;
  IntegerMatrix u_;
  std::vector<Integer> diag_;
};

// Exact membership test for N<g_1, ..., g_k>.
//
// Generators g with -g in cone(P) span the lineality space; they generate a
// group L (a strictly positive relation among them makes every -g a
// nonnegative combination). For the remaining generators r_1..r_m no
// nonzero nonnegative combination lies in the lineality space, so the
// coefficient of r_i is bounded by requiring the residual to stay inside
// cone(r_i, ..., r_m, L). The search enumerates those bounded coefficients
// and finishes with a lattice test against L.
class Membership {
 public:
  explicit Membership(const FsMonoid& p) : n_(p.ambient_rank()), group_(n_, {}) {
    const auto& gens = p.generators();
    Cone full(n_, gens);
    std::vector<Vector> units;
    for (const auto& g : gens) {
      Vector neg(g.size());
      std::transform(g.begin(), g.end(), neg.begin(), [](long v) { return -v; });
      (full.contains(neg) ? units : rest_).push_back(g);
    }
    group_ = Lattice(n_, units);
    for (std::size_t i = 0; i <= rest_.size(); ++i) {
      std::vector<Vector> tail(rest_.begin() + static_cast<std::ptrdiff_t>(i), rest_.end());
      tail.insert(tail.end(), units.begin(), units.end());
      suffix_cones_.emplace_back(n_, std::move(tail));
    }
  }

  bool contains(const Vector& x) const {
    if (!suffix_cones_[0].contains(x)) return false;
    return search(0, x);
  }

 private:
  bool search(std::size_t i, Vector residual) const {
    if (i == rest_.size()) return group_.contains(residual);
    const Vector& r = rest_[i];
    while (suffix_cones_[i].contains(residual)) {
      if (suffix_cones_[i + 1].contains(residual) && search(i + 1, residual)) return true;
      for (std::size_t k = 0; k < n_; ++k) residual[k] -= r[k];
    }
    return false;
  }

  std::size_t n_;
  std::vector<Vector> rest_;
  Lattice group_;
  std::vector<Cone> suffix_cones_;
};

void require_rank(const FsMonoid& p) {
  if (p.ambient_rank() > kMaxAmbientRank) {
    throw Error(ErrorCode::RankTooLarge, "ambient rank exceeds 4");
  }
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

long parse_long(const std::string& s) {
  long v = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::ParseError, "not an integer: '" + s + "'");
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

FsMonoid::FsMonoid(std::size_t ambient_rank, std::vector<Vector> generators)
    : rank_(ambient_rank) {
  if (rank_ > kMaxAmbientRank) throw Error(ErrorCode::RankTooLarge, "ambient rank exceeds 4");
  for (auto& g : generators) {
    if (g.size() != rank_) {
      throw Error(ErrorCode::DimensionMismatch, "generator length differs from the ambient rank");
    }
    if (std::all_of(g.begin(), g.end(), [](long v) { return v == 0; })) continue;
    generators_.push_back(std::move(g));
  }
  std::sort(generators_.begin(), generators_.end());
  generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
}

FsMonoid FsMonoid::free(std::size_t r) {
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < r; ++i) {
    Vector e(r, 0);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return FsMonoid(r, std::move(gens));
}

FsMonoid FsMonoid::parse(std::string_view text) {
  const std::string body = trim(text);
  if (body.empty()) return FsMonoid(0, {});
  std::vector<Vector> gens;
  std::size_t width = 0;
  for (const auto& tuple : split(body, ';')) {
    if (tuple.empty()) throw Error(ErrorCode::ParseError, "empty generator in '" + body + "'");
    Vector v;
    for (const auto& entry : split(tuple, ',')) v.push_back(parse_long(entry));
    if (width == 0) width = v.size();
    if (v.size() != width) throw Error(ErrorCode::ParseError, "generators of different lengths");
    gens.push_back(std::move(v));
  }
  return FsMonoid(width, std::move(gens));
}

IntegerMatrix FsMonoid::generator_matrix() const { return columns_of(rank_, generators_); }

bool FsMonoid::contains(const Vector& x) const {
  if (x.size() != rank_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from the ambient rank");
  return Membership(*this).contains(x);
}

bool FsMonoid::in_group(const Vector& x) const {
  if (x.size() != rank_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from the ambient rank");
  return Lattice(rank_, generators_).contains(x);
}

bool FsMonoid::in_cone(const Vector& x) const {
  if (x.size() != rank_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from the ambient rank");
  return Cone(rank_, generators_).contains(x);
}

bool operator==(const FsMonoid& a, const FsMonoid& b) {
  return a.rank_ == b.rank_ && a.generators_ == b.generators_;
}

std::string to_string(const FsMonoid& p) {
  std::ostringstream os;
  os << '<';
  for (std::size_t j = 0; j < p.generators().size(); ++j) {
    if (j) os << "; ";
    const auto& g = p.generators()[j];
    for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
  }
  os << "> in Z^" << p.ambient_rank();
  return os.str();
}

MonoidHom::MonoidHom(FsMonoid source, FsMonoid target, IntegerMatrix lattice_map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(lattice_map)) {
  if (map_.rows() != target_.ambient_rank() || map_.cols() != source_.ambient_rank()) {
    throw Error(ErrorCode::DimensionMismatch, "lattice map has the wrong shape");
  }
  Membership in_target(target_);
  for (const auto& g : source_.generators()) {
    if (!in_target.contains(apply(g))) {
      throw Error(ErrorCode::NotAHomomorphism, "a source generator does not map into the target monoid");
    }
  }
}

Vector MonoidHom::apply(const Vector& x) const {
  Vector y(map_.rows(), 0);
  for (std::size_t i = 0; i < map_.rows(); ++i)
    for (std::size_t j = 0; j < map_.cols(); ++j) y[i] += map_(i, j).get_si() * x[j];
  return y;
}

GroupStructure groupification(const FsMonoid& p) {
  GroupStructure g;
  g.rank = intlin::rank(p.generator_matrix());
  return g;
}

bool is_saturated(const FsMonoid& p) {
  require_rank(p);
  if (p.is_trivial()) return true;
  const std::size_t n = p.ambient_rank();
  const Lattice group(n, p.generators());
  const std::size_t d = group.rank();
  const IntegerMatrix& basis = group.basis();
  const auto coords = intlin::solve_in_lattice(basis, p.generator_matrix());
  if (!coords) throw Error(ErrorCode::InvalidArgument, "generators outside their own lattice");
  const Membership member(p);

  for (const auto& s : subsets(p.generators().size(), d)) {
    IntegerMatrix m(d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) m(i, j) = (*coords)(i, s[j]);
    if (intlin::determinant(m) == 0) continue;

    RationalMatrix mq(d, std::vector<Rational>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) mq[i][j] = Rational(m(i, j));
    const RationalMatrix m_inv = *inverse(mq);

    // coset representatives of Z^d / M Z^d are U^{-1} k, 0 <= k_i < D_ii
    const auto w = intlin::smith_normal_form_with_inverses(m);
    const auto diag = w.snf.diagonal();
    std::vector<Integer> k(d, 0);
    for (;;) {
      std::vector<Integer> y = w.U_inv * k;
      // fold into the half-open parallelepiped spanned by the columns of M
      std::vector<Integer> shift(d);
      for (std::size_t i = 0; i < d; ++i) {
        Rational lambda = 0;
        for (std::size_t j = 0; j < d; ++j) lambda += m_inv[i][j] * y[j];
        mpz_fdiv_q(shift[i].get_mpz_t(), lambda.get_num_mpz_t(), lambda.get_den_mpz_t());
      }
      const auto back = m * shift;
      for (std::size_t i = 0; i < d; ++i) y[i] -= back[i];
      const auto x = basis * y;
      Vector xv(n);
      for (std::size_t i = 0; i < n; ++i) xv[i] = x[i].get_si();
      if (!member.contains(xv)) return false;

      std::size_t i = 0;
      while (i < d) {
        ++k[i];
        if (k[i] < diag[i]) break;
        k[i] = 0;
        ++i;
      }
      if (i == d) break;
    }
  }
  return true;
}

// Box radius for the exactness search: twice the largest source generator
// coordinate, plus one.
long exactness_search_radius(const MonoidHom& f) {
  long largest = 1;
  for (const auto& g : f.source().generators())
    for (long v : g) largest = std::max(largest, std::labs(v));
  return 2 * largest + 1;
}

bool is_exact(const MonoidHom& f) {
  require_rank(f.source());
  require_rank(f.target());
  const std::size_t n = f.source().ambient_rank();
  if (n == 0) return true;
  const long radius = exactness_search_radius(f);
  const Lattice group(n, f.source().generators());
  const Membership in_source(f.source());
  const Membership in_target(f.target());

  Vector x(n, -radius);
  for (;;) {
    if (group.contains(x) && in_target.contains(f.apply(x)) && !in_source.contains(x)) return false;
    std::size_t i = 0;
    while (i < n) {
      if (++x[i] <= radius) break;
      x[i] = -radius;
      ++i;
    }
    if (i == n) break;
  }
  return true;
}

bool is_kummer(const MonoidHom& f) {
  const Lattice source(f.source().ambient_rank(), f.source().generators());
  const Lattice target(f.target().ambient_rank(), f.target().generators());
  const std::size_t ds = source.rank();
  const std::size_t dt = target.rank();
  if (ds != dt) return false;
  if (ds == 0) return true;
  const auto images = f.lattice_map() * source.basis();
  const auto coords = intlin::solve_in_lattice(target.basis(), images);
  if (!coords) throw Error(ErrorCode::NotAHomomorphism, "image of P^gp is not inside Q^gp");
  // injective with finite cokernel <=> square of full rank
  return intlin::rank(*coords) == ds;
}

MonoidHom good_model_chart(const std::vector<long>& multiplicities) {
  if (multiplicities.empty()) throw Error(ErrorCode::EmptyMultiplicity, "a chart needs at least one multiplicity");
  for (long a : multiplicities)
    if (a < 1) throw Error(ErrorCode::EmptyMultiplicity, "multiplicities must be positive");
  const std::size_t r = multiplicities.size();
  if (r > kMaxAmbientRank) throw Error(ErrorCode::RankTooLarge, "charts are limited to 4 branches");
  IntegerMatrix a(r, 1);
  for (std::size_t i = 0; i < r; ++i) a(i, 0) = multiplicities[i];
  return MonoidHom(FsMonoid::free(1), FsMonoid::free(r), std::move(a));
}

MonoidHom good_model_chart(std::string_view text) {
  std::vector<long> a;
  const std::string body = trim(text);
  if (!body.empty())
    for (const auto& entry : split(body, ',')) a.push_back(parse_long(entry));
  return good_model_chart(a);
}

KNLocalModel kn_local_model(const FsMonoid& p) {
  require_rank(p);
  KNLocalModel model;
  const auto gp = groupification(p);
  model.cone_dimension = gp.rank;
  model.torus_rank = gp.rank;
  model.torsion = gp.torsion;
  model.component_count = 1;
  for (const auto& t : gp.torsion) model.component_count *= t;
  model.from_saturated = is_saturated(p);
  return model;
}

}  // namespace logkn::monoid
