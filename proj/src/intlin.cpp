#include "logkn/intlin.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "logkn/error.hpp"

namespace logkn {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedComplex: return "MalformedComplex";
    case ErrorCode::NotChainMap: return "NotChainMap";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::EmptyMultiplicity: return "EmptyMultiplicity";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CenterNotInDivisor: return "CenterNotInDivisor";
    case ErrorCode::EmptyModel: return "EmptyModel";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::UnknownReference: return "UnknownReference";
    case ErrorCode::NoMarkToMove: return "NoMarkToMove";
    case ErrorCode::NotSemistable: return "NotSemistable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace logkn

namespace logkn::intlin {

namespace {

void require_same_shape(const IntegerMatrix& a, const IntegerMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": shape mismatch");
  }
}

}  // namespace

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    }
    for (long v : r) data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_columns(std::size_t rows,
                                          const std::vector<std::vector<Integer>>& cols) {
  IntegerMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) {
      throw Error(ErrorCode::DimensionMismatch, "column length mismatch");
    }
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

std::vector<Integer> IntegerMatrix::column(std::size_t c) const {
  std::vector<Integer> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
  return out;
}

std::vector<Integer> IntegerMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

bool IntegerMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

IntegerMatrix& IntegerMatrix::operator+=(const IntegerMatrix& other) {
  require_same_shape(*this, other, "matrix sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

IntegerMatrix& IntegerMatrix::operator-=(const IntegerMatrix& other) {
  require_same_shape(*this, other, "matrix difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

IntegerMatrix& IntegerMatrix::operator*=(const Integer& scalar) {
  for (auto& v : data_) v *= scalar;
  return *this;
}

bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t k = 0; k < a.data_.size(); ++k)
    if (a.data_[k] != b.data_[k]) return false;
  return true;
}

IntegerMatrix operator+(IntegerMatrix a, const IntegerMatrix& b) { return a += b; }
IntegerMatrix operator-(IntegerMatrix a, const IntegerMatrix& b) { return a -= b; }

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  IntegerMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::vector<Integer> operator*(const IntegerMatrix& a, const std::vector<Integer>& x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  std::vector<Integer> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) y[i] += a(i, k) * x[k];
  return y;
}

IntegerMatrix hstack(const IntegerMatrix& left, const IntegerMatrix& right) {
  if (left.rows() != right.rows()) throw Error(ErrorCode::DimensionMismatch, "hstack");
  IntegerMatrix m(left.rows(), left.cols() + right.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < left.cols(); ++j) m(i, j) = left(i, j);
    for (std::size_t j = 0; j < right.cols(); ++j) m(i, left.cols() + j) = right(i, j);
  }
  return m;
}

IntegerMatrix vstack(const IntegerMatrix& top, const IntegerMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw Error(ErrorCode::DimensionMismatch, "vstack");
  IntegerMatrix m(top.rows() + bottom.rows(), top.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < top.rows(); ++i) m(i, j) = top(i, j);
    for (std::size_t i = 0; i < bottom.rows(); ++i) m(top.rows() + i, j) = bottom(i, j);
  }
  return m;
}

IntegerMatrix block(const IntegerMatrix& a, const IntegerMatrix& b, const IntegerMatrix& c,
                    const IntegerMatrix& d) {
  return vstack(hstack(a, b), hstack(c, d));
}

// Bareiss fraction-free elimination.
Integer determinant(const IntegerMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntegerMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntegerMatrix& a) {
  IntegerMatrix m = a;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Integer g = gcd(m(r, c), m(i, c));
      Integer fr = m(i, c) / g;
      Integer fi = m(r, c) / g;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) * fi - m(r, j) * fr;
    }
    ++r;
  }
  return r;
}

bool is_unimodular(const IntegerMatrix& a) {
  if (!a.is_square()) return false;
  return abs(determinant(a)) == 1;
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& a) {
  if (!is_unimodular(a)) throw Error(ErrorCode::InvalidArgument, "matrix is not unimodular");
  // U A V = I, so A^{-1} = V U.
  const auto snf = smith_normal_form(a);
  return snf.V * snf.U;
}

std::string to_string(const IntegerMatrix& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) os << ", ";
      os << a(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

// Row operations on A are mirrored on U (left transform) and, inverted, on
// U_inv; column operations on V and V_inv likewise.
struct SmithWork {
  IntegerMatrix a, u, u_inv, v, v_inv;

  explicit SmithWork(const IntegerMatrix& input)
      : a(input),
        u(IntegerMatrix::identity(input.rows())),
        u_inv(IntegerMatrix::identity(input.rows())),
        v(IntegerMatrix::identity(input.cols())),
        v_inv(IntegerMatrix::identity(input.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
    for (std::size_t r = 0; r < u_inv.rows(); ++r) std::swap(u_inv(r, i), u_inv(r, j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
    for (std::size_t c = 0; c < v_inv.cols(); ++c) std::swap(v_inv(i, c), v_inv(j, c));
  }
  // row dst += k * row src
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < a.cols(); ++c) a(dst, c) += k * a(src, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(dst, c) += k * u(src, c);
    for (std::size_t r = 0; r < u_inv.rows(); ++r) u_inv(r, src) -= k * u_inv(r, dst);
  }
  // col dst += k * col src
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, dst) += k * a(r, src);
    for (std::size_t r = 0; r < v.rows(); ++r) v(r, dst) += k * v(r, src);
    for (std::size_t c = 0; c < v_inv.cols(); ++c) v_inv(src, c) -= k * v_inv(dst, c);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
    for (std::size_t r = 0; r < u_inv.rows(); ++r) u_inv(r, i) = -u_inv(r, i);
  }

  void run() {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      for (;;) {
        // smallest nonzero |entry| of the trailing block becomes the pivot
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < m; ++i)
          for (std::size_t j = t; j < n; ++j) {
            if (a(i, j) == 0) continue;
            if (!found || mpz_cmpabs(a(i, j).get_mpz_t(), a(pi, pj).get_mpz_t()) < 0) {
              found = true;
              pi = i;
              pj = j;
            }
          }
        if (!found) return;
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a(i, t) == 0) continue;
          Integer q;
          mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
          add_row(i, t, -q);
          if (a(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a(t, j) == 0) continue;
          Integer q;
          mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
          add_col(j, t, -q);
          if (a(t, j) != 0) clean = false;
        }
        if (!clean) continue;

        // divisibility: pull an offending row into the pivot row and retry
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
              add_row(t, i, 1);
              divides = false;
              break;
            }
        if (divides) break;
      }
      if (a(t, t) < 0) negate_row(t);
    }
  }
};

}  // namespace

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d(std::min(S.rows(), S.cols()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = S(i, i);
  return d;
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (const auto& d : diagonal())
    if (d != 0) ++r;
  return r;
}

SmithWithInverses smith_normal_form_with_inverses(const IntegerMatrix& a) {
  SmithWork w(a);
  w.run();
  return {{std::move(w.u), std::move(w.a), std::move(w.v)}, std::move(w.u_inv),
          std::move(w.v_inv)};
}

SmithDecomposition smith_normal_form(const IntegerMatrix& a) {
  return smith_normal_form_with_inverses(a).snf;
}

std::vector<Integer> invariant_factors(const IntegerMatrix& a) {
  std::vector<Integer> out;
  for (auto& d : smith_normal_form(a).diagonal())
    if (d != 0) out.push_back(d);
  return out;
}

IntegerMatrix kernel_basis(const IntegerMatrix& a) {
  const auto snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  IntegerMatrix k(a.cols(), a.cols() - r);
  for (std::size_t j = r; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) k(i, j - r) = snf.V(i, j);
  return k;
}

IntegerMatrix lattice_basis(const IntegerMatrix& generators) {
  // G V = U^{-1} S, so the lattice is spanned by s_i * (column i of U^{-1}).
  const auto w = smith_normal_form_with_inverses(generators);
  const auto diag = w.snf.diagonal();
  const std::size_t r = w.snf.rank();
  IntegerMatrix b(generators.rows(), r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < generators.rows(); ++i) b(i, j) = w.U_inv(i, j) * diag[j];
  return b;
}

std::optional<IntegerMatrix> solve_in_lattice(const IntegerMatrix& basis,
                                              const IntegerMatrix& targets) {
  if (basis.rows() != targets.rows()) throw Error(ErrorCode::DimensionMismatch, "solve_in_lattice");
  const auto snf = smith_normal_form(basis);
  const std::size_t r = snf.rank();
  if (r != basis.cols()) {
    throw Error(ErrorCode::InvalidArgument, "solve_in_lattice: basis is not of full column rank");
  }
  const auto diag = snf.diagonal();
  IntegerMatrix y = snf.U * targets;
  IntegerMatrix z(r, targets.cols());
  for (std::size_t j = 0; j < targets.cols(); ++j) {
    for (std::size_t i = r; i < y.rows(); ++i)
      if (y(i, j) != 0) return std::nullopt;
    for (std::size_t i = 0; i < r; ++i) {
      if (!mpz_divisible_p(y(i, j).get_mpz_t(), diag[i].get_mpz_t())) return std::nullopt;
      mpz_divexact(z(i, j).get_mpz_t(), y(i, j).get_mpz_t(), diag[i].get_mpz_t());
    }
  }
  return snf.V * z;
}

// ---------------------------------------------------------------------------
// Homology summaries

bool operator==(const HomologyGroup& a, const HomologyGroup& b) {
  return a.rank == b.rank && a.torsion == b.torsion;
}

std::vector<std::size_t> HomologySummary::betti() const {
  std::vector<std::size_t> b;
  for (const auto& g : groups) b.push_back(g.rank);
  return b;
}

HomologySummary HomologySummary::trimmed() const {
  HomologySummary h = *this;
  while (!h.groups.empty() && h.groups.back().rank == 0 && h.groups.back().torsion.empty())
    h.groups.pop_back();
  return h;
}

bool operator==(const HomologySummary& a, const HomologySummary& b) {
  const auto ta = a.trimmed();
  const auto tb = b.trimmed();
  return ta.groups == tb.groups;
}

std::string to_string(const HomologySummary& h) {
  std::ostringstream os;
  os << '[';
  for (std::size_t n = 0; n < h.size(); ++n) {
    if (n) os << ", ";
    const auto& g = h[n];
    bool any = false;
    if (g.rank > 0) {
      os << 'Z';
      if (g.rank > 1) os << '^' << g.rank;
      any = true;
    }
    for (const auto& t : g.torsion) {
      if (any) os << " + ";
      os << "Z/" << t.get_str();
      any = true;
    }
    if (!any) os << '0';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Chain complexes

ChainComplex::ChainComplex(std::vector<std::size_t> dims, std::vector<IntegerMatrix> boundaries)
    : dims_(std::move(dims)), boundaries_(std::move(boundaries)) {
  if (dims_.empty()) {
    if (!boundaries_.empty()) throw Error(ErrorCode::MalformedComplex, "boundaries without cells");
    return;
  }
  if (boundaries_.size() != dims_.size() - 1) {
    throw Error(ErrorCode::MalformedComplex, "need exactly one boundary matrix per positive degree");
  }
  for (std::size_t n = 1; n < dims_.size(); ++n) {
    const auto& d = boundaries_[n - 1];
    if (d.rows() != dims_[n - 1] || d.cols() != dims_[n]) {
      throw Error(ErrorCode::MalformedComplex,
                  "boundary d_" + std::to_string(n) + " has the wrong shape");
    }
  }
  for (std::size_t n = 1; n + 1 < dims_.size(); ++n) {
    if (!(boundaries_[n - 1] * boundaries_[n]).is_zero()) {
      throw Error(ErrorCode::MalformedComplex,
                  "d_" + std::to_string(n) + " d_" + std::to_string(n + 1) + " != 0");
    }
  }
}

IntegerMatrix ChainComplex::boundary(std::size_t n) const {
  if (n >= 1 && n < dims_.size()) return boundaries_[n - 1];
  return IntegerMatrix(n == 0 ? 0 : dim(n - 1), dim(n));
}

ChainMap identity_map(const ChainComplex& c) {
  ChainMap f;
  for (std::size_t n = 0; n < c.length(); ++n) f.components.push_back(IntegerMatrix::identity(c.dim(n)));
  return f;
}

void check_chain_map(const ChainComplex& source, const ChainComplex& target, const ChainMap& f) {
  if (f.components.size() != source.length() || source.length() != target.length()) {
    throw Error(ErrorCode::NotChainMap, "chain map has the wrong number of components");
  }
  for (std::size_t n = 0; n < source.length(); ++n) {
    const auto& fn = f.components[n];
    if (fn.rows() != target.dim(n) || fn.cols() != source.dim(n)) {
      throw Error(ErrorCode::NotChainMap, "component " + std::to_string(n) + " has the wrong shape");
    }
  }
  for (std::size_t n = 1; n < source.length(); ++n) {
    if (!(f.components[n - 1] * source.boundary(n) == target.boundary(n) * f.components[n])) {
      throw Error(ErrorCode::NotChainMap,
                  "T d != d T in degree " + std::to_string(n));
    }
  }
}

HomologySummary homology(const ChainComplex& c) {
  const std::size_t len = c.length();
  std::vector<std::size_t> ranks(len + 1, 0);             // ranks[n] = rank d_n
  std::vector<std::vector<Integer>> factors(len + 1);     // invariant factors of d_n
  for (std::size_t n = 1; n < len; ++n) {
    factors[n] = invariant_factors(c.boundary(n));
    ranks[n] = factors[n].size();
  }
  HomologySummary h;
  for (std::size_t n = 0; n < len; ++n) {
    HomologyGroup g;
    g.rank = c.dim(n) - ranks[n] - ranks[n + 1];
    for (const auto& d : factors[n + 1])
      if (d > 1) g.torsion.push_back(d);
    h.groups.push_back(std::move(g));
  }
  return h;
}

ChainComplex mapping_cone(const ChainComplex& source, const ChainComplex& target,
                          const ChainMap& f) {
  check_chain_map(source, target, f);
  const std::size_t len = std::max(source.length() + 1, target.length());
  std::vector<std::size_t> dims(len);
  for (std::size_t n = 0; n < len; ++n)
    dims[n] = (n == 0 ? 0 : source.dim(n - 1)) + target.dim(n);

  auto f_at = [&](std::size_t n) {
    return n < f.components.size() ? f.components[n] : IntegerMatrix(target.dim(n), source.dim(n));
  };

  std::vector<IntegerMatrix> boundaries;
  for (std::size_t n = 1; n < len; ++n) {
    // (C_{n-1} + D_n) -> (C_{n-2} + D_{n-1})
    IntegerMatrix minus_d = source.boundary(n - 1);
    minus_d *= -1;
    IntegerMatrix zero(n >= 2 ? source.dim(n - 2) : 0, target.dim(n));
    boundaries.push_back(block(minus_d, zero, f_at(n - 1), target.boundary(n)));
  }
  return ChainComplex(std::move(dims), std::move(boundaries));
}

ChainComplex mapping_torus_complex(const ChainComplex& c, const ChainMap& t) {
  check_chain_map(c, c, t);
  ChainMap one_minus_t;
  for (std::size_t n = 0; n < c.length(); ++n)
    one_minus_t.components.push_back(IntegerMatrix::identity(c.dim(n)) - t.components[n]);
  return mapping_cone(c, c, one_minus_t);
}

HomologySummary mapping_torus_homology(const ChainComplex& c, const ChainMap& t) {
  return homology(mapping_torus_complex(c, t));
}

std::size_t induced_rank(const ChainComplex& c, const ChainMap& f, std::size_t n) {
  if (n >= c.length()) return 0;
  // rank of f(Z_n) + B_n minus rank of B_n, all over Q
  const IntegerMatrix cycles = kernel_basis(c.boundary(n));
  const IntegerMatrix bounds = c.boundary(n + 1);
  const IntegerMatrix images = f.components[n] * cycles;
  return rank(hstack(images, bounds)) - rank(bounds);
}

bool wang_ranks_consistent(const ChainComplex& c, const ChainMap& t,
                           const HomologySummary& torus) {
  const auto fiber = homology(c);
  ChainMap t_minus_one;
  for (std::size_t n = 0; n < c.length(); ++n)
    t_minus_one.components.push_back(t.components[n] - IntegerMatrix::identity(c.dim(n)));
  std::vector<std::size_t> coker(c.length() + 1, 0), ker(c.length() + 1, 0);
  for (std::size_t n = 0; n < c.length(); ++n) {
    const std::size_t r = induced_rank(c, t_minus_one, n);
    coker[n] = fiber[n].rank - r;
    ker[n] = fiber[n].rank - r;
  }
  for (std::size_t n = 0; n <= c.length(); ++n) {
    const std::size_t expected = coker[n] + (n >= 1 ? ker[n - 1] : 0);
    const std::size_t actual = n < torus.size() ? torus[n].rank : 0;
    if (expected != actual) return false;
  }
  for (std::size_t n = c.length() + 1; n < torus.size(); ++n)
    if (torus[n].rank != 0) return false;
  return true;
}

ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b) {
  if (a.length() == 0 || b.length() == 0) return {};
  const std::size_t len = a.length() + b.length() - 1;
  // degree n is the direct sum over p + q = n of A_p (x) B_q, ordered by p;
  // within a block the basis is e_i (x) f_j in row-major order.
  std::vector<std::vector<std::size_t>> offset(len);
  std::vector<std::size_t> dims(len, 0);
  for (std::size_t n = 0; n < len; ++n) {
    for (std::size_t p = 0; p < a.length(); ++p) {
      offset[n].push_back(dims[n]);
      if (n >= p && n - p < b.length()) dims[n] += a.dim(p) * b.dim(n - p);
    }
  }
  std::vector<IntegerMatrix> boundaries;
  for (std::size_t n = 1; n < len; ++n) {
    IntegerMatrix d(dims[n - 1], dims[n]);
    for (std::size_t p = 0; p < a.length(); ++p) {
      if (n < p || n - p >= b.length()) continue;
      const std::size_t q = n - p;
      const std::size_t nb = b.dim(q);
      // d(x (x) y) = dx (x) y + (-1)^p x (x) dy
      if (p >= 1) {
        const auto da = a.boundary(p);
        for (std::size_t i = 0; i < a.dim(p); ++i)
          for (std::size_t k = 0; k < a.dim(p - 1); ++k) {
            if (da(k, i) == 0) continue;
            for (std::size_t j = 0; j < nb; ++j)
              d(offset[n - 1][p - 1] + k * nb + j, offset[n][p] + i * nb + j) += da(k, i);
          }
      }
      if (q >= 1) {
        const auto db = b.boundary(q);
        const long sign = (p % 2 == 0) ? 1 : -1;
        const std::size_t nb_lower = b.dim(q - 1);
        for (std::size_t i = 0; i < a.dim(p); ++i)
          for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < nb_lower; ++k) {
              if (db(k, j) == 0) continue;
              d(offset[n - 1][p] + i * nb_lower + k, offset[n][p] + i * nb + j) += sign * db(k, j);
            }
      }
    }
    boundaries.push_back(std::move(d));
  }
  return ChainComplex(std::move(dims), std::move(boundaries));
}

ChainComplex dual_complex(const ChainComplex& c) {
  const std::size_t len = c.length();
  if (len == 0) return {};
  const std::size_t top = len - 1;
  std::vector<std::size_t> dims(len);
  for (std::size_t k = 0; k < len; ++k) dims[k] = c.dim(top - k);
  std::vector<IntegerMatrix> boundaries;
  for (std::size_t k = 1; k < len; ++k) boundaries.push_back(c.boundary(top - k + 1).transpose());
  return ChainComplex(std::move(dims), std::move(boundaries));
}

// ---------------------------------------------------------------------------
// Z/n coefficients

std::size_t ModularGroup::free_rank(const Integer& modulus) const {
  return static_cast<std::size_t>(
      std::count_if(cyclic_orders.begin(), cyclic_orders.end(),
                    [&](const Integer& d) { return d == modulus; }));
}

Integer ModularGroup::order() const {
  Integer o = 1;
  for (const auto& d : cyclic_orders) o *= d;
  return o;
}

bool operator==(const ModularGroup& a, const ModularGroup& b) {
  return a.cyclic_orders == b.cyclic_orders;
}

std::vector<ModularGroup> homology_mod(const ChainComplex& c, const Integer& modulus) {
  if (modulus < 2) throw Error(ErrorCode::InvalidArgument, "modulus must be at least 2");
  auto reduce = [&](IntegerMatrix m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) mpz_fdiv_r(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), modulus.get_mpz_t());
    return m;
  };
  std::vector<ModularGroup> out;
  for (std::size_t n = 0; n < c.length(); ++n) {
    const std::size_t cn = c.dim(n);
    if (cn == 0) {
      out.emplace_back();
      continue;
    }
    IntegerMatrix n_id = IntegerMatrix::identity(cn);
    n_id *= modulus;

    // {x in Z^cn : d_n x = 0 mod n}, via the integer kernel of [d_n | n I]
    const IntegerMatrix d_out = reduce(c.boundary(n));
    IntegerMatrix cycle_gens;
    if (d_out.rows() == 0) {
      cycle_gens = IntegerMatrix::identity(cn);
    } else {
      IntegerMatrix n_rows = IntegerMatrix::identity(d_out.rows());
      n_rows *= modulus;
      const IntegerMatrix k = kernel_basis(hstack(d_out, n_rows));
      cycle_gens = IntegerMatrix(cn, k.cols());
      for (std::size_t i = 0; i < cn; ++i)
        for (std::size_t j = 0; j < k.cols(); ++j) cycle_gens(i, j) = k(i, j);
    }
    const IntegerMatrix cycles = lattice_basis(cycle_gens);
    const IntegerMatrix bounds = hstack(reduce(c.boundary(n + 1)), n_id);
    const auto coords = solve_in_lattice(cycles, bounds);
    if (!coords) throw Error(ErrorCode::MalformedComplex, "mod-n boundaries are not cycles");
    ModularGroup g;
    for (const auto& d : invariant_factors(*coords))
      if (d > 1) g.cyclic_orders.push_back(d);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<ModularGroup> cohomology_mod(const ChainComplex& c, const Integer& modulus) {
  auto h = homology_mod(dual_complex(c), modulus);
  std::reverse(h.begin(), h.end());
  return h;
}

// ---------------------------------------------------------------------------
// Homology coordinates

HomologyCoordinates::HomologyCoordinates(const ChainComplex& c, std::size_t degree)
    : boundary_out_(c.boundary(degree)) {
  cycles_ = kernel_basis(boundary_out_);
  const std::size_t k = cycles_.cols();
  if (k == 0) return;
  const auto coords = solve_in_lattice(cycles_, c.boundary(degree + 1));
  if (!coords) throw Error(ErrorCode::MalformedComplex, "boundaries are not cycles");
  const auto w = smith_normal_form_with_inverses(*coords);
  u_ = w.snf.U;
  u_inv_ = w.U_inv;
  boundary_rank_ = w.snf.rank();
  rank_ = k - boundary_rank_;
}

bool HomologyCoordinates::is_cycle(const std::vector<Integer>& chain) const {
  for (const auto& v : boundary_out_ * chain)
    if (v != 0) return false;
  return true;
}

std::vector<Integer> HomologyCoordinates::coordinates(const std::vector<Integer>& chain) const {
  if (!is_cycle(chain)) throw Error(ErrorCode::InvalidArgument, "chain is not a cycle");
  if (rank_ == 0) return {};
  IntegerMatrix z(chain.size(), 1);
  for (std::size_t i = 0; i < chain.size(); ++i) z(i, 0) = chain[i];
  const auto y = solve_in_lattice(cycles_, z);
  if (!y) throw Error(ErrorCode::InvalidArgument, "cycle outside the cycle lattice");
  const IntegerMatrix w = u_ * *y;
  std::vector<Integer> out(rank_);
  for (std::size_t j = 0; j < rank_; ++j) out[j] = w(boundary_rank_ + j, 0);
  return out;
}

std::vector<Integer> HomologyCoordinates::representative(std::size_t j) const {
  return cycles_ * u_inv_.column(boundary_rank_ + j);
}

IntegerMatrix HomologyCoordinates::induced(const IntegerMatrix& component) const {
  std::vector<std::vector<Integer>> cols;
  for (std::size_t j = 0; j < rank_; ++j) cols.push_back(coordinates(component * representative(j)));
  return IntegerMatrix::from_columns(rank_, cols);
}

}  // namespace logkn::intlin
