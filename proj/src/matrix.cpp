#include "bigres/matrix.hpp"

#include <algorithm>
#include <type_traits>

namespace bigres {

template <class F>
Matrix<F> Matrix<F>::from_columns(const F& field, std::size_t rows,
                                  const std::vector<Vec<F>>& columns) {
  Matrix m(field, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("from_columns: length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

template <class F>
Matrix<F> Matrix<F>::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  Matrix out(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Element& a = (*this)(i, k);
      if (field_.is_zero(a)) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        out(i, j) = field_.add(out(i, j), field_.mul(a, o(k, j)));
    }
  return out;
}

template <class F>
Vec<F> Matrix<F>::operator*(const Vec<F>& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  Vec<F> out(rows_, field_.zero());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (!field_.is_zero(v[k])) out[i] = field_.add(out[i], field_.mul((*this)(i, k), v[k]));
  return out;
}

namespace {

template <class Row, class IsZero>
void trim(Row& r, IsZero is_zero) {
  std::size_t k0 = 0;
  while (k0 < r.v.size() && is_zero(r.v[k0])) ++k0;
  if (k0 == r.v.size()) {
    r.v.clear();
    r.v.shrink_to_fit();
    return;
  }
  if (k0 > 0) {
    r.v.erase(r.v.begin(), r.v.begin() + static_cast<std::ptrdiff_t>(k0));
    r.lo += k0;
  }
  while (is_zero(r.v.back())) r.v.pop_back();
}

// Bucketed forward elimination: rows are filed under their leading column and
// only rows that are nonzero in the current column are touched.
template <class Row, class Ops>
std::vector<Row> bucket_eliminate(std::size_t cols, std::vector<Row> rows, Ops& ops) {
  std::vector<std::vector<std::uint32_t>> buckets(cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!rows[i].v.empty()) buckets[rows[i].lo].push_back(static_cast<std::uint32_t>(i));
  std::vector<Row> out;
  for (std::size_t j = 0; j < cols; ++j) {
    auto& b = buckets[j];
    if (b.empty()) continue;
    std::uint32_t pi = *std::min_element(b.begin(), b.end());
    Row& piv = rows[pi];
    ops.prepare_pivot(piv);
    for (std::uint32_t idx : b) {
      if (idx == pi) continue;
      Row& r = rows[idx];
      ops.eliminate(r, piv);
      if (!r.v.empty()) buckets[r.lo].push_back(idx);
    }
    out.push_back(std::move(piv));
    std::vector<std::uint32_t>().swap(b);
  }
  return out;
}

struct ModPOps {
  const PrimeField& f;
  using Row = Echelon<PrimeField>::Row;

  void prepare_pivot(Row& r) const {
    if (r.v[0] == 1) return;
    std::uint32_t inv = f.inv(r.v[0]);
    for (auto& x : r.v) x = f.mul(x, inv);
  }
  void eliminate(Row& r, const Row& piv) const {
    const std::uint32_t nc = f.neg(r.v[0]);
    const std::size_t n = piv.v.size();
    if (r.v.size() < n) r.v.resize(n, 0);
    std::uint32_t* rv = r.v.data();
    const std::uint32_t* pv = piv.v.data();
    if (f.small_modulus()) {
      for (std::size_t k = 0; k < n; ++k) rv[k] = f.reduce_u32(rv[k] + nc * pv[k]);
    } else {
      for (std::size_t k = 0; k < n; ++k)
        rv[k] = f.reduce(rv[k] + static_cast<std::uint64_t>(nc) * pv[k]);
    }
    trim(r, [](std::uint32_t x) { return x == 0; });
  }
};

struct IntRow {
  std::size_t lo = 0;
  std::vector<mpz_class> v;
};

void make_primitive(IntRow& r) {
  mpz_class g = 0;
  for (const auto& x : r.v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : r.v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Fraction-free elimination on integer rows: r <- (L/g) r - (c/g) piv, then
// the row content is divided out, so entries stay integral and small.
struct IntOps {
  void prepare_pivot(IntRow&) const {}
  void eliminate(IntRow& r, const IntRow& piv) const {
    mpz_class g = gcd(piv.v[0], r.v[0]);
    mpz_class a = piv.v[0] / g;
    mpz_class b = r.v[0] / g;
    const std::size_t n = std::max(r.v.size(), piv.v.size());
    r.v.resize(n, mpz_class(0));
    if (a != 1)
      for (auto& x : r.v) x *= a;
    for (std::size_t k = 0; k < piv.v.size(); ++k) r.v[k] -= b * piv.v[k];
    trim(r, [](const mpz_class& x) { return sgn(x) == 0; });
    make_primitive(r);
  }
};

std::vector<IntRow> to_integer_rows(const RowSystem<RationalField>& rs) {
  std::vector<IntRow> out;
  out.reserve(rs.rows.size());
  for (const auto& entries : rs.rows) {
    IntRow r;
    if (entries.empty()) {
      out.push_back(std::move(r));
      continue;
    }
    std::size_t lo = rs.cols, hi = 0;
    mpz_class den = 1;
    for (const auto& [c, x] : entries) {
      if (sgn(x) == 0) continue;
      lo = std::min(lo, c);
      hi = std::max(hi, c + 1);
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    }
    if (lo >= hi) {
      out.push_back(std::move(r));
      continue;
    }
    std::vector<mpq_class> dense(hi - lo, mpq_class(0));
    for (const auto& [c, x] : entries) dense[c - lo] += x;
    r.lo = lo;
    r.v.resize(hi - lo);
    for (std::size_t k = 0; k < dense.size(); ++k) {
      mpq_class y = dense[k] * den;
      r.v[k] = y.get_num();  // integral by choice of den
    }
    trim(r, [](const mpz_class& x) { return sgn(x) == 0; });
    make_primitive(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Echelon<PrimeField>::Row> to_modp_rows(const RowSystem<PrimeField>& rs) {
  const PrimeField& f = rs.field;
  std::vector<Echelon<PrimeField>::Row> out;
  out.reserve(rs.rows.size());
  for (const auto& entries : rs.rows) {
    Echelon<PrimeField>::Row r;
    std::size_t lo = rs.cols, hi = 0;
    for (const auto& [c, x] : entries)
      if (x != 0) {
        lo = std::min(lo, c);
        hi = std::max(hi, c + 1);
      }
    if (lo < hi) {
      r.lo = lo;
      r.v.assign(hi - lo, 0);
      for (const auto& [c, x] : entries) r.v[c - lo] = f.add(r.v[c - lo], x);
      trim(r, [](std::uint32_t x) { return x == 0; });
    }
    out.push_back(std::move(r));
  }
  return out;
}

template <class F>
RowSystem<F> rows_of(const Matrix<F>& m) {
  RowSystem<F> rs;
  rs.field = m.field();
  rs.cols = m.cols();
  rs.rows.resize(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m.field().is_zero(m(r, c))) rs.rows[r].emplace_back(c, m(r, c));
  return rs;
}

}  // namespace

template <>
Echelon<PrimeField> echelonize(RowSystem<PrimeField> rs) {
  for (const auto& row : rs.rows)
    for (const auto& e : row)
      if (e.first >= rs.cols) throw std::out_of_range("RowSystem entry beyond column count");
  ModPOps ops{rs.field};
  auto rows = bucket_eliminate(rs.cols, to_modp_rows(rs), ops);
  return Echelon<PrimeField>(rs.field, rs.cols, std::move(rows));
}

template <>
Echelon<RationalField> echelonize(RowSystem<RationalField> rs) {
  for (const auto& row : rs.rows)
    for (const auto& e : row)
      if (e.first >= rs.cols) throw std::out_of_range("RowSystem entry beyond column count");
  IntOps ops;
  auto rows = bucket_eliminate(rs.cols, to_integer_rows(rs), ops);
  std::vector<Echelon<RationalField>::Row> out;
  out.reserve(rows.size());
  for (auto& r : rows) {
    Echelon<RationalField>::Row q;
    q.lo = r.lo;
    q.v.reserve(r.v.size());
    for (const auto& x : r.v) {
      mpq_class y(x, r.v[0]);
      y.canonicalize();
      q.v.push_back(std::move(y));
    }
    out.push_back(std::move(q));
  }
  return Echelon<RationalField>(rs.field, rs.cols, std::move(out));
}

template <class F>
Echelon<F> echelonize(const Matrix<F>& m) {
  return echelonize(rows_of(m));
}

template <class F>
std::vector<std::size_t> Echelon<F>::pivots() const {
  std::vector<std::size_t> p;
  p.reserve(rows_.size());
  for (const auto& r : rows_) p.push_back(r.lo);
  return p;
}

template <class F>
std::vector<std::size_t> Echelon<F>::free_columns() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (k < rows_.size() && rows_[k].lo == c) {
      ++k;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

template <class F>
void Echelon<F>::reduce(Vec<F>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("Echelon::reduce: length mismatch");
  for (const auto& r : rows_) {
    if (field_.is_zero(x[r.lo])) continue;
    const Element c = x[r.lo];
    for (std::size_t k = 0; k < r.v.size(); ++k)
      if (!field_.is_zero(r.v[k])) x[r.lo + k] = field_.sub(x[r.lo + k], field_.mul(c, r.v[k]));
  }
}

template <class F>
std::vector<Vec<F>> Echelon<F>::kernel_vectors() const {
  std::vector<Vec<F>> out;
  for (std::size_t f : free_columns()) {
    Vec<F> x(cols_, field_.zero());
    x[f] = field_.one();
    // Rows with pivot beyond f produce zeros; start below them.
    std::size_t k = 0;
    while (k < rows_.size() && rows_[k].lo < f) ++k;
    while (k-- > 0) {
      const Row& r = rows_[k];
      Element s = field_.zero();
      const std::size_t end = std::min(r.v.size(), f + 1 - r.lo);
      for (std::size_t i = 1; i < end; ++i)
        if (!field_.is_zero(r.v[i]) && !field_.is_zero(x[r.lo + i]))
          s = field_.add(s, field_.mul(r.v[i], x[r.lo + i]));
      x[r.lo] = field_.neg(s);
    }
    out.push_back(std::move(x));
  }
  return out;
}

template <class F>
std::size_t mat_rank(const Matrix<F>& m) {
  return echelonize(m).rank();
}

template <class F>
std::size_t mat_rank(RowSystem<F> rows) {
  return echelonize(std::move(rows)).rank();
}

template <class F>
std::vector<Vec<F>> mat_kernel_basis(const Matrix<F>& m) {
  return echelonize(m).kernel_vectors();
}

template <class F>
Matrix<F> mat_rref(const Matrix<F>& m) {
  const F& f = m.field();
  Echelon<F> e = echelonize(m);
  Matrix<F> out(f, e.rank(), m.cols());
  for (std::size_t k = 0; k < e.rank(); ++k) {
    const auto& r = e.rows()[k];
    for (std::size_t i = 0; i < r.v.size(); ++i) out(k, r.lo + i) = r.v[i];
  }
  const auto piv = e.pivots();
  for (std::size_t k = e.rank(); k-- > 0;)
    for (std::size_t j = 0; j < k; ++j) {
      const auto c = out(j, piv[k]);
      if (f.is_zero(c)) continue;
      for (std::size_t col = piv[k]; col < m.cols(); ++col)
        out(j, col) = f.sub(out(j, col), f.mul(c, out(k, col)));
    }
  return out;
}

template <>
PrimeField::Element mat_det(const Matrix<PrimeField>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const PrimeField& f = m.field();
  Matrix<PrimeField> a = m;
  const std::size_t n = a.rows();
  std::uint32_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, a(c, c));
    const std::uint32_t inv = f.inv(a(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      const std::uint32_t factor = f.mul(a(r, c), inv);
      for (std::size_t j = c; j < n; ++j) a(r, j) = f.sub(a(r, j), f.mul(factor, a(c, j)));
    }
  }
  return det;
}

template <>
RationalField::Element mat_det(const Matrix<RationalField>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Clear denominators row by row, then Bareiss on integers.
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  mpz_class scale = 1;
  for (std::size_t r = 0; r < n; ++r) {
    mpz_class den = 1;
    for (std::size_t c = 0; c < n; ++c)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(r, c).get_den_mpz_t());
    scale *= den;
    for (std::size_t c = 0; c < n; ++c) {
      mpq_class y = m(r, c) * den;
      a[r][c] = y.get_num();
    }
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  mpq_class det(a[n - 1][n - 1] * sign, scale);
  det.canonicalize();
  return det;
}

template <class F>
SpanReduction<F> reduce_mod_span(const Vec<F>& v, const Matrix<F>& basis) {
  if (v.size() != basis.rows())
    throw std::invalid_argument("reduce_mod_span: vector length " + std::to_string(v.size()) +
                                " does not match basis rows " + std::to_string(basis.rows()));
  const F& f = basis.field();
  const std::size_t n = basis.rows();
  const std::size_t m = basis.cols();
  // Row k of the augmented system is [column k of basis | e_k]; eliminating it
  // records which combination of basis columns each echelon row is.
  RowSystem<F> rs;
  rs.field = f;
  rs.cols = n + m;
  rs.rows.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t r = 0; r < n; ++r)
      if (!f.is_zero(basis(r, k))) rs.rows[k].emplace_back(r, basis(r, k));
    rs.rows[k].emplace_back(n + k, f.one());
  }
  Echelon<F> e = echelonize(std::move(rs));
  Vec<F> x(n + m, f.zero());
  std::copy(v.begin(), v.end(), x.begin());
  for (const auto& r : e.rows()) {
    if (r.lo >= n) break;
    if (f.is_zero(x[r.lo])) continue;
    const auto c = x[r.lo];
    for (std::size_t k = 0; k < r.v.size(); ++k)
      x[r.lo + k] = f.sub(x[r.lo + k], f.mul(c, r.v[k]));
  }
  SpanReduction<F> out;
  out.residual.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
  out.in_span = std::all_of(out.residual.begin(), out.residual.end(),
                            [&](const auto& y) { return f.is_zero(y); });
  if (out.in_span) {
    Vec<F> coeff(m);
    for (std::size_t k = 0; k < m; ++k) coeff[k] = f.neg(x[n + k]);
    out.coefficients = std::move(coeff);
  }
  return out;
}

#define BIGRES_INSTANTIATE(F)                                                               \
  template class Matrix<F>;                                                                 \
  template class Echelon<F>;                                                                \
  template Echelon<F> echelonize(const Matrix<F>&);                                         \
  template std::size_t mat_rank(const Matrix<F>&);                                          \
  template std::size_t mat_rank(RowSystem<F>);                                              \
  template std::vector<Vec<F>> mat_kernel_basis(const Matrix<F>&);                          \
  template Matrix<F> mat_rref(const Matrix<F>&);                                            \
  template SpanReduction<F> reduce_mod_span(const Vec<F>&, const Matrix<F>&);

BIGRES_INSTANTIATE(PrimeField)
BIGRES_INSTANTIATE(RationalField)
#undef BIGRES_INSTANTIATE

}  // namespace bigres
