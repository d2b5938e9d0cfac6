#include "bigres/strands.hpp"

#include "bigres/combinat.hpp"

#include <stdexcept>

namespace bigres {

InverseStrandBasis InverseStrandBasis::domain(int part, BiDegree d, BiDegree b) {
  InverseStrandBasis s;
  if (part == 1) {
    s.side = Side::UV;
    s.n_first = b.a1 - 3 * d.a1;
    s.n_second = 3 * d.a2 - b.a2 - 2;
  } else {
    s.side = Side::ST;
    s.n_first = 3 * d.a1 - b.a1 - 2;
    s.n_second = b.a2 - 3 * d.a2;
  }
  return s;
}

InverseStrandBasis InverseStrandBasis::codomain(int part, BiDegree d, BiDegree b) {
  return domain(part, d, b + d);
}

InverseStrandBasis InverseStrandBasis::shifted(BiDegree e) const {
  InverseStrandBasis s = *this;
  if (side == Side::UV) {
    s.n_first += e.a1;
    s.n_second -= e.a2;
  } else {
    s.n_first -= e.a1;
    s.n_second += e.a2;
  }
  return s;
}

std::optional<std::size_t> InverseStrandBasis::act(int first, int second, const Monomial& m,
                                                   const InverseStrandBasis& target) const {
  if (side == Side::UV) {
    const int i = second - m.u;
    const int j = (n_second - second) - m.v;
    if (i < 0 || j < 0) return std::nullopt;
    return target.index(first + m.s, i);
  }
  const int i = first - m.s;
  const int j = (n_first - first) - m.t;
  if (i < 0 || j < 0) return std::nullopt;
  return target.index(i, second + m.u);
}

std::string InverseStrandBasis::symbol(std::size_t idx) const {
  auto [x, y] = coords(idx);
  auto pw = [](char v, int e) { return std::string(1, v) + "^" + std::to_string(e); };
  if (side == Side::UV)
    return pw('s', x) + "*" + pw('t', n_first - x) + " (x) 1/(" + pw('u', y + 1) + "*" +
           pw('v', n_second - y + 1) + ")";
  return "1/(" + pw('s', x + 1) + "*" + pw('t', n_first - x + 1) + ") (x) " + pw('u', y) + "*" +
         pw('v', n_second - y);
}

std::string InverseStrandBasis::describe() const {
  if (side == Side::UV)
    return "R1_" + std::to_string(n_first) + " (x) inverse u,v of order " + std::to_string(n_second) +
           " [" + std::to_string(size()) + "]";
  return "inverse s,t of order " + std::to_string(n_first) + " (x) R2_" + std::to_string(n_second) +
         " [" + std::to_string(size()) + "]";
}

template <class F>
RowSystem<F> phi_rows(const F& f, BiDegree d, const std::array<BiPoly<F>, 3>& polys, BiDegree a, int part) {
  const InverseStrandBasis dom = InverseStrandBasis::domain(part, d, a);
  const InverseStrandBasis cod = dom.shifted(d);
  RowSystem<F> rs;
  rs.field = f;
  rs.cols = dom.size();
  rs.rows.resize(3 * cod.size());
  if (dom.size() == 0 || cod.size() == 0) return rs;
  const auto mons = strand_basis(d);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t t = 0; t < mons.size(); ++t) {
      const auto& c = polys[k].coeffs()[t];
      if (f.is_zero(c)) continue;
      for (std::size_t idx = 0; idx < dom.size(); ++idx) {
        auto [x, y] = dom.coords(idx);
        if (auto target = dom.act(x, y, mons[t], cod))
          rs.rows[k * cod.size() + *target].emplace_back(idx, c);
      }
    }
  return rs;
}

template <class F>
RowSystem<F> phi_rows(const SystemF<F>& sys, BiDegree a, int part) {
  return phi_rows(sys.field(), sys.d(), sys.f(), a, part);
}

namespace {

template <class F>
Matrix<F> dense(const RowSystem<F>& rs) {
  Matrix<F> m(rs.field, rs.rows.size(), rs.cols);
  for (std::size_t r = 0; r < rs.rows.size(); ++r)
    for (const auto& [c, x] : rs.rows[r]) m(r, c) = rs.field.add(m(r, c), x);
  return m;
}

}  // namespace

template <class F>
std::pair<StrandMap<F>, StrandMap<F>> phi_matrices(const SystemF<F>& sys, BiDegree a) {
  auto make = [&](int part) {
    const auto dom = InverseStrandBasis::domain(part, sys.d(), a);
    const auto cod = dom.shifted(sys.d());
    StrandMap<F> m;
    m.matrix = dense(phi_rows(sys, a, part));
    m.domain_label = dom.describe();
    m.codomain_label = "3 x " + cod.describe();
    return m;
  };
  return {make(1), make(2)};
}

template <class F>
H1Piece<F> compute_h1_piece(const SystemF<F>& sys, BiDegree a, int part) {
  H1Piece<F> p;
  p.a = a;
  p.part = part;
  p.basis = InverseStrandBasis::domain(part, sys.d(), a);
  if (p.basis.size() == 0) return p;
  Echelon<F> e = echelonize(phi_rows(sys, a, part));
  p.free_cols = e.free_columns();
  p.kernel = e.kernel_vectors();
  return p;
}

template <class F>
QuotientStrand<F> compute_quotient_strand(const SystemF<F>& sys, BiDegree b) {
  QuotientStrand<F> q;
  q.b = b;
  RowSystem<F> rs;
  rs.field = sys.field();
  rs.cols = dimR(b);
  const BiDegree src = b - sys.d();
  const std::size_t n = dimR(src);
  if (n > 0) {
    // Row (k, m) is the coefficient vector of f_k * m; collect via the
    // transpose of the multiplication block.
    RowSystem<F> cols;
    cols.field = sys.field();
    cols.cols = 3 * n;
    cols.rows.resize(dimR(b));
    for (std::size_t k = 0; k < 3; ++k) append_mul_block(cols, sys[k], src, 0, k * n, sys.field().one());
    rs.rows.resize(3 * n);
    for (std::size_t r = 0; r < cols.rows.size(); ++r)
      for (const auto& [c, x] : cols.rows[r]) rs.rows[c].emplace_back(r, x);
  }
  q.ideal = echelonize(std::move(rs));
  if (!b.nonnegative()) return q;
  q.standard = q.ideal.free_columns();
  q.standard_index.assign(dimR(b), -1);
  for (std::size_t i = 0; i < q.standard.size(); ++i) q.standard_index[q.standard[i]] = static_cast<long>(i);
  return q;
}

template <class F>
std::vector<std::pair<std::size_t, typename F::Element>> QuotientStrand<F>::normal_form(
    std::size_t pos) const {
  const F& f = ideal.field();
  std::vector<std::pair<std::size_t, typename F::Element>> out;
  if (standard_index[pos] >= 0) {
    out.emplace_back(static_cast<std::size_t>(standard_index[pos]), f.one());
    return out;
  }
  Vec<F> x(ideal.cols(), f.zero());
  x[pos] = f.one();
  ideal.reduce(x);
  for (std::size_t i = 0; i < standard.size(); ++i)
    if (!f.is_zero(x[standard[i]])) out.emplace_back(i, x[standard[i]]);
  return out;
}

template <class F>
std::size_t StrandCache<F>::h1_part_dim(BiDegree a, int part) {
  const auto key = std::make_pair(a, part);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = h1_dims_.find(key); it != h1_dims_.end()) return it->second;
    if (auto it = pieces_.find(key); it != pieces_.end()) return it->second->dim();
  }
  const auto dom = InverseStrandBasis::domain(part, sys_.d(), a);
  std::size_t dim = 0;
  if (dom.size() > 0) dim = dom.size() - mat_rank(phi_rows(sys_, a, part));
  std::lock_guard<std::mutex> lock(mu_);
  h1_dims_.try_emplace(key, dim);
  return dim;
}

template <class F>
std::shared_ptr<const H1Piece<F>> StrandCache<F>::h1_piece(BiDegree a, int part) {
  const auto key = std::make_pair(a, part);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = pieces_.find(key); it != pieces_.end()) return it->second;
  }
  auto piece = std::make_shared<const H1Piece<F>>(compute_h1_piece(sys_, a, part));
  std::lock_guard<std::mutex> lock(mu_);
  return pieces_.try_emplace(key, std::move(piece)).first->second;
}

template <class F>
std::shared_ptr<const QuotientStrand<F>> StrandCache<F>::quotient(BiDegree b) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = quotients_.find(b); it != quotients_.end()) return it->second;
  }
  auto q = std::make_shared<const QuotientStrand<F>>(compute_quotient_strand(sys_, b));
  std::lock_guard<std::mutex> lock(mu_);
  return quotients_.try_emplace(b, std::move(q)).first->second;
}

template <class F>
std::size_t StrandCache<F>::hf(BiDegree b) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = hf_.find(b); it != hf_.end()) return it->second;
    if (auto it = quotients_.find(b); it != quotients_.end()) return it->second->dim();
  }
  const std::size_t v = hf_quotient(sys_, b);
  std::lock_guard<std::mutex> lock(mu_);
  hf_.try_emplace(b, v);
  return v;
}

template <class F>
std::size_t h1_dim(const SystemF<F>& sys, BiDegree a) {
  std::size_t total = 0;
  for (int part = 1; part <= 2; ++part) {
    const auto dom = InverseStrandBasis::domain(part, sys.d(), a);
    if (dom.size() == 0) continue;
    total += dom.size() - mat_rank(phi_rows(sys, a, part));
  }
  return total;
}

namespace {

// Stacked multiplication (R_{a-d})^3 -> R_a as rows of R_a.
template <class F>
RowSystem<F> delta1_rows(const SystemF<F>& sys, BiDegree a) {
  RowSystem<F> rs;
  rs.field = sys.field();
  const BiDegree src = a - sys.d();
  const std::size_t n = dimR(src);
  rs.cols = 3 * n;
  rs.rows.resize(dimR(a));
  if (n == 0) return rs;
  for (std::size_t k = 0; k < 3; ++k) append_mul_block(rs, sys[k], src, 0, k * n, sys.field().one());
  return rs;
}

// (R_{a-2d})^3 with basis e12, e02, e01 -> (R_{a-d})^3;
// e_j^e_k maps to f_j e_k - f_k e_j.
template <class F>
RowSystem<F> delta2_rows(const SystemF<F>& sys, BiDegree a) {
  const F& f = sys.field();
  RowSystem<F> rs;
  rs.field = f;
  const BiDegree src = a - 2 * sys.d();
  const BiDegree dst = a - sys.d();
  const std::size_t n = dimR(src), m = dimR(dst);
  rs.cols = 3 * n;
  rs.rows.resize(3 * m);
  if (n == 0) return rs;
  static constexpr int pairs[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  for (std::size_t p = 0; p < 3; ++p) {
    const auto j = static_cast<std::size_t>(pairs[p][0]);
    const auto k = static_cast<std::size_t>(pairs[p][1]);
    append_mul_block(rs, sys[j], src, k * m, p * n, f.one());
    append_mul_block(rs, sys[k], src, j * m, p * n, f.neg(f.one()));
  }
  return rs;
}

// R_{a-3d} -> (R_{a-2d})^3: e012 maps to f0 e12 - f1 e02 + f2 e01.
template <class F>
RowSystem<F> delta3_rows(const SystemF<F>& sys, BiDegree a) {
  const F& f = sys.field();
  RowSystem<F> rs;
  rs.field = f;
  const BiDegree src = a - 3 * sys.d();
  const BiDegree dst = a - 2 * sys.d();
  const std::size_t n = dimR(src), m = dimR(dst);
  rs.cols = n;
  rs.rows.resize(3 * m);
  if (n == 0) return rs;
  append_mul_block(rs, sys[0], src, 0, 0, f.one());
  append_mul_block(rs, sys[1], src, m, 0, f.neg(f.one()));
  append_mul_block(rs, sys[2], src, 2 * m, 0, f.one());
  return rs;
}

}  // namespace

template <class F>
std::size_t hf_quotient(const SystemF<F>& sys, BiDegree a) {
  if (!a.nonnegative()) return 0;
  return dimR(a) - mat_rank(delta1_rows(sys, a));
}

template <class F>
std::size_t koszul_strand_homology(const SystemF<F>& sys, BiDegree a, int i) {
  if (i < 0 || i > 3) throw std::invalid_argument("Koszul homology index must be in 0..3");
  const BiDegree d = sys.d();
  const std::size_t c[4] = {dimR(a), 3 * dimR(a - d), 3 * dimR(a - 2 * d), dimR(a - 3 * d)};
  auto rank = [&](int k) -> std::size_t {
    if (k < 1 || k > 3) return 0;
    if (k == 1) return c[0] && c[1] ? mat_rank(delta1_rows(sys, a)) : 0;
    if (k == 2) return c[1] && c[2] ? mat_rank(delta2_rows(sys, a)) : 0;
    return c[2] && c[3] ? mat_rank(delta3_rows(sys, a)) : 0;
  };
  return c[i] - rank(i) - rank(i + 1);
}

std::string GenericVerdict::to_string() const {
  if (generic) return "GenericOnBox";
  return "NotGeneric(witness " + witness->to_string() + ", phi" + std::to_string(part) + ")";
}

template <class F>
GenericVerdict is_generic(const SystemF<F>& sys, BiDegree box, bool sanity_sweep) {
  const BiDegree d = sys.d();
  if (box.a1 < 3 * d.a1 + 1 || box.a2 < 3 * d.a2 + 1)
    throw std::invalid_argument("genericity box " + box.to_string() + " must be at least " +
                                BiDegree{3 * d.a1 + 1, 3 * d.a2 + 1}.to_string());
  auto full_rank = [&](BiDegree a, int part) {
    RowSystem<F> rs = phi_rows(sys, a, part);
    const std::size_t rows = rs.rows.size(), cols = rs.cols;
    if (rows == 0 || cols == 0) return true;
    return mat_rank(std::move(rs)) == std::min(rows, cols);
  };
  auto check = [&](BiDegree a) -> GenericVerdict {
    for (int part = 1; part <= 2; ++part)
      if (!full_rank(a, part)) return {false, a, part};
    return {};
  };
  std::vector<BiDegree> order;
  for (int a1 = 3 * d.a1; a1 <= box.a1; ++a1)
    for (int a2 = d.a2; a2 <= std::min(2 * d.a2 - 2, box.a2); ++a2) order.push_back({a1, a2});
  for (int a1 = d.a1; a1 <= std::min(2 * d.a1 - 2, box.a1); ++a1)
    for (int a2 = 3 * d.a2; a2 <= box.a2; ++a2) order.push_back({a1, a2});
  for (const auto& a : order)
    if (auto v = check(a); !v.generic) return v;
  if (!sanity_sweep) return {};
  for (int a1 = 0; a1 <= box.a1; ++a1)
    for (int a2 = 0; a2 <= box.a2; ++a2) {
      const BiDegree a{a1, a2};
      if (in_critical_range(d, a)) continue;
      if (auto v = check(a); !v.generic) return v;
    }
  return {};
}

#define BIGRES_INSTANTIATE(F)                                                                   \
  template RowSystem<F> phi_rows(const SystemF<F>&, BiDegree, int);                             \
  template RowSystem<F> phi_rows(const F&, BiDegree, const std::array<BiPoly<F>, 3>&, BiDegree, int); \
  template std::pair<StrandMap<F>, StrandMap<F>> phi_matrices(const SystemF<F>&, BiDegree);     \
  template H1Piece<F> compute_h1_piece(const SystemF<F>&, BiDegree, int);                       \
  template struct QuotientStrand<F>;                                                            \
  template QuotientStrand<F> compute_quotient_strand(const SystemF<F>&, BiDegree);              \
  template class StrandCache<F>;                                                                \
  template std::size_t h1_dim(const SystemF<F>&, BiDegree);                                     \
  template std::size_t hf_quotient(const SystemF<F>&, BiDegree);                                \
  template std::size_t koszul_strand_homology(const SystemF<F>&, BiDegree, int);                \
  template GenericVerdict is_generic(const SystemF<F>&, BiDegree, bool);

BIGRES_INSTANTIATE(PrimeField)
BIGRES_INSTANTIATE(RationalField)
#undef BIGRES_INSTANTIATE

}  // namespace bigres
