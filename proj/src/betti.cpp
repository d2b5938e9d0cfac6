#include "bigres/betti.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "bigres/combinat.hpp"
#include "bigres/parallel.hpp"
#include "bigres/segre.hpp"

namespace bigres {

std::string to_string(Convention c) { return c == Convention::Ideal ? "ideal" : "quotient"; }

Convention parse_convention(const std::string& text) {
  if (text == "ideal") return Convention::Ideal;
  if (text == "quotient") return Convention::Quotient;
  throw std::invalid_argument("convention must be 'ideal' or 'quotient', got '" + text + "'");
}

std::size_t BettiTable::at(int i, BiDegree a) const {
  auto it = entries.find({i, a});
  return it == entries.end() ? 0 : it->second;
}

std::vector<std::pair<BiDegree, std::size_t>> BettiTable::row(int i) const {
  std::vector<std::pair<BiDegree, std::size_t>> out;
  for (const auto& [key, m] : entries)
    if (key.first == i) out.emplace_back(key.second, m);
  return out;
}

std::size_t BettiTable::total(int i) const {
  std::size_t s = 0;
  for (const auto& [a, m] : row(i)) s += m;
  return s;
}

BettiTable BettiTable::converted(Convention c) const {
  if (c == convention) return *this;
  BettiTable out = *this;
  out.convention = c;
  out.entries.clear();
  const int shift = c == Convention::Ideal ? -1 : 1;
  for (const auto& [key, m] : entries) {
    const int i = key.first + shift;
    if (i >= 0) out.entries[{i, key.second}] = m;
  }
  // Tor_0(R/I) is K in degree 0 and has no counterpart in the ideal table.
  if (c == Convention::Quotient) out.entries[{0, BiDegree{0, 0}}] = 1;
  return out;
}

std::string BettiTable::to_json() const {
  nlohmann::ordered_json j;
  j["convention"] = to_string(convention);
  j["box"] = {box.a1, box.a2};
  auto arr = nlohmann::json::array();
  for (const auto& [key, m] : entries) arr.push_back({key.first, key.second.a1, key.second.a2, m});
  j["entries"] = arr;
  if (warning) j["warning"] = *warning;
  return j.dump();
}

std::string BettiTable::to_text() const {
  std::ostringstream os;
  os << "convention: " << to_string(convention) << "\n";
  int max_i = -1;
  for (const auto& [key, m] : entries) max_i = std::max(max_i, key.first);
  for (int i = 0; i <= max_i; ++i) {
    os << "beta_" << i << ":";
    for (const auto& [a, m] : row(i)) {
      os << ' ' << a.to_string();
      if (m > 1) os << '^' << m;
    }
    os << "\n";
  }
  if (warning) os << "warning: " << *warning << "\n";
  return os.str();
}

namespace {

constexpr BiDegree kVarDeg[4] = {{1, 0}, {1, 0}, {0, 1}, {0, 1}};
// Exponent increments (s, t, u, v) of each variable.
constexpr Monomial kVar[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};

BiDegree subset_degree(unsigned mask) {
  BiDegree d{0, 0};
  for (int k = 0; k < 4; ++k)
    if (mask & (1u << k)) d = d + kVarDeg[k];
  return d;
}

std::vector<unsigned> subsets_of_size(int j) {
  std::vector<unsigned> out;
  for (unsigned m = 0; m < 16; ++m)
    if (std::popcount(m) == j) out.push_back(m);
  return out;
}

// Sign of x_k in the Koszul differential e_J -> sum (-1)^pos x_{J_pos} e_{J - J_pos}.
bool odd_position(unsigned mask, int k) { return std::popcount(mask & ((1u << k) - 1)) % 2 == 1; }

}  // namespace

template <class F>
std::array<std::size_t, 5> tor_strand(StrandCache<F>& cache, BiDegree a) {
  const F& f = cache.system().field();
  std::array<std::shared_ptr<const QuotientStrand<F>>, 16> q;
  for (unsigned m = 0; m < 16; ++m) {
    const BiDegree b = a - subset_degree(m);
    if (b.nonnegative()) q[m] = cache.quotient(b);
  }
  auto dim = [&](unsigned m) -> std::size_t { return q[m] ? q[m]->dim() : 0; };
  std::array<std::size_t, 5> c{};
  std::array<std::size_t, 6> rank{};
  for (int j = 0; j <= 4; ++j)
    for (unsigned m : subsets_of_size(j)) c[j] += dim(m);
  for (int j = 1; j <= 4; ++j) {
    if (c[j] == 0 || c[j - 1] == 0) continue;
    std::array<std::size_t, 16> off{};
    std::size_t total = 0;
    for (unsigned m : subsets_of_size(j - 1)) {
      off[m] = total;
      total += dim(m);
    }
    RowSystem<F> rs;
    rs.field = f;
    rs.cols = c[j];
    rs.rows.resize(total);
    std::size_t col = 0;
    for (unsigned m : subsets_of_size(j)) {
      if (!q[m]) continue;
      const BiDegree b = q[m]->b;
      for (std::size_t idx = 0; idx < q[m]->dim(); ++idx, ++col) {
        const std::size_t pos = q[m]->standard[idx];
        const int es = b.a1 - static_cast<int>(pos / static_cast<std::size_t>(b.a2 + 1));
        const int eu = b.a2 - static_cast<int>(pos % static_cast<std::size_t>(b.a2 + 1));
        for (int k = 0; k < 4; ++k) {
          if (!(m & (1u << k))) continue;
          const unsigned target = m & ~(1u << k);
          if (!q[target] || q[target]->dim() == 0) continue;
          const BiDegree bt = b + kVarDeg[k];
          const std::size_t tpos = monomial_index(bt, es + kVar[k].s, eu + kVar[k].u);
          const bool neg = odd_position(m, k);
          for (const auto& [ti, coef] : q[target]->normal_form(tpos))
            rs.rows[off[target] + ti].emplace_back(col, neg ? f.neg(coef) : coef);
        }
      }
    }
    rank[j] = mat_rank(std::move(rs));
  }
  std::array<std::size_t, 5> tor{};
  for (int j = 0; j <= 4; ++j) tor[j] = c[j] - rank[j] - rank[j + 1];
  return tor;
}

template <class F>
BettiTable betti_table(const SystemF<F>& sys, BiDegree box, Convention convention) {
  BettiTable t;
  t.convention = Convention::Quotient;
  t.box = box;
  const auto bp = basepoint_free(sys);
  if (bp.verdict != BasepointVerdict::Free)
    t.warning = "input is not known to be basepoint free (" + bp.to_string() + ")";
  if (!box.nonnegative()) return t.converted(convention);
  StrandCache<F> cache(sys);
  std::vector<BiDegree> points;
  for (int a1 = 0; a1 <= box.a1; ++a1)
    for (int a2 = 0; a2 <= box.a2; ++a2) points.push_back({a1, a2});
  std::vector<std::array<std::size_t, 5>> tor(points.size());
  parallel_for(points.size(), [&](std::size_t k) { tor[k] = tor_strand(cache, points[k]); });
  for (std::size_t k = 0; k < points.size(); ++k)
    for (int i = 0; i <= 4; ++i)
      if (tor[k][i] > 0) t.entries[{i, points[k]}] = tor[k][i];
  return t.converted(convention);
}

std::map<BiDegree, std::size_t> nonkoszul_beta1(const BettiTable& table, BiDegree d) {
  const BettiTable t = table.converted(Convention::Ideal);
  std::map<BiDegree, std::size_t> out;
  for (auto [a, m] : t.row(1)) {
    if (a == 2 * d) m = m >= 3 ? m - 3 : 0;
    if (m > 0) out[a] = m;
  }
  return out;
}

namespace {

// Multiplication by the k-th variable followed by the coordinates in the
// target kernel basis: the image of a kernel vector is again in the kernel, so
// it is determined by its entries at the target's free columns.
template <class F>
struct PieceMap {
  const H1Piece<F>* src;
  const H1Piece<F>* dst;
  std::vector<long> free_pos;  // target basis index -> position among free columns

  PieceMap(const H1Piece<F>& s, const H1Piece<F>& d) : src(&s), dst(&d) {
    free_pos.assign(d.basis.size(), -1);
    for (std::size_t i = 0; i < d.free_cols.size(); ++i) free_pos[d.free_cols[i]] = static_cast<long>(i);
  }

  /// Appends the image of kernel vector `v` times variable k, scaled by
  /// sign, into rows (row0 + coordinate, col).
  void apply(const F& f, const Vec<F>& v, int k, bool neg, RowSystem<F>& rs, std::size_t row0,
             std::size_t col) const {
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
      if (f.is_zero(v[idx])) continue;
      auto [x, y] = src->basis.coords(idx);
      auto t = src->basis.act(x, y, kVar[k], dst->basis);
      if (!t) continue;
      const long p = free_pos[*t];
      if (p < 0) continue;
      rs.rows[row0 + static_cast<std::size_t>(p)].emplace_back(col, neg ? f.neg(v[idx]) : v[idx]);
    }
  }
};

template <class F>
MComplexDims mcomplex_part(StrandCache<F>& cache, BiDegree a, int part) {
  const F& f = cache.system().field();
  std::array<std::shared_ptr<const H1Piece<F>>, 16> pc;
  for (unsigned m = 0; m < 16; ++m) pc[m] = cache.h1_piece(a - subset_degree(m), part);
  MComplexDims out;
  std::array<std::size_t, 6> rank{};
  for (int j = 0; j <= 4; ++j)
    for (unsigned m : subsets_of_size(j)) out.c[j] += pc[m]->dim();
  for (int j = 1; j <= 4; ++j) {
    if (out.c[j] == 0 || out.c[j - 1] == 0) continue;
    std::array<std::size_t, 16> off{};
    std::size_t total = 0;
    for (unsigned m : subsets_of_size(j - 1)) {
      off[m] = total;
      total += pc[m]->dim();
    }
    RowSystem<F> rs;
    rs.field = f;
    rs.cols = out.c[j];
    rs.rows.resize(total);
    std::size_t col = 0;
    for (unsigned m : subsets_of_size(j)) {
      for (const auto& v : pc[m]->kernel) {
        for (int k = 0; k < 4; ++k) {
          if (!(m & (1u << k))) continue;
          const unsigned target = m & ~(1u << k);
          if (pc[target]->dim() == 0) continue;
          PieceMap<F>(*pc[m], *pc[target]).apply(f, v, k, odd_position(m, k), rs, off[target], col);
        }
        ++col;
      }
    }
    rank[j] = mat_rank(std::move(rs));
  }
  for (int j = 0; j <= 4; ++j) out.h[j] = out.c[j] - rank[j] - rank[j + 1];
  return out;
}

}  // namespace

template <class F>
MComplexDims mcomplex_dims(StrandCache<F>& cache, BiDegree a) {
  MComplexDims total;
  for (int part = 1; part <= 2; ++part) {
    auto p = mcomplex_part(cache, a, part);
    for (int j = 0; j <= 4; ++j) {
      total.c[j] += p.c[j];
      total.h[j] += p.h[j];
    }
  }
  return total;
}

template <class F>
MComplexDims mcomplex_dims(const SystemF<F>& sys, BiDegree a) {
  StrandCache<F> cache(sys);
  return mcomplex_dims(cache, a);
}

template <class F>
std::array<std::size_t, 5> mcomplex_totals(StrandCache<F>& cache, BiDegree box) {
  std::vector<BiDegree> points;
  for (int a1 = 0; a1 <= box.a1; ++a1)
    for (int a2 = 0; a2 <= box.a2; ++a2) points.push_back({a1, a2});
  std::vector<MComplexDims> dims(points.size());
  parallel_for(points.size(), [&](std::size_t k) { dims[k] = mcomplex_dims(cache, points[k]); });
  std::array<std::size_t, 5> t{};
  for (const auto& d : dims)
    for (int j = 0; j <= 4; ++j) t[j] += d.h[j];
  return t;
}

template <class F>
FastBeta1Result nonkoszul_beta1_fast(StrandCache<F>& cache, BiDegree box, const FastBeta1Options& opt) {
  const auto& sys = cache.system();
  const BiDegree d = sys.d();
  FastBeta1Result res;
  if (!box.nonnegative()) return res;
  const std::size_t W = static_cast<std::size_t>(box.a1 + 1), H = static_cast<std::size_t>(box.a2 + 1);
  // h[part-1][a1 * H + a2]
  std::array<std::vector<long long>, 2> h{std::vector<long long>(W * H, 0), std::vector<long long>(W * H, 0)};
  struct Job {
    int part;
    BiDegree a;
  };
  std::vector<Job> jobs;
  for (int part = 1; part <= 2; ++part)
    for (int a1 = 0; a1 <= box.a1; ++a1)
      for (int a2 = 0; a2 <= box.a2; ++a2) {
        const BiDegree a{a1, a2};
        const auto dom = InverseStrandBasis::domain(part, d, a);
        const auto cod = dom.shifted(d);
        auto& slot = h[part - 1][static_cast<std::size_t>(a1) * H + static_cast<std::size_t>(a2)];
        if (dom.size() == 0) {
          slot = 0;
        } else if (cod.size() == 0) {
          slot = static_cast<long long>(dom.size());
        } else if (opt.full_rank_outside_critical && !in_critical_range(d, a)) {
          slot = std::max<long long>(0, static_cast<long long>(dom.size()) - 3 * static_cast<long long>(cod.size()));
        } else {
          jobs.push_back({part, a});
        }
      }
  parallel_for(jobs.size(), [&](std::size_t k) {
    const auto& j = jobs[k];
    h[j.part - 1][static_cast<std::size_t>(j.a.a1) * H + static_cast<std::size_t>(j.a.a2)] =
        static_cast<long long>(cache.h1_part_dim(j.a, j.part));
  });
  res.ranked_strands = jobs.size();

  auto hv = [&](int part, int a1, int a2) -> long long {
    if (a1 < 0 || a2 < 0) return 0;
    return h[part - 1][static_cast<std::size_t>(a1) * H + static_cast<std::size_t>(a2)];
  };
  std::vector<Job> exact;
  for (int part = 1; part <= 2; ++part)
    for (int a1 = 0; a1 <= box.a1; ++a1)
      for (int a2 = 0; a2 <= box.a2; ++a2) {
        const long long g = part == 1 ? hv(1, a1, a2) - 2 * hv(1, a1 - 1, a2) + hv(1, a1 - 2, a2)
                                      : hv(2, a1, a2) - 2 * hv(2, a1, a2 - 1) + hv(2, a1, a2 - 2);
        if (g < 0)
          throw ComputationError("negative generator count " + std::to_string(g) + " for part " +
                                 std::to_string(part) + " at " + BiDegree{a1, a2}.to_string() +
                                 "; the strand dimensions are inconsistent");
        if (g == 0) continue;
        const BiDegree a{a1, a2};
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), a) == opt.only.end()) continue;
        exact.push_back({part, a});
      }

  const F& f = sys.field();
  std::vector<std::size_t> beta(exact.size(), 0);
  parallel_for(exact.size(), [&](std::size_t k) {
    const auto [part, a] = exact[k];
    auto top = cache.h1_piece(a, part);
    if (static_cast<long long>(top->dim()) != hv(part, a.a1, a.a2))
      throw ComputationError("dim H1 at " + a.to_string() + " (part " + std::to_string(part) + ") is " +
                             std::to_string(top->dim()) + ", expected " + std::to_string(hv(part, a.a1, a.a2)));
    RowSystem<F> rs;
    rs.field = f;
    rs.rows.resize(top->dim());
    std::size_t col = 0;
    for (int k2 = 0; k2 < 4; ++k2) {
      auto src = cache.h1_piece(a - kVarDeg[k2], part);
      PieceMap<F> pm(*src, *top);
      for (const auto& v : src->kernel) pm.apply(f, v, k2, false, rs, 0, col++);
    }
    rs.cols = col;
    beta[k] = top->dim() - (col == 0 ? 0 : mat_rank(std::move(rs)));
  });
  for (std::size_t k = 0; k < exact.size(); ++k) {
    res.evaluated.push_back(exact[k].a);
    if (beta[k] > 0) res.beta[exact[k].a] += beta[k];
  }
  std::sort(res.evaluated.begin(), res.evaluated.end());
  res.evaluated.erase(std::unique(res.evaluated.begin(), res.evaluated.end()), res.evaluated.end());
  return res;
}

template <class F>
bool SyzygyVector<F>::annihilates(const std::array<BiPoly<F>, 3>& f) const {
  BiPoly<F> acc = sigma[0] * f[0];
  acc = acc + sigma[1] * f[1];
  acc = acc + sigma[2] * f[2];
  return acc.is_zero();
}

template <class F>
std::string SyzygyVector<F>::to_string() const {
  return "degree " + total.to_string() + ": (" + sigma[0].to_string() + ", " + sigma[1].to_string() + ", " +
         sigma[2].to_string() + ")";
}

template <class F>
SyzygyVector<F> make_syzygy(const std::array<BiPoly<F>, 3>& f, std::array<BiPoly<F>, 3> sigma, BiDegree d) {
  std::optional<BiDegree> deg;
  for (const auto& s : sigma)
    if (!s.is_zero()) {
      if (deg && *deg != s.degree()) throw ComputationError("syzygy entries have different degrees");
      deg = s.degree();
    }
  if (!deg) throw ComputationError("zero syzygy");
  SyzygyVector<F> v{std::move(sigma), *deg + d};
  if (!v.annihilates(f)) throw ComputationError("syzygy identity fails for " + v.to_string());
  return v;
}

template <class F>
SyzygyVector<F> alicia_syzygy(const SystemF<F>& sys) {
  if (sys.d().a1 != 1) throw ComputationError("minor syzygy needs d1 == 1, got " + sys.d().to_string());
  StSplit<F> s[3] = {split_st(sys[0]), split_st(sys[1]), split_st(sys[2])};
  std::array<BiPoly<F>, 3> sigma = {(s[1].q * s[2].p - s[1].p * s[2].q).to_bipoly(),
                                    (s[0].p * s[2].q - s[0].q * s[2].p).to_bipoly(),
                                    (s[0].q * s[1].p - s[0].p * s[1].q).to_bipoly()};
  if (sigma[0].is_zero() && sigma[1].is_zero() && sigma[2].is_zero())
    throw ComputationError("the 2x2 minors of the s,t-coefficient matrix vanish identically; the system has "
                           "basepoints");
  return make_syzygy(sys.f(), std::move(sigma), sys.d());
}

template <class F>
std::array<SyzygyVector<F>, 3> koszul_syzygies(const SystemF<F>& sys) {
  const auto& f = sys.f();
  BiPoly<F> z(sys.field(), sys.d());
  return {make_syzygy(f, {z, f[2], -f[1]}, sys.d()), make_syzygy(f, {-f[2], z, f[0]}, sys.d()),
          make_syzygy(f, {f[1], -f[0], z}, sys.d())};
}

template <class F>
Prop32Matrices<F> prop32_matrices(const SystemF<F>& sys) {
  const F& fld = sys.field();
  const auto al = alicia_syzygy(sys);
  const auto& f = sys.f();
  StSplit<F> sp[3] = {split_st(f[0]), split_st(f[1]), split_st(f[2])};
  BiPoly<F> z(fld, {0, 0});
  auto P = [&](int i) { return sp[i].p.to_bipoly(); };
  auto Q = [&](int i) { return sp[i].q.to_bipoly(); };
  const auto s = BiPoly<F>::monomial(fld, {1, 0, 0, 0}, fld.one());
  const auto t = BiPoly<F>::monomial(fld, {0, 1, 0, 0}, fld.one());
  Prop32Matrices<F> out;
  out.A = PolyMatrix<F>::from_columns(
      fld, 3, {{al.sigma[0], al.sigma[1], al.sigma[2]}, {f[1], -f[0], z}, {f[2], z, -f[0]}, {z, f[2], -f[1]}});
  out.Aprime = PolyMatrix<F>(fld, 4, 3);
  const std::vector<std::vector<BiPoly<F>>> rows = {
      {s, t, z}, {Q(2), -P(2), f[2]}, {-Q(1), P(1), -f[1]}, {Q(0), -P(0), f[0]}};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 3; ++c) out.Aprime(r, c) = rows[r][c];
  out.third = {t, -s, BiPoly<F>::monomial(fld, {0, 0, 0, 0}, fld.neg(fld.one()))};
  if (!(out.A * out.Aprime).is_zero()) throw ComputationError("A * A' does not vanish");
  PolyMatrix<F> third = PolyMatrix<F>::from_columns(fld, 3, {{out.third[0], out.third[1], out.third[2]}});
  if (!(out.Aprime * third).is_zero()) throw ComputationError("A' * (t,-s,-1) does not vanish");
  return out;
}

namespace {

template <class F>
void check_form_matrix(const FormMatrix<F>& m, int n) {
  for (const auto& row : m)
    for (const auto& e : row)
      if (!e.is_zero() && e.degree() != n)
        throw std::invalid_argument("form matrix entries must have degree " + std::to_string(n));
}

template <class F>
std::size_t eval_rank(const F& field, const FormMatrix<F>& m, const typename F::Element& u,
                      const typename F::Element& v) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  Matrix<F> e(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (!m[i][j].is_zero()) e(i, j) = m[i][j].eval(u, v);
  return mat_rank(e);
}

template <class F>
std::size_t field_size_cap(const F&) {
  return static_cast<std::size_t>(-1);
}
template <>
std::size_t field_size_cap(const PrimeField& f) {
  return f.modulus();
}

}  // namespace

template <class F>
std::size_t generic_rank(const F& field, const FormMatrix<F>& m, int n) {
  check_form_matrix(m, n);
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  const std::size_t full = std::min(rows, cols);
  if (full == 0) return 0;
  // A nonzero r x r minor has degree r*n, so it is nonzero at one of any
  // r*n+1 points of P^1.
  const std::size_t points = std::min(full * static_cast<std::size_t>(std::max(n, 0)) + 1, field_size_cap(field));
  std::size_t best = eval_rank(field, m, field.one(), field.zero());
  for (std::size_t k = 0; k < points && best < full; ++k)
    best = std::max(best, eval_rank(field, m, field.from_int(static_cast<std::int64_t>(k)), field.one()));
  return best;
}

template <class F>
GradedKernel<F> graded_kernel(const F& field, const FormMatrix<F>& m, int n) {
  check_form_matrix(m, n);
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  GradedKernel<F> out;
  if (cols == 0) return out;
  const std::size_t target = cols - generic_rank(field, m, n);
  const int max_degree = static_cast<int>(std::max<std::size_t>(rows, 1)) * std::max(n, 1) + n + 1;
  for (int e = 0; out.columns.size() < target; ++e) {
    if (e > max_degree)
      throw ComputationError("graded kernel generators not found up to degree " + std::to_string(max_degree));
    const std::size_t w = static_cast<std::size_t>(e + 1), tw = static_cast<std::size_t>(e + n + 1);
    // Unknown x_j = sum_l c_{j,l} u^l v^(e-l) sits at column j*w + l.
    Matrix<F> strand(field, rows * tw, cols * w);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        if (m[i][j].is_zero()) continue;
        for (std::size_t l = 0; l < w; ++l)
          for (int c = 0; c <= n; ++c)
            strand(i * tw + l + static_cast<std::size_t>(c), j * w + l) = m[i][j].coeff(c);
      }
    auto ker = mat_kernel_basis(strand);
    if (ker.empty()) continue;
    // Multiples of the generators found so far.
    std::vector<Vec<F>> span;
    for (std::size_t g = 0; g < out.columns.size(); ++g) {
      const int k = e - out.degrees[g];
      for (int l = 0; l <= k; ++l) {
        const auto mono = BinaryForm<F>::monomial(field, l, k - l, field.one());
        Vec<F> v(cols * w, field.zero());
        for (std::size_t j = 0; j < cols; ++j) {
          const auto prod = out.columns[g][j] * mono;
          if (prod.is_zero()) continue;
          for (std::size_t c = 0; c < w; ++c) v[j * w + c] = prod.coeff(static_cast<int>(c));
        }
        span.push_back(std::move(v));
      }
    }
    for (const auto& kv : ker) {
      std::vector<Vec<F>> trial = span;
      trial.push_back(kv);
      const std::size_t before = span.empty() ? 0 : mat_rank(Matrix<F>::from_columns(field, cols * w, span));
      if (mat_rank(Matrix<F>::from_columns(field, cols * w, trial)) == before) continue;
      span.push_back(kv);
      std::vector<BinaryForm<F>> column;
      for (std::size_t j = 0; j < cols; ++j) {
        Vec<F> c(kv.begin() + static_cast<std::ptrdiff_t>(j * w), kv.begin() + static_cast<std::ptrdiff_t>((j + 1) * w));
        column.push_back(BinaryForm<F>::from_coeffs(field, std::move(c)));
      }
      out.columns.push_back(std::move(column));
      out.degrees.push_back(e);
      if (out.columns.size() == target) break;
    }
  }
  return out;
}

template <class F>
HilbertBurchData<F> hb_kernel(const std::vector<BinaryForm<F>>& q) {
  if (q.size() < 2) throw std::invalid_argument("hb_kernel needs at least two forms");
  const F& field = q[0].field();
  const int n = q[0].degree();
  for (const auto& x : q)
    if (x.degree() != n) throw std::invalid_argument("hb_kernel: forms must share one degree");
  std::optional<BinaryForm<F>> g;
  for (const auto& x : q) {
    if (x.is_zero()) continue;
    g = g ? gcd_binary(*g, x) : gcd_binary(x, BinaryForm<F>(field, 0));
  }
  if (!g) throw ComputationError("hb_kernel: all forms are zero");
  if (g->degree() > 0)
    throw ComputationError("the forms share the factor " + g->to_string() +
                           "; their ideal is not of finite colength");
  FormMatrix<F> m{q};
  auto gk = graded_kernel(field, m, n);
  HilbertBurchData<F> out;
  out.generators = q;
  out.kernel = std::move(gk.columns);
  out.column_degrees = std::move(gk.degrees);
  return out;
}

template <class F>
FormMatrix<F> syz3_matrix(const SystemF<F>& sys) {
  if (sys.d().a1 != 1) throw ComputationError("syzygies quadratic in s,t need d1 == 1");
  std::vector<BinaryForm<F>> q(6);
  for (std::size_t i = 0; i < 3; ++i) {
    auto sp = split_st(sys[i]);
    q[i] = sp.p;
    q[i + 3] = sp.q;
  }
  BinaryForm<F> z(sys.field(), sys.d().a2);
  return {{q[0], q[1], q[2], z, z, z, z, z, z},
          {q[3], q[4], q[5], q[0], q[1], q[2], z, z, z},
          {z, z, z, q[3], q[4], q[5], q[0], q[1], q[2]},
          {z, z, z, z, z, z, q[3], q[4], q[5]}};
}

template <class F>
std::size_t q_span_dim(const SystemF<F>& sys) {
  const int n = sys.d().a2;
  Matrix<F> m(sys.field(), 6, static_cast<std::size_t>(n + 1));
  for (std::size_t i = 0; i < 3; ++i) {
    auto sp = split_st(sys[i]);
    for (int j = 0; j <= n; ++j) {
      m(i, static_cast<std::size_t>(j)) = sp.p.coeff(j);
      m(i + 3, static_cast<std::size_t>(j)) = sp.q.coeff(j);
    }
  }
  return mat_rank(m);
}

template <class F>
SyzygyVector<F> syzygy_from_quadratic(const SystemF<F>& sys, const std::vector<BinaryForm<F>>& x) {
  const F& fld = sys.field();
  const Monomial quad[3] = {{2, 0, 0, 0}, {1, 1, 0, 0}, {0, 2, 0, 0}};
  std::array<BiPoly<F>, 3> sigma;
  for (std::size_t i = 0; i < 3; ++i) {
    BiPoly<F> acc(fld, {2, x[i].degree()});
    for (std::size_t k = 0; k < 3; ++k)
      acc = acc + times(x[i + 3 * k], BiPoly<F>::monomial(fld, quad[k], fld.one()));
    sigma[i] = acc;
  }
  return make_syzygy(sys.f(), std::move(sigma), sys.d());
}

namespace {

template <class F>
BinaryForm<F> form_det(const F& field, const std::vector<std::vector<BinaryForm<F>>>& m, int entry_degree) {
  const std::size_t k = m.size();
  if (k == 0) return BinaryForm<F>::monomial(field, 0, 0, field.one());
  BinaryForm<F> acc(field, entry_degree * static_cast<int>(k));
  for (std::size_t c = 0; c < k; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<BinaryForm<F>>> minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<BinaryForm<F>> row;
      for (std::size_t cc = 0; cc < k; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    auto term = m[0][c] * form_det(field, minor, entry_degree);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// Kernel dimension of R^3_(2,m) -> R_(3,m+n), (s0,s1,s2) -> sum s_i f_i.
template <class F>
std::size_t quadratic_strand_kernel(const SystemF<F>& sys, int m) {
  const BiDegree src{2, m};
  RowSystem<F> rs;
  rs.field = sys.field();
  rs.cols = 3 * dimR(src);
  rs.rows.resize(dimR(src + sys.d()));
  for (std::size_t k = 0; k < 3; ++k) append_mul_block(rs, sys[k], src, 0, k * dimR(src), sys.field().one());
  return rs.cols - mat_rank(std::move(rs));
}

template <class F>
void check_m_times_k(const F& field, const FormMatrix<F>& M, const FormMatrix<F>& K) {
  for (std::size_t r = 0; r < M.size(); ++r)
    for (std::size_t k = 0; k < K.size(); ++k) {
      std::optional<BinaryForm<F>> acc;
      for (std::size_t j = 0; j < 9; ++j) {
        if (M[r][j].is_zero() || K[k][j].is_zero()) continue;
        auto p = M[r][j] * K[k][j];
        acc = acc ? *acc + p : p;
      }
      if (acc && !acc->is_zero())
        throw ComputationError("M K^t != 0 at (" + std::to_string(r) + "," + std::to_string(k) + ")");
    }
  (void)field;
}

template <class F>
void check_strand_counts(const SystemF<F>& sys, const std::vector<int>& b) {
  const int n = sys.d().a2;
  for (int m = 0; m < n; ++m) {
    std::size_t expected = 0;
    for (int bk : b) expected += static_cast<std::size_t>(std::max(0, m - n + bk + 1));
    const std::size_t got = quadratic_strand_kernel(sys, m);
    if (got != expected)
      throw ComputationError("strand kernel at (2," + std::to_string(m) + ") has dimension " + std::to_string(got) +
                             ", the syzygies account for " + std::to_string(expected));
  }
}

}  // namespace

template <class F>
Syz3Result<F> syz3star(const SystemF<F>& sys) {
  const F& fld = sys.field();
  const int n = sys.d().a2;
  if (sys.d().a1 != 1) throw ComputationError("syz3star needs d1 == 1");
  if (q_span_dim(sys) != 6)
    throw ComputationError("the six s,t-coefficient forms are linearly dependent (span " +
                           std::to_string(q_span_dim(sys)) + "); use the reduced construction");
  Syz3Result<F> out;
  out.M = syz3_matrix(sys);
  std::vector<BinaryForm<F>> q = {out.M[0][0], out.M[0][1], out.M[0][2], out.M[1][0], out.M[1][1], out.M[1][2]};
  auto hb = hb_kernel(q);
  if (hb.kernel.size() != 5) throw ComputationError("Hilbert-Burch matrix does not have five columns");
  out.b = hb.column_degrees;
  // minor(i, j, k): delete rows i, j and column k of the 6x5 matrix N.
  auto minor = [&](std::size_t i, std::size_t j, std::size_t k) {
    std::vector<std::vector<BinaryForm<F>>> sub;
    for (std::size_t r = 0; r < 6; ++r) {
      if (r == i || r == j) continue;
      std::vector<BinaryForm<F>> row;
      for (std::size_t c = 0; c < 5; ++c)
        if (c != k) row.push_back(hb.kernel[c][r]);
      sub.push_back(std::move(row));
    }
    // Entries of column c have degree b_c; the determinant is homogeneous of
    // degree n - b_k, so compute it column-degree aware.
    int deg = 0;
    for (std::size_t c = 0; c < 5; ++c)
      if (c != k) deg += out.b[c];
    BinaryForm<F> acc(fld, deg);
    std::vector<std::size_t> perm = {0, 1, 2, 3};
    do {
      std::size_t inversions = 0;
      for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = x + 1; y < 4; ++y)
          if (perm[x] > perm[y]) ++inversions;
      BinaryForm<F> term = BinaryForm<F>::monomial(fld, 0, 0, fld.one());
      bool zero = false;
      for (std::size_t r = 0; r < 4 && !zero; ++r) {
        if (sub[r][perm[r]].is_zero()) zero = true;
        else term = term * sub[r][perm[r]];
      }
      if (zero) continue;
      acc = inversions % 2 == 0 ? acc + term : acc - term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
  };
  for (std::size_t k = 0; k < 5; ++k) {
    auto n_ = [&](std::size_t i, std::size_t j) { return minor(i, j, k); };
    std::vector<BinaryForm<F>> row = {-n_(1, 2),           -n_(0, 2),           -n_(0, 1),
                                      n_(1, 5) - n_(2, 4), n_(0, 5) - n_(2, 3), n_(0, 4) - n_(1, 3),
                                      -n_(4, 5),           -n_(3, 5),           -n_(3, 4)};
    out.K.push_back(row);
    auto syz = syzygy_from_quadratic(sys, row);
    if (syz.total != BiDegree{3, 2 * n - out.b[k]})
      throw ComputationError("syzygy " + std::to_string(k) + " has degree " + syz.total.to_string());
    out.syzygies.push_back(std::move(syz));
  }
  check_m_times_k(fld, out.M, out.K);
  // The rows of K have different degrees, so test independence at points.
  bool independent = false;
  for (int u = 0; u < 64 && !independent; ++u) {
    Matrix<F> e(fld, 5, 9);
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 9; ++c)
        if (!out.K[r][c].is_zero()) e(r, c) = out.K[r][c].eval(fld.from_int(u), fld.one());
    independent = mat_rank(e) == 5;
  }
  if (!independent) throw ComputationError("the five syzygies are not independent");
  check_strand_counts(sys, out.b);
  return out;
}

template <class F>
Syz3Result<F> syz3star_reduced(const SystemF<F>& sys) {
  const int n = sys.d().a2;
  if (sys.d().a1 != 1) throw ComputationError("syz3star needs d1 == 1");
  Syz3Result<F> out;
  out.M = syz3_matrix(sys);
  auto gk = graded_kernel(sys.field(), out.M, n);
  for (std::size_t k = 0; k < gk.columns.size(); ++k) {
    out.K.push_back(gk.columns[k]);
    out.b.push_back(n - gk.degrees[k]);
    out.syzygies.push_back(syzygy_from_quadratic(sys, gk.columns[k]));
  }
  check_m_times_k(sys.field(), out.M, out.K);
  check_strand_counts(sys, out.b);
  return out;
}

#define BIGRES_INSTANTIATE(F)                                                                          \
  template std::array<std::size_t, 5> tor_strand(StrandCache<F>&, BiDegree);                           \
  template BettiTable betti_table(const SystemF<F>&, BiDegree, Convention);                            \
  template MComplexDims mcomplex_dims(StrandCache<F>&, BiDegree);                                      \
  template MComplexDims mcomplex_dims(const SystemF<F>&, BiDegree);                                    \
  template std::array<std::size_t, 5> mcomplex_totals(StrandCache<F>&, BiDegree);                      \
  template FastBeta1Result nonkoszul_beta1_fast(StrandCache<F>&, BiDegree, const FastBeta1Options&);   \
  template struct SyzygyVector<F>;                                                                     \
  template SyzygyVector<F> make_syzygy(const std::array<BiPoly<F>, 3>&, std::array<BiPoly<F>, 3>,      \
                                       BiDegree);                                                      \
  template SyzygyVector<F> alicia_syzygy(const SystemF<F>&);                                           \
  template std::array<SyzygyVector<F>, 3> koszul_syzygies(const SystemF<F>&);                          \
  template Prop32Matrices<F> prop32_matrices(const SystemF<F>&);                                       \
  template std::size_t generic_rank(const F&, const FormMatrix<F>&, int);                              \
  template GradedKernel<F> graded_kernel(const F&, const FormMatrix<F>&, int);                         \
  template HilbertBurchData<F> hb_kernel(const std::vector<BinaryForm<F>>&);                           \
  template FormMatrix<F> syz3_matrix(const SystemF<F>&);                                               \
  template std::size_t q_span_dim(const SystemF<F>&);                                                  \
  template SyzygyVector<F> syzygy_from_quadratic(const SystemF<F>&, const std::vector<BinaryForm<F>>&); \
  template Syz3Result<F> syz3star(const SystemF<F>&);                                                  \
  template Syz3Result<F> syz3star_reduced(const SystemF<F>&);

BIGRES_INSTANTIATE(PrimeField)
BIGRES_INSTANTIATE(RationalField)
#undef BIGRES_INSTANTIATE

}  // namespace bigres
