#include "bigres/bipoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace bigres {

std::string BiDegree::to_string() const {
  return "(" + std::to_string(a1) + "," + std::to_string(a2) + ")";
}

namespace {

std::string power(char var, int e) {
  std::string s(1, var);
  if (e != 1) s += "^" + std::to_string(e);
  return s;
}

// Joins rendered terms; a term starting with '-' is shown as a subtraction.
std::string join_terms(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string out = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i][0] == '-')
      out += " - " + terms[i].substr(1);
    else
      out += " + " + terms[i];
  }
  return out;
}

template <class F>
std::string render_term(const F& f, const typename F::Element& c, const std::string& mono) {
  if (f.is_one(c)) return mono;
  if (f.is_one(f.neg(c))) return "-" + mono;
  return f.to_string(c) + "*" + mono;
}

template <class F>
using Poly = Vec<F>;  // univariate, ascending powers

template <class F>
void strip(const F& f, Poly<F>& a) {
  while (!a.empty() && f.is_zero(a.back())) a.pop_back();
}

// Remainder and quotient of univariate division (b nonzero, stripped).
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const F& f, Poly<F> a, const Poly<F>& b) {
  strip(f, a);
  if (a.size() < b.size()) return {Poly<F>{}, a};
  Poly<F> q(a.size() - b.size() + 1, f.zero());
  const auto lead_inv = f.inv(b.back());
  const std::size_t nb = b.size();
  for (std::size_t top = a.size(); top >= nb; --top) {
    const std::size_t k = top - 1;
    if (f.is_zero(a[k])) continue;
    const auto c = f.mul(a[k], lead_inv);
    const std::size_t shift = k - (nb - 1);
    q[shift] = c;
    for (std::size_t i = 0; i < nb; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
  }
  strip(f, a);
  strip(f, q);
  return {q, a};
}

}  // namespace

std::string Monomial::to_string() const {
  return power('s', s) + "*" + power('t', t) + "*" + power('u', u) + "*" + power('v', v);
}

std::vector<Monomial> strand_basis(BiDegree a) {
  std::vector<Monomial> out;
  if (!a.nonnegative()) return out;
  out.reserve(dimR(a));
  for (int i = a.a1; i >= 0; --i)
    for (int j = a.a2; j >= 0; --j) out.push_back({i, a.a1 - i, j, a.a2 - j});
  return out;
}

template <class F>
BiPoly<F> BiPoly<F>::from_coeffs(const F& field, BiDegree degree, Vec<F> coeffs) {
  if (coeffs.size() != dimR(degree))
    throw std::invalid_argument("BiPoly::from_coeffs: expected " + std::to_string(dimR(degree)) +
                                " coefficients for degree " + degree.to_string());
  BiPoly p(field, degree);
  p.coeffs_ = std::move(coeffs);
  return p;
}

template <class F>
BiPoly<F> BiPoly<F>::monomial(const F& field, const Monomial& m, Element c) {
  if (m.s < 0 || m.t < 0 || m.u < 0 || m.v < 0)
    throw std::invalid_argument("negative exponent in monomial");
  BiPoly p(field, m.degree());
  p.coeffs_[monomial_index(p.degree_, m.s, m.u)] = std::move(c);
  return p;
}

template <class F>
void BiPoly<F>::add_term(int es, int eu, const Element& c) {
  if (es < 0 || es > degree_.a1 || eu < 0 || eu > degree_.a2)
    throw std::invalid_argument("term outside degree " + degree_.to_string());
  auto& slot = coeffs_[monomial_index(degree_, es, eu)];
  slot = field_.add(slot, c);
}

template <class F>
bool BiPoly<F>::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const Element& c) { return field_.is_zero(c); });
}

template <class F>
std::size_t BiPoly<F>::term_count() const {
  return static_cast<std::size_t>(std::count_if(
      coeffs_.begin(), coeffs_.end(), [&](const Element& c) { return !field_.is_zero(c); }));
}

template <class F>
BiPoly<F> BiPoly<F>::operator+(const BiPoly& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (degree_ != o.degree_)
    throw std::invalid_argument("adding polynomials of degrees " + degree_.to_string() + " and " +
                                o.degree_.to_string());
  BiPoly r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = field_.add(r.coeffs_[i], o.coeffs_[i]);
  return r;
}

template <class F>
BiPoly<F> BiPoly<F>::operator-() const {
  BiPoly r = *this;
  for (auto& c : r.coeffs_) c = field_.neg(c);
  return r;
}

template <class F>
BiPoly<F> BiPoly<F>::operator-(const BiPoly& o) const {
  return *this + (-o);
}

template <class F>
BiPoly<F> BiPoly<F>::operator*(const BiPoly& o) const {
  BiPoly r(field_, degree_ + o.degree_);
  if (!degree_.nonnegative() || !o.degree_.nonnegative()) return r;
  for (int i = 0; i <= degree_.a1; ++i)
    for (int j = 0; j <= degree_.a2; ++j) {
      const Element& a = coeffs_[monomial_index(degree_, i, j)];
      if (field_.is_zero(a)) continue;
      for (int k = 0; k <= o.degree_.a1; ++k)
        for (int l = 0; l <= o.degree_.a2; ++l) {
          const Element& b = o.coeffs_[monomial_index(o.degree_, k, l)];
          if (field_.is_zero(b)) continue;
          auto& slot = r.coeffs_[monomial_index(r.degree_, i + k, j + l)];
          slot = field_.add(slot, field_.mul(a, b));
        }
    }
  return r;
}

template <class F>
BiPoly<F> BiPoly<F>::scaled(const Element& c) const {
  BiPoly r = *this;
  for (auto& x : r.coeffs_) x = field_.mul(x, c);
  return r;
}

template <class F>
std::string BiPoly<F>::to_string() const {
  std::vector<std::string> terms;
  const auto basis = strand_basis(degree_);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!field_.is_zero(coeffs_[k])) terms.push_back(render_term(field_, coeffs_[k], basis[k].to_string()));
  return join_terms(terms);
}

template <class F>
Matrix<F> mul_matrix(const BiPoly<F>& g, BiDegree b) {
  const F& f = g.field();
  const BiDegree out = b + g.degree();
  Matrix<F> m(f, dimR(out), dimR(b));
  if (!b.nonnegative() || !g.degree().nonnegative()) return m;
  const BiDegree dg = g.degree();
  for (int i = 0; i <= b.a1; ++i)
    for (int j = 0; j <= b.a2; ++j) {
      const std::size_t col = monomial_index(b, i, j);
      for (int k = 0; k <= dg.a1; ++k)
        for (int l = 0; l <= dg.a2; ++l) {
          const auto& c = g.coeffs()[monomial_index(dg, k, l)];
          if (f.is_zero(c)) continue;
          m(monomial_index(out, i + k, j + l), col) = c;
        }
    }
  return m;
}

template <class F>
void append_mul_block(RowSystem<F>& rs, const BiPoly<F>& g, BiDegree b, std::size_t row0,
                      std::size_t col0, const typename F::Element& scale) {
  const F& f = g.field();
  if (!b.nonnegative() || !g.degree().nonnegative() || f.is_zero(scale)) return;
  const BiDegree dg = g.degree();
  const BiDegree out = b + dg;
  struct Term {
    int k, l;
    typename F::Element c;
  };
  std::vector<Term> terms;
  for (int k = 0; k <= dg.a1; ++k)
    for (int l = 0; l <= dg.a2; ++l) {
      const auto& c = g.coeffs()[monomial_index(dg, k, l)];
      if (!f.is_zero(c)) terms.push_back({k, l, f.mul(c, scale)});
    }
  for (int i = 0; i <= b.a1; ++i)
    for (int j = 0; j <= b.a2; ++j) {
      const std::size_t col = col0 + monomial_index(b, i, j);
      for (const auto& t : terms)
        rs.rows[row0 + monomial_index(out, i + t.k, j + t.l)].emplace_back(col, t.c);
    }
}

template <class F>
BinaryForm<F> BinaryForm<F>::from_coeffs(const F& field, Vec<F> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("BinaryForm needs at least one coefficient");
  BinaryForm b(field, static_cast<int>(coeffs.size()) - 1);
  b.coeffs_ = std::move(coeffs);
  return b;
}

template <class F>
BinaryForm<F> BinaryForm<F>::monomial(const F& field, int eu, int ev, const Element& c) {
  BinaryForm b(field, eu + ev);
  b.coeffs_[static_cast<std::size_t>(eu)] = c;
  return b;
}

template <class F>
bool BinaryForm<F>::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [&](const Element& c) { return field_.is_zero(c); });
}

template <class F>
int BinaryForm<F>::v_valuation() const {
  for (int j = degree_; j >= 0; --j)
    if (!field_.is_zero(coeffs_[static_cast<std::size_t>(j)])) return degree_ - j;
  throw std::invalid_argument("v-valuation of the zero form");
}

template <class F>
BinaryForm<F> BinaryForm<F>::operator+(const BinaryForm& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (degree_ != o.degree_)
    throw std::invalid_argument("adding binary forms of degrees " + std::to_string(degree_) +
                                " and " + std::to_string(o.degree_));
  BinaryForm r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = field_.add(r.coeffs_[i], o.coeffs_[i]);
  return r;
}

template <class F>
BinaryForm<F> BinaryForm<F>::operator-() const {
  BinaryForm r = *this;
  for (auto& c : r.coeffs_) c = field_.neg(c);
  return r;
}

template <class F>
BinaryForm<F> BinaryForm<F>::operator-(const BinaryForm& o) const {
  return *this + (-o);
}

template <class F>
BinaryForm<F> BinaryForm<F>::operator*(const BinaryForm& o) const {
  BinaryForm r(field_, degree_ + o.degree_);
  if (degree_ < 0 || o.degree_ < 0) return r;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (field_.is_zero(coeffs_[i])) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      r.coeffs_[i + j] = field_.add(r.coeffs_[i + j], field_.mul(coeffs_[i], o.coeffs_[j]));
  }
  return r;
}

template <class F>
BinaryForm<F> BinaryForm<F>::scaled(const Element& c) const {
  BinaryForm r = *this;
  for (auto& x : r.coeffs_) x = field_.mul(x, c);
  return r;
}

template <class F>
typename F::Element BinaryForm<F>::eval(const Element& u, const Element& v) const {
  Element acc = field_.zero();
  Element upow = field_.one();
  std::vector<Element> vpow(coeffs_.size(), field_.one());
  for (std::size_t k = 1; k < vpow.size(); ++k) vpow[k] = field_.mul(vpow[k - 1], v);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    acc = field_.add(acc, field_.mul(coeffs_[j], field_.mul(upow, vpow[coeffs_.size() - 1 - j])));
    upow = field_.mul(upow, u);
  }
  return acc;
}

template <class F>
BiPoly<F> BinaryForm<F>::to_bipoly() const {
  BiPoly<F> p(field_, {0, degree_});
  for (int j = 0; j <= degree_; ++j) p.add_term(0, j, coeffs_[static_cast<std::size_t>(j)]);
  return p;
}

template <class F>
BinaryForm<F> BinaryForm<F>::from_bipoly(const BiPoly<F>& p) {
  if (p.degree().a1 != 0) throw std::invalid_argument("from_bipoly: s,t-degree must be 0");
  BinaryForm b(p.field(), p.degree().a2);
  for (int j = 0; j <= p.degree().a2; ++j) b.coeffs_[static_cast<std::size_t>(j)] = p.coeff(0, j);
  return b;
}

template <class F>
std::string BinaryForm<F>::to_string() const {
  std::vector<std::string> terms;
  for (int j = degree_; j >= 0; --j) {
    const auto& c = coeffs_[static_cast<std::size_t>(j)];
    if (!field_.is_zero(c))
      terms.push_back(render_term(field_, c, power('u', j) + "*" + power('v', degree_ - j)));
  }
  return join_terms(terms);
}

template <class F>
StSplit<F> split_st(const BiPoly<F>& f) {
  if (f.degree().a1 != 1)
    throw std::invalid_argument("split_st needs s,t-degree 1, got " + f.degree().to_string());
  const int n = f.degree().a2;
  StSplit<F> out{BinaryForm<F>(f.field(), n), BinaryForm<F>(f.field(), n)};
  for (int j = 0; j <= n; ++j) {
    out.p.set(j, f.coeff(1, j));
    out.q.set(j, f.coeff(0, j));
  }
  return out;
}

template <class F>
BiPoly<F> join_st(const BinaryForm<F>& p, const BinaryForm<F>& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("join_st: degree mismatch");
  BiPoly<F> f(p.field(), {1, p.degree()});
  for (int j = 0; j <= p.degree(); ++j) {
    f.add_term(1, j, p.coeff(j));
    f.add_term(0, j, q.coeff(j));
  }
  return f;
}

template <class F>
BiPoly<F> times(const BinaryForm<F>& h, const BiPoly<F>& g) {
  return h.to_bipoly() * g;
}

template <class F>
BinaryForm<F> gcd_binary(const BinaryForm<F>& p, const BinaryForm<F>& q) {
  const F& f = p.field();
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd of two zero binary forms");
  // Split off v-powers; the remaining forms have full u-degree, so their
  // dehomogenizations at v=1 keep the degree and Euclid applies directly.
  int vmin = 1 << 30;
  std::vector<Poly<F>> parts;
  for (const auto* g : {&p, &q}) {
    if (g->is_zero()) continue;
    const int val = g->v_valuation();
    vmin = std::min(vmin, val);
    Poly<F> a(g->coeffs().begin(), g->coeffs().begin() + (g->degree() - val + 1));
    parts.push_back(std::move(a));
  }
  Poly<F> a = parts[0];
  if (parts.size() == 2) {
    Poly<F> b = parts[1];
    strip(f, a);
    strip(f, b);
    while (!b.empty()) {
      auto r = divmod(f, a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
  }
  strip(f, a);
  const auto inv = f.inv(a.back());
  const int e = static_cast<int>(a.size()) - 1;
  BinaryForm<F> g(f, e + vmin);
  for (int j = 0; j <= e; ++j) g.set(j, f.mul(a[static_cast<std::size_t>(j)], inv));
  return g;
}

template <class F>
std::optional<BinaryForm<F>> divide_exact(const BinaryForm<F>& a, const BinaryForm<F>& b) {
  const F& f = a.field();
  if (b.is_zero()) throw std::invalid_argument("division by the zero form");
  const int qdeg = a.degree() - b.degree();
  if (a.is_zero()) {
    if (qdeg < 0) return std::nullopt;
    return BinaryForm<F>(f, qdeg);
  }
  if (qdeg < 0) return std::nullopt;
  const int va = a.v_valuation(), vb = b.v_valuation();
  if (va < vb) return std::nullopt;
  Poly<F> pa(a.coeffs().begin(), a.coeffs().begin() + (a.degree() - va + 1));
  Poly<F> pb(b.coeffs().begin(), b.coeffs().begin() + (b.degree() - vb + 1));
  auto [quot, rem] = divmod(f, pa, pb);
  if (!rem.empty()) return std::nullopt;
  BinaryForm<F> q(f, qdeg);
  for (std::size_t j = 0; j < quot.size(); ++j) q.set(static_cast<int>(j), quot[j]);
  return q;
}

#define BIGRES_INSTANTIATE(F)                                                                  \
  template class BiPoly<F>;                                                                    \
  template class BinaryForm<F>;                                                                \
  template Matrix<F> mul_matrix(const BiPoly<F>&, BiDegree);                                   \
  template void append_mul_block(RowSystem<F>&, const BiPoly<F>&, BiDegree, std::size_t,       \
                                 std::size_t, const typename F::Element&);                     \
  template StSplit<F> split_st(const BiPoly<F>&);                                              \
  template BiPoly<F> join_st(const BinaryForm<F>&, const BinaryForm<F>&);                      \
  template BiPoly<F> times(const BinaryForm<F>&, const BiPoly<F>&);                            \
  template BinaryForm<F> gcd_binary(const BinaryForm<F>&, const BinaryForm<F>&);               \
  template std::optional<BinaryForm<F>> divide_exact(const BinaryForm<F>&, const BinaryForm<F>&);

BIGRES_INSTANTIATE(PrimeField)
BIGRES_INSTANTIATE(RationalField)
#undef BIGRES_INSTANTIATE

}  // namespace bigres
