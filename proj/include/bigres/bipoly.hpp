#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bigres/field.hpp"
#include "bigres/matrix.hpp"

namespace bigres {

/// A bidegree (a1, a2): a1 counts s,t and a2 counts u,v. Negative entries
/// are allowed for bookkeeping.
struct BiDegree {
  int a1 = 0;
  int a2 = 0;

  bool nonnegative() const { return a1 >= 0 && a2 >= 0; }
  /// Componentwise partial order.
  bool leq(const BiDegree& o) const { return a1 <= o.a1 && a2 <= o.a2; }
  std::string to_string() const;

  friend BiDegree operator+(BiDegree a, BiDegree b) { return {a.a1 + b.a1, a.a2 + b.a2}; }
  friend BiDegree operator-(BiDegree a, BiDegree b) { return {a.a1 - b.a1, a.a2 - b.a2}; }
  friend BiDegree operator*(int k, BiDegree a) { return {k * a.a1, k * a.a2}; }
  /// Lexicographic, for use as an ordered key.
  friend auto operator<=>(const BiDegree&, const BiDegree&) = default;
};

/// dim R_a: (a1+1)(a2+1) for a >= 0, else 0.
inline std::size_t dimR(BiDegree a) {
  return a.nonnegative() ? static_cast<std::size_t>(a.a1 + 1) * static_cast<std::size_t>(a.a2 + 1)
                         : 0;
}

struct Monomial {
  int s = 0, t = 0, u = 0, v = 0;
  BiDegree degree() const { return {s + t, u + v}; }
  /// "s*t^0*u^2*v^4" style: every variable listed, bare when the exponent is 1.
  std::string to_string() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Monomials s^i t^(a1-i) u^j v^(a2-j) with i descending, then j descending.
std::vector<Monomial> strand_basis(BiDegree a);

/// Position of s^es t^(a1-es) u^eu v^(a2-eu) in strand_basis(a).
inline std::size_t monomial_index(BiDegree a, int es, int eu) {
  return static_cast<std::size_t>(a.a1 - es) * static_cast<std::size_t>(a.a2 + 1) +
         static_cast<std::size_t>(a.a2 - eu);
}

/// Bihomogeneous polynomial stored densely in strand_basis(degree()) order.
template <class F>
class BiPoly {
 public:
  using Element = typename F::Element;

  BiPoly() = default;
  /// Zero polynomial of the given degree (a negative degree gives an empty
  /// coefficient vector).
  BiPoly(const F& field, BiDegree degree)
      : field_(field), degree_(degree), coeffs_(dimR(degree), field.zero()) {}

  static BiPoly from_coeffs(const F& field, BiDegree degree, Vec<F> coeffs);
  static BiPoly monomial(const F& field, const Monomial& m, Element c);

  const F& field() const { return field_; }
  BiDegree degree() const { return degree_; }
  const Vec<F>& coeffs() const { return coeffs_; }

  Element coeff(int es, int eu) const { return coeffs_[monomial_index(degree_, es, eu)]; }
  void add_term(int es, int eu, const Element& c);

  bool is_zero() const;
  std::size_t term_count() const;

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator-() const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly scaled(const Element& c) const;

  /// Canonical rendering, terms in strand order; "0" for the zero polynomial.
  std::string to_string() const;

  /// Zero polynomials compare equal regardless of declared degree.
  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  F field_{};
  BiDegree degree_{};
  Vec<F> coeffs_;
};

/// Matrix of multiplication by g from R_b to R_{b+deg g} in strand bases.
template <class F>
Matrix<F> mul_matrix(const BiPoly<F>& g, BiDegree b);

/// Appends the entries of mul_matrix(g, b) to a row system at the given
/// offsets, scaled by `scale`.
template <class F>
void append_mul_block(RowSystem<F>& rs, const BiPoly<F>& g, BiDegree b, std::size_t row0,
                      std::size_t col0, const typename F::Element& scale);

/// Binary form of degree n: coefficient j belongs to u^j v^(n-j).
template <class F>
class BinaryForm {
 public:
  using Element = typename F::Element;

  BinaryForm() = default;
  BinaryForm(const F& field, int degree)
      : field_(field), degree_(degree), coeffs_(degree >= 0 ? degree + 1 : 0, field.zero()) {}

  static BinaryForm from_coeffs(const F& field, Vec<F> coeffs);
  static BinaryForm monomial(const F& field, int eu, int ev, const Element& c);

  const F& field() const { return field_; }
  int degree() const { return degree_; }
  const Vec<F>& coeffs() const { return coeffs_; }
  Element coeff(int j) const { return coeffs_[static_cast<std::size_t>(j)]; }
  void set(int j, const Element& c) { coeffs_[static_cast<std::size_t>(j)] = c; }

  bool is_zero() const;
  /// Exponent of the largest power of v dividing a nonzero form.
  int v_valuation() const;

  BinaryForm operator+(const BinaryForm& o) const;
  BinaryForm operator-(const BinaryForm& o) const;
  BinaryForm operator-() const;
  BinaryForm operator*(const BinaryForm& o) const;
  BinaryForm scaled(const Element& c) const;
  Element eval(const Element& u, const Element& v) const;

  BiPoly<F> to_bipoly() const;
  static BinaryForm from_bipoly(const BiPoly<F>& p);
  std::string to_string() const;

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  F field_{};
  int degree_ = 0;
  Vec<F> coeffs_;
};

/// f of degree (1,n) written as s*p + t*q.
template <class F>
struct StSplit {
  BinaryForm<F> p;
  BinaryForm<F> q;
};

template <class F>
StSplit<F> split_st(const BiPoly<F>& f);

/// s*p + t*q for binary forms of equal degree.
template <class F>
BiPoly<F> join_st(const BinaryForm<F>& p, const BinaryForm<F>& q);

/// Product of a binary form (degree (0,n)) and a bihomogeneous polynomial.
template <class F>
BiPoly<F> times(const BinaryForm<F>& h, const BiPoly<F>& g);

/// Monic gcd (coefficient of the highest u-power is 1). Throws
/// std::invalid_argument when both inputs are zero.
template <class F>
BinaryForm<F> gcd_binary(const BinaryForm<F>& p, const BinaryForm<F>& q);

/// a / b when b divides a exactly, otherwise nullopt. b must be nonzero.
template <class F>
std::optional<BinaryForm<F>> divide_exact(const BinaryForm<F>& a, const BinaryForm<F>& b);

}  // namespace bigres
