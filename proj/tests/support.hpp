#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>

#include "bigres/system.hpp"

namespace testing_support {

using namespace bigres;

struct Term {
  std::int64_t c;
  int s, t, u, v;
};

template <class F>
BiPoly<F> poly(const F& f, BiDegree d, std::initializer_list<Term> terms) {
  BiPoly<F> p(f, d);
  for (const auto& tm : terms) {
    if (tm.s + tm.t != d.a1 || tm.u + tm.v != d.a2) throw std::logic_error("bad test term");
    p.add_term(tm.s, tm.u, f.from_int(tm.c));
  }
  return p;
}

inline PrimeField::Element rand_elem(const PrimeField& f, std::mt19937_64& rng) {
  return static_cast<PrimeField::Element>(rng() % f.modulus());
}
inline RationalField::Element rand_elem(const RationalField& f, std::mt19937_64& rng) {
  return f.from_int(static_cast<std::int64_t>(rng() % 21) - 10);
}

template <class F>
BiPoly<F> random_bipoly(const F& f, BiDegree d, std::mt19937_64& rng) {
  Vec<F> c;
  for (std::size_t i = 0; i < dimR(d); ++i) c.push_back(rand_elem(f, rng));
  return BiPoly<F>::from_coeffs(f, d, std::move(c));
}

template <class F>
BinaryForm<F> random_form(const F& f, int n, std::mt19937_64& rng) {
  Vec<F> c;
  for (int i = 0; i <= n; ++i) c.push_back(rand_elem(f, rng));
  return BinaryForm<F>::from_coeffs(f, std::move(c));
}

/// Random triple with linearly independent entries (no basepoint test).
template <class F>
SystemF<F> random_system(const F& f, BiDegree d, std::mt19937_64& rng) {
  for (;;) {
    try {
      return SystemF<F>(f, d, {random_bipoly(f, d, rng), random_bipoly(f, d, rng), random_bipoly(f, d, rng)});
    } catch (const std::invalid_argument&) {
    }
  }
}

/// f = {s u^n, t v^n, (s+t)(u^n+v^n)}: factorizable and not generic.
template <class F>
SystemF<F> maps6_system(const F& f, int n = 6) {
  BiDegree d{1, n};
  BiPoly<F> f0(f, d), f1(f, d), f2(f, d);
  f0.add_term(1, n, f.one());
  f1.add_term(0, 0, f.one());
  for (int es : {0, 1})
    for (int eu : {0, n}) f2.add_term(es, eu, f.one());
  return SystemF<F>(f, d, {f0, f1, f2});
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// (t a0, s a0 + t a1, s a1): the smooth conic normal form.
template <class F>
SystemF<F> conic_system(const BinaryForm<F>& a0, const BinaryForm<F>& a1) {
  const F& f = a0.field();
  BinaryForm<F> z(f, a0.degree());
  return SystemF<F>(f, {1, a0.degree()}, {join_st(z, a0), join_st(a0, a1), join_st(a1, z)});
}

/// Random invertible change of basis applied to the three generators.
template <class F>
SystemF<F> mix(const SystemF<F>& sys, std::mt19937_64& rng) {
  const F& f = sys.field();
  for (;;) {
    Matrix<F> c(f, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) c(i, j) = rand_elem(f, rng);
    if (f.is_zero(mat_det(c))) continue;
    std::array<BiPoly<F>, 3> g;
    for (std::size_t k = 0; k < 3; ++k) {
      g[k] = BiPoly<F>(f, sys.d());
      for (std::size_t i = 0; i < 3; ++i) g[k] = g[k] + sys[i].scaled(c(i, k));
    }
    return SystemF<F>(f, sys.d(), g);
  }
}

}  // namespace testing_support
