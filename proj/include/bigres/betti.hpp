#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bigres/polymatrix.hpp"
#include "bigres/strands.hpp"

namespace bigres {

/// Ideal: beta_{i,a} counts shifts in position i of a minimal resolution of
/// I_W (beta_0 are the generators). Quotient: beta_{i,a} = dim Tor_i(R/I, K)_a,
/// so Ideal index i corresponds to Quotient index i+1.
enum class Convention { Ideal, Quotient };
std::string to_string(Convention c);
Convention parse_convention(const std::string& text);

struct BettiTable {
  Convention convention = Convention::Ideal;
  BiDegree box;
  /// (i, a) -> multiplicity, only positive entries stored.
  std::map<std::pair<int, BiDegree>, std::size_t> entries;
  /// Set when basepoint-freeness of the input could not be established.
  std::optional<std::string> warning;

  std::size_t at(int i, BiDegree a) const;
  /// Entries of homological index i, sorted by bidegree.
  std::vector<std::pair<BiDegree, std::size_t>> row(int i) const;
  std::size_t total(int i) const;
  BettiTable converted(Convention c) const;

  /// {"convention": ..., "entries": [[i, a1, a2, mult], ...]} sorted
  /// lexicographically; "box" and "warning" are included as extra keys.
  std::string to_json() const;
  /// One line per homological index: "beta_1: (1,3) (2,2)^3 (3,1)".
  std::string to_text() const;

  friend bool operator==(const BettiTable& a, const BettiTable& b) {
    return a.convention == b.convention && a.entries == b.entries;
  }
};

/// dim Tor_i(R/I, K)_a for i = 0..4 from the Koszul complex on s,t,u,v
/// tensored with the quotient strands.
template <class F>
std::array<std::size_t, 5> tor_strand(StrandCache<F>& cache, BiDegree a);

/// Betti numbers for every a <= box, computed in parallel over bidegrees.
template <class F>
BettiTable betti_table(const SystemF<F>& sys, BiDegree box, Convention convention = Convention::Ideal);

/// beta^I_1 with the three Koszul syzygies at 2d removed.
std::map<BiDegree, std::size_t> nonkoszul_beta1(const BettiTable& table, BiDegree d);

/// Dimensions of the strand at a of the complex
/// 0 -> H1(-4) -> H1(-3)^4 -> H1(-2)^6 -> H1(-1)^4 -> H1 -> 0
/// built on s,t,u,v: c[j] is the dimension of the j-th term, h[j] its homology.
struct MComplexDims {
  std::array<std::size_t, 5> c{};
  std::array<std::size_t, 5> h{};
};

template <class F>
MComplexDims mcomplex_dims(StrandCache<F>& cache, BiDegree a);
template <class F>
MComplexDims mcomplex_dims(const SystemF<F>& sys, BiDegree a);

/// Sum of dim H(M)_{j,a} over a <= box for j = 0..4, parallel over a.
template <class F>
std::array<std::size_t, 5> mcomplex_totals(StrandCache<F>& cache, BiDegree box);

struct FastBeta1Options {
  /// Outside the critical ranges phi1 and phi2 have full rank for basepoint
  /// free input, so dim H1 follows from the strand sizes. When false every
  /// strand is ranked explicitly.
  bool full_rank_outside_critical = true;
  /// Restrict the exact evaluation to these bidegrees (empty = no restriction).
  std::vector<BiDegree> only;
};

struct FastBeta1Result {
  std::map<BiDegree, std::size_t> beta;
  /// Bidegrees where the second difference of dim H1 was positive, so the
  /// minimal generators were computed explicitly.
  std::vector<BiDegree> evaluated;
  std::size_t ranked_strands = 0;
};

/// Non-Koszul first Betti numbers on [0,box] as dim H(M)_0: minimal
/// generators of H1. In a fixed a2-row the first part of H1 is a free
/// K[s,t]-module (a kernel of a map of free modules over a polynomial ring in
/// two variables), so its generator count in degree a is the second
/// difference h(a) - 2h(a-e1) + h(a-2e1); the true count of minimal
/// generators is bounded by it and only computed where it is positive. The
/// second part is handled symmetrically along a2.
template <class F>
FastBeta1Result nonkoszul_beta1_fast(StrandCache<F>& cache, BiDegree box, const FastBeta1Options& opt = {});

template <class F>
struct SyzygyVector {
  std::array<BiPoly<F>, 3> sigma;
  /// Degree of the syzygy as a shift: deg sigma_i + d.
  BiDegree total;

  /// sigma_0 f_0 + sigma_1 f_1 + sigma_2 f_2 == 0.
  bool annihilates(const std::array<BiPoly<F>, 3>& f) const;
  std::string to_string() const;
};

/// Builds a syzygy of total degree `total` for generators of degree d,
/// checking the defining identity; throws ComputationError when it fails.
template <class F>
SyzygyVector<F> make_syzygy(const std::array<BiPoly<F>, 3>& f, std::array<BiPoly<F>, 3> sigma, BiDegree d);

/// The (0,2n)-entried syzygy of a d=(1,n) system: signed 2x2 minors of the
/// matrix [p; q] of the s- and t-coefficients. Throws ComputationError when
/// the minors vanish identically (the system then has basepoints).
template <class F>
SyzygyVector<F> alicia_syzygy(const SystemF<F>& sys);

/// (0,f2,-f1), (-f2,0,f0), (f1,-f0,0).
template <class F>
std::array<SyzygyVector<F>, 3> koszul_syzygies(const SystemF<F>& sys);

/// For d=(1,n): A (3x4) with columns the minor syzygy and the Koszul-type
/// columns (f1,-f0,0), (f2,0,-f0), (0,f2,-f1); A' (4x3) relating them; and the
/// kernel vector of A'. Both products are verified to vanish.
template <class F>
struct Prop32Matrices {
  PolyMatrix<F> A;
  PolyMatrix<F> Aprime;
  std::array<BiPoly<F>, 3> third;
};
template <class F>
Prop32Matrices<F> prop32_matrices(const SystemF<F>& sys);

/// Matrix of binary forms, row-major.
template <class F>
using FormMatrix = std::vector<std::vector<BinaryForm<F>>>;

/// Minimal homogeneous generators of the kernel of a rows x cols matrix of
/// binary forms whose nonzero entries all have degree n: columns x in
/// K[u,v]^cols with sum_j M_ij x_j = 0. Generators are found strand by
/// strand in ascending degree until their number reaches the generic corank.
template <class F>
struct GradedKernel {
  std::vector<std::vector<BinaryForm<F>>> columns;
  std::vector<int> degrees;
};
template <class F>
GradedKernel<F> graded_kernel(const F& field, const FormMatrix<F>& m, int n);

/// Rank of a matrix of binary forms over the function field K(u,v).
template <class F>
std::size_t generic_rank(const F& field, const FormMatrix<F>& m, int n);

template <class F>
struct HilbertBurchData {
  std::vector<BinaryForm<F>> generators;
  /// kernel[k] is the k-th column, one entry per generator.
  std::vector<std::vector<BinaryForm<F>>> kernel;
  std::vector<int> column_degrees;
};

/// Minimal graded syzygies of m >= 2 binary forms of degree n with constant
/// gcd. Throws ComputationError when the gcd is not constant.
template <class F>
HilbertBurchData<F> hb_kernel(const std::vector<BinaryForm<F>>& q);

/// The four coefficient equations of a syzygy quadratic in s,t as a 4x9
/// matrix in q_0..q_5 where f_i = s q_i + t q_{i+3}; unknowns are ordered
/// [a0,b0,c0,a1,b1,c1,a2,b2,c2] with sigma = (s^2 a0 + st a1 + t^2 a2, ...).
template <class F>
FormMatrix<F> syz3_matrix(const SystemF<F>& sys);

template <class F>
struct Syz3Result {
  std::vector<SyzygyVector<F>> syzygies;
  /// Column degrees of the Hilbert-Burch matrix of q_0..q_5.
  std::vector<int> b;
  /// K as a 5x9 matrix of binary forms (rows = syzygies).
  FormMatrix<F> K;
  FormMatrix<F> M;
};

/// The five syzygies quadratic in s,t of a d=(1,n) system whose six forms
/// q_i are linearly independent, built from 4x4 minors of the Hilbert-Burch
/// matrix. Each is verified, M K^t == 0 is checked, and the count is cross
/// checked against the strand kernels R^3_(2,m) -> R_(3,m+n). Throws
/// ComputationError when the q_i are dependent (use syz3star_reduced).
template <class F>
Syz3Result<F> syz3star(const SystemF<F>& sys);

/// Same syzygies for any basepoint free d=(1,n) system, computed as the
/// graded kernel of M directly.
template <class F>
Syz3Result<F> syz3star_reduced(const SystemF<F>& sys);

/// Dimension of the q-span (rank of the 6 x (n+1) coefficient matrix).
template <class F>
std::size_t q_span_dim(const SystemF<F>& sys);

/// SyzygyVector entries (2, m) from a kernel column [a0,b0,c0,a1,...,c2].
template <class F>
SyzygyVector<F> syzygy_from_quadratic(const SystemF<F>& sys, const std::vector<BinaryForm<F>>& x);

}  // namespace bigres
