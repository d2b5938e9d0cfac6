#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bigres/betti.hpp"
#include "bigres/resolution.hpp"
#include "bigres/system.hpp"

namespace bigres {

/// Raised when a (3,n) syzygy exists but cannot be brought to normal form;
/// this only happens for input with basepoints.
class ImpossibleFactorization : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// Raised by the three-point construction when the h_i are linearly
/// dependent: the conic construction applies instead.
class ConicRedirect : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

enum class BasepointVerdict { Free, HasBasepoint, Inconclusive };
std::string to_string(BasepointVerdict v);

struct BasepointReport {
  BasepointVerdict verdict = BasepointVerdict::Inconclusive;
  /// "((s:t),(u:v))" when a basepoint with coordinates in the field was found.
  std::optional<std::string> witness;
  /// The gcd of the minors, the Hilbert function value used, or a hint.
  std::string evidence;
  std::string to_string() const;
};

/// d1 == 1 (or d2 == 1 after exchanging the factors): exact, via the gcd of
/// the 2x2 minors of the s,t-coefficient matrix. Otherwise one-sided: Free
/// when dim (R/I)_{kd} == 0 for some k in 3..5, else Inconclusive.
template <class F>
BasepointReport basepoint_free(const SystemF<F>& sys);

/// f with s,t exchanged for u,v: degree (d2,d1).
template <class F>
SystemF<F> swap_factors(const SystemF<F>& sys);

template <class F>
struct ConicNormalForm {
  BinaryForm<F> a0;
  BinaryForm<F> a1;
  /// f' = C^T f, where column k of C holds the coefficients of the syzygy at
  /// the quadric (s^2, -st, t^2)[k].
  Matrix<F> C;
  /// (t a0, s a0 + t a1, s a1).
  std::array<BiPoly<F>, 3> generators;
};

/// Kernel of R^3_(2,0) -> R_(3,n); nullopt when it is zero. Throws
/// ImpossibleFactorization when the kernel has dimension >= 2 or the basis
/// change is singular.
template <class F>
std::optional<ConicNormalForm<F>> detect_conic(const SystemF<F>& sys);

/// Throws std::invalid_argument when detect_conic finds no (3,n) syzygy.
template <class F>
ResolutionComplex<F> conic_resolution(const SystemF<F>& sys);

/// f_i = g_i h_i with deg g_i = (1,level) and deg h_i = (0, n - level).
template <class F>
struct FactorizedBasis {
  int level = 0;
  std::array<BiPoly<F>, 3> g;
  std::array<BinaryForm<F>, 3> h;

  std::array<BiPoly<F>, 3> products() const;
};

/// Writes each f_i of a d=(1,n) system as (linear form in s,t) * h_i, or
/// nullopt when some f_i does not factor that way.
template <class F>
std::optional<FactorizedBasis<F>> factor_linear(const SystemF<F>& sys);

template <class F>
struct ThreePointResult {
  ResolutionComplex<F> complex;
  int mu = 0;
};

/// Level-0 factorized basis with independent h_i. Throws ConicRedirect when
/// the h_i are dependent and ComputationError when the l_i are all
/// proportional or the h_i share a factor.
template <class F>
ThreePointResult<F> three_point_resolution(const FactorizedBasis<F>& fb);

/// (g1 g2 a0, g0 g2 a1, g0 g1 a2); throws std::invalid_argument when a is
/// not a syzygy of the h_i.
template <class F>
SyzygyVector<F> lift_syzygy(const FactorizedBasis<F>& fb, const std::array<BinaryForm<F>, 3>& a);

/// Coefficient vector in R_(1,n) (basis s u^n, ..., s v^n, t u^n, ..., t v^n)
/// of g*h, where g in R_(1,i) is given in strand order and h in K[u,v]_(n-i)
/// by its coefficients of u^(n-i), u^(n-i-1) v, ..., v^(n-i).
template <class F>
Vec<F> psi_image(const F& field, int i, int n, const Vec<F>& g, const Vec<F>& h);

/// The quartic in the coordinates x0..x5 of R_(1,2): the resultant of
/// x0 u^2 + x1 uv + x2 v^2 and x3 u^2 + x4 uv + x5 v^2.
template <class F>
typename F::Element quartic_Q(const F& field, const Vec<F>& x);

/// {(1,3n), (2,2n)^3, (3,n+2), (3,2n-1)^2, (6,2n-2)}, sorted. Requires n >= 3.
std::vector<BiDegree> pencil_expected_degrees(int n);

template <class F>
struct SquareStrand {
  Matrix<F> matrix;
  typename F::Element det;
};

/// phi1 at (3,8) for d=(1,5): rows are the s- and t-coefficient rows of each
/// f_l, columns ordered by the u-exponent of the inverse monomial, ascending.
template <class F>
SquareStrand<F> square_strand_det(const SystemF<F>& sys);
/// Same for three polynomials of degree (1,5) that need not be independent.
template <class F>
SquareStrand<F> square_strand_det(const F& field, const std::array<BiPoly<F>, 3>& f);

enum class SegreVerdict { SmoothConic, ThreeNoncollinearPoints, PencilFactorized, GenericLike, Inconclusive };
std::string to_string(SegreVerdict v);

struct SegreClassification {
  SegreVerdict verdict = SegreVerdict::Inconclusive;
  std::optional<int> mu;
  std::vector<BiDegree> syzygy_degrees;
  BasepointReport basepoint;
  std::vector<std::string> notes;
  std::string to_json() const;
};

/// d=(1,n) only: conic detection, then level-0 and level-1 factorizations
/// from gcd(p_i, q_i), then a genericity check on the default box.
template <class F>
SegreClassification classify(const SystemF<F>& sys);

}  // namespace bigres
