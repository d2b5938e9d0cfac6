#pragma once

#include <array>
#include <string>
#include <vector>

#include "bigres/betti.hpp"
#include "bigres/polymatrix.hpp"
#include "bigres/system.hpp"

namespace bigres {

/// 0 <- I <- F0 <- F1 <- F2 <- F3 <- 0 with F_i = sum_c R(-shifts[i][c]).
/// differentials[i-1] is d_i : F_i -> F_{i-1}, a |F_{i-1}| x |F_i| matrix;
/// F0 maps onto I through the row vector `generators`.
template <class F>
struct ResolutionComplex {
  SystemF<F> system;
  std::array<BiPoly<F>, 3> generators;
  std::vector<std::vector<BiDegree>> shifts;
  std::vector<PolyMatrix<F>> differentials;

  /// Shifts of F_i as an ideal-convention Betti table (F0 = index 0).
  BettiTable betti() const;
  std::string to_string() const;
};

struct VerificationFailure {
  std::string check;  // "compose", "degree", "exact", "euler", "minimal", "shape"
  int spot = -1;      // homological position, -1 when not applicable
  BiDegree a{};
  std::string detail;
};

struct VerificationReport {
  BiDegree box{};
  std::vector<VerificationFailure> failures;
  std::size_t strands_checked = 0;

  bool ok() const { return failures.empty(); }
  /// True when some failure has the given check name and spot.
  bool has_failure(const std::string& check, int spot) const;
  std::string to_string() const;
  std::string to_json() const;
};

/// Checks, for every a <= box: [generators] d1 == 0 and d_i d_{i+1} == 0 as
/// polynomials; each entry has degree shift(column) - shift(row); exactness
/// of the degree-a strand at F0 (against I_a), F1, F2 and injectivity at F3;
/// dim (R/I)_a == dim R_a - F0_a + F1_a - F2_a + F3_a; and no nonzero entry
/// of degree (0,0).
template <class F>
VerificationReport verify_resolution(const ResolutionComplex<F>& rc, BiDegree box);

/// Default verification box: the largest shift coordinate plus (3,3).
template <class F>
BiDegree default_verification_box(const ResolutionComplex<F>& rc);

}  // namespace bigres
