#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bigres/bipoly.hpp"

namespace bigres {

inline long long pos_part(long long c) { return c > 0 ? c : 0; }
inline long long neg_part(long long c) { return c < 0 ? -c : 0; }

/// Dimension of the domain of the kernel description of H1 at a:
/// (a1-3d1+1)_+(3d2-a2-1)_+ + (3d1-a1-1)_+(a2-3d2+1)_+.
long long dom_d(BiDegree d, BiDegree a);
/// Dimension of one copy of its codomain:
/// (a1-2d1+1)_+(2d2-a2-1)_+ + (2d1-a1-1)_+(a2-2d2+1)_+.
long long cod_d(BiDegree d, BiDegree a);
/// Expected generic dimension of H1 at a: (dom_d - 3 cod_d)_+.
long long nd(BiDegree d, BiDegree a);
/// The unclamped difference dom_d - 3 cod_d.
long long nd_signed(BiDegree d, BiDegree a);

/// Euler characteristic of the degree-a strand of the Koszul complex on three
/// forms of degree d: sum_k (-1)^k C(3,k) dim R_{a-kd}.
long long chi(BiDegree d, BiDegree a);

enum class RegionTag { A1, A2, A3, A4, Gap };
std::string to_string(RegionTag t);

struct RegionValue {
  RegionTag tag = RegionTag::Gap;
  /// Piecewise polynomial value; absent for Gap.
  std::optional<long long> value;
};

/// Tests the four published region predicates in order A1, A2, A3, A4 and
/// evaluates the first match; Gap when none applies.
RegionValue chi_region(BiDegree d, BiDegree a);

/// -1, 0 or +1.
int chi_sign(BiDegree d, BiDegree a);

/// Grids indexed [a1][a2] over [0,box].
struct SeriesGrids {
  std::vector<std::vector<long long>> chi, plus, minus;
};
SeriesGrids series_coeffs(BiDegree d, BiDegree box);

/// Grid of nd over [0,box], indexed [a1][a2].
std::vector<std::vector<long long>> nd_grid(BiDegree d, BiDegree box);

/// True when a lies in the ranges where genericity is not automatic:
/// (a1 >= 3d1 and d2 <= a2 <= 2d2-2) or (a2 >= 3d2 and d1 <= a1 <= 2d1-2).
bool in_critical_range(BiDegree d, BiDegree a);

}  // namespace bigres
