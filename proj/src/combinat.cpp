#include "bigres/combinat.hpp"

namespace bigres {

namespace {

long long pp(long long x) { return x > 0 ? x : 0; }

long long dim_strand(long long b1, long long b2) {
  return (b1 >= 0 && b2 >= 0) ? (b1 + 1) * (b2 + 1) : 0;
}

}  // namespace

long long dom_d(BiDegree d, BiDegree a) {
  return pp(a.a1 - 3 * d.a1 + 1) * pp(3 * d.a2 - a.a2 - 1) +
         pp(3 * d.a1 - a.a1 - 1) * pp(a.a2 - 3 * d.a2 + 1);
}

long long cod_d(BiDegree d, BiDegree a) {
  return pp(a.a1 - 2 * d.a1 + 1) * pp(2 * d.a2 - a.a2 - 1) +
         pp(2 * d.a1 - a.a1 - 1) * pp(a.a2 - 2 * d.a2 + 1);
}

long long nd_signed(BiDegree d, BiDegree a) { return dom_d(d, a) - 3 * cod_d(d, a); }

long long nd(BiDegree d, BiDegree a) { return pp(nd_signed(d, a)); }

long long chi(BiDegree d, BiDegree a) {
  static constexpr long long binom[4] = {1, 3, 3, 1};
  long long total = 0;
  for (int k = 0; k <= 3; ++k) {
    const long long term = binom[k] * dim_strand(a.a1 - k * d.a1, a.a2 - k * d.a2);
    total += (k % 2 == 0) ? term : -term;
  }
  return total;
}

std::string to_string(RegionTag t) {
  switch (t) {
    case RegionTag::A1: return "A1";
    case RegionTag::A2: return "A2";
    case RegionTag::A3: return "A3";
    case RegionTag::A4: return "A4";
    case RegionTag::Gap: return "Gap";
  }
  return "?";
}

RegionValue chi_region(BiDegree d, BiDegree a) {
  const long long a1 = a.a1, a2 = a.a2, d1 = d.a1, d2 = d.a2;
  const long long full = (a1 + 1) * (a2 + 1);
  const long long once = 3 * (a1 - d1 + 1) * (a2 - d2 + 1);
  const long long twice = 3 * (a1 - 2 * d1 + 1) * (a2 - 2 * d2 + 1);
  if (a1 < d1 || a2 < d2) return {RegionTag::A1, full};
  if ((d1 <= a1 && a1 < 2 * d1 && d2 <= a2) || (d1 <= a1 && d2 <= a2 && a2 < 2 * d2))
    return {RegionTag::A2, full - once};
  if ((2 * d1 <= a1 && a1 < 3 * d1 && 2 * d2 <= a2) || (a1 < 3 * d1 && 2 * d2 <= a2 && a2 < 3 * d2))
    return {RegionTag::A3, full - once + twice};
  if (3 * d1 <= a1 && 3 * d2 <= a2) return {RegionTag::A4, 0};
  return {RegionTag::Gap, std::nullopt};
}

int chi_sign(BiDegree d, BiDegree a) {
  const long long c = chi(d, a);
  return (c > 0) - (c < 0);
}

SeriesGrids series_coeffs(BiDegree d, BiDegree box) {
  SeriesGrids g;
  if (!box.nonnegative()) return g;
  const auto rows = static_cast<std::size_t>(box.a1 + 1);
  const auto cols = static_cast<std::size_t>(box.a2 + 1);
  g.chi.assign(rows, std::vector<long long>(cols));
  g.plus = g.minus = g.chi;
  for (int i = 0; i <= box.a1; ++i)
    for (int j = 0; j <= box.a2; ++j) {
      const long long c = chi(d, {i, j});
      g.chi[i][j] = c;
      g.plus[i][j] = pos_part(c);
      g.minus[i][j] = neg_part(c);
    }
  return g;
}

std::vector<std::vector<long long>> nd_grid(BiDegree d, BiDegree box) {
  std::vector<std::vector<long long>> g;
  if (!box.nonnegative()) return g;
  g.assign(static_cast<std::size_t>(box.a1 + 1), std::vector<long long>(box.a2 + 1));
  for (int i = 0; i <= box.a1; ++i)
    for (int j = 0; j <= box.a2; ++j) g[i][j] = nd(d, {i, j});
  return g;
}

bool in_critical_range(BiDegree d, BiDegree a) {
  return (a.a1 >= 3 * d.a1 && d.a2 <= a.a2 && a.a2 <= 2 * d.a2 - 2) ||
         (a.a2 >= 3 * d.a2 && d.a1 <= a.a1 && a.a1 <= 2 * d.a1 - 2);
}

}  // namespace bigres
