#include <catch_amalgamated.hpp>

#include "bigres/combinat.hpp"
#include "bigres/render.hpp"
#include "support.hpp"

using namespace bigres;

namespace {

const std::vector<BiDegree> kDegrees = {{1, 1}, {1, 3}, {1, 6}, {2, 2}, {2, 5}, {3, 4}};

// Independent oracle: coefficient of x^a1 y^a2 in (1-x^d1 y^d2)^3 / ((1-x)^2 (1-y)^2)
// by explicit power-series multiplication.
long long series_coefficient(BiDegree d, BiDegree a) {
  std::vector<std::vector<long long>> num(a.a1 + 1, std::vector<long long>(a.a2 + 1, 0));
  const long long c[4] = {1, -3, 3, -1};
  for (int k = 0; k <= 3; ++k)
    if (k * d.a1 <= a.a1 && k * d.a2 <= a.a2) num[k * d.a1][k * d.a2] += c[k];
  long long total = 0;
  for (int i = 0; i <= a.a1; ++i)
    for (int j = 0; j <= a.a2; ++j)
      if (num[i][j] != 0) total += num[i][j] * (a.a1 - i + 1) * (a.a2 - j + 1);
  return total;
}

}  // namespace

TEST_CASE("positive and negative parts") {
  CHECK(pos_part(5) == 5);
  CHECK(neg_part(5) == 0);
  CHECK(pos_part(-3) == 0);
  CHECK(neg_part(-3) == 3);
  CHECK(pos_part(0) == 0);
  CHECK(neg_part(0) == 0);
}

TEST_CASE("nd values for d=(1,6)") {
  const BiDegree d{1, 6};
  CHECK(nd(d, {3, 10}) == 1);
  CHECK(nd(d, {3, 11}) == 6);
  CHECK(nd(d, {4, 10}) == 5);
  CHECK(nd(d, {1, 18}) == 1);
  CHECK(nd(d, {1, 19}) == 2);
  CHECK(nd(d, {1, 20}) == 3);
  for (const auto& dd : kDegrees) CHECK(nd(dd, {0, 0}) == 0);
  CHECK(nd_signed(d, {0, 0}) == 0);
  CHECK(nd_signed(d, {3, 2}) < 0);
}

TEST_CASE("chi examples") {
  for (const auto& d : kDegrees) CHECK(chi(d, {0, 0}) == 1);
  CHECK(chi({1, 1}, {3, 3}) == 0);
  CHECK(chi({1, 6}, {1, 4}) == 10);
}

TEST_CASE("chi matches the rational series expansion") {
  for (const auto& d : kDegrees)
    for (int a1 = 0; a1 < 25; ++a1)
      for (int a2 = 0; a2 < 25; ++a2) REQUIRE(chi(d, {a1, a2}) == series_coefficient(d, {a1, a2}));
}

TEST_CASE("chi_sign examples") {
  CHECK(chi_sign({2, 2}, {1, 1}) == 1);
  CHECK(chi_sign({2, 2}, {5, 7}) == 0);
  CHECK(chi_sign({1, 6}, {3, 18}) == 0);
  CHECK(chi_sign({1, 6}, {3, 11}) == -1);
}

TEST_CASE("sign table cells with a definite sign") {
  // Columns and rows of the sign table, as closed integer ranges. The
  // bottom-left cells start at 0 since chi(d,0)=1 > 0.
  for (const auto& d : {BiDegree{2, 2}, BiDegree{2, 3}, BiDegree{3, 4}, BiDegree{4, 3}, BiDegree{3, 3}}) {
    const int d1 = d.a1, d2 = d.a2, far1 = 3 * d1 + 6, far2 = 3 * d2 + 6;
    const std::pair<int, int> cols[5] = {{0, d1 - 1}, {d1, 2 * d1 - 2}, {2 * d1 - 1, 3 * d1 - 2},
                                         {3 * d1 - 1, 3 * d1 - 1}, {3 * d1, far1}};
    const std::pair<int, int> rows[5] = {{0, d2 - 1}, {d2, 2 * d2 - 2}, {2 * d2 - 1, 3 * d2 - 2},
                                         {3 * d2 - 1, 3 * d2 - 1}, {3 * d2, far2}};
    // sign[row][col]; 2 marks an indefinite cell.
    const int sign[5][5] = {{1, 1, 1, 1, 1},
                            {1, 1, 1, 1, 2},
                            {1, 1, 1, 0, -1},
                            {1, 1, 0, 0, 0},
                            {1, 2, -1, 0, 0}};
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) {
        if (sign[r][c] == 2) continue;
        for (int a1 = cols[c].first; a1 <= cols[c].second; ++a1)
          for (int a2 = rows[r].first; a2 <= rows[r].second; ++a2) {
            INFO("d=" << d.to_string() << " a=(" << a1 << "," << a2 << ")");
            CHECK(chi_sign(d, {a1, a2}) == sign[r][c]);
          }
      }
  }
}

TEST_CASE("chi_region agrees with chi where defined") {
  for (const auto& d : kDegrees)
    for (int a1 = 0; a1 < 30; ++a1)
      for (int a2 = 0; a2 < 30; ++a2) {
        auto rv = chi_region(d, {a1, a2});
        if (rv.tag == RegionTag::Gap) {
          CHECK_FALSE(rv.value.has_value());
          continue;
        }
        INFO("d=" << d.to_string() << " a=(" << a1 << "," << a2 << ") tag " << to_string(rv.tag));
        CHECK(*rv.value == chi(d, {a1, a2}));
      }
}

TEST_CASE("the unmatched region is tagged Gap") {
  const BiDegree d{1, 6};
  CHECK(chi_region(d, {3, 12}).tag == RegionTag::Gap);
  CHECK(chi_region(d, {5, 17}).tag == RegionTag::Gap);
  CHECK(chi_region(d, {3, 18}).tag == RegionTag::A4);
  CHECK(chi_region(d, {0, 0}).tag == RegionTag::A1);
}

TEST_CASE("nd equals the negative part of chi") {
  for (const auto& d : kDegrees)
    for (int a1 = 0; a1 < 60; ++a1)
      for (int a2 = 0; a2 < 60; ++a2) {
        INFO("d=" << d.to_string() << " a=(" << a1 << "," << a2 << ")");
        REQUIRE(nd(d, {a1, a2}) == neg_part(chi(d, {a1, a2})));
      }
}

TEST_CASE("series grids") {
  const BiDegree d{1, 6};
  auto g = series_coeffs(d, {10, 20});
  CHECK(g.minus == nd_grid(d, {10, 20}));
  for (int a1 = 0; a1 <= 10; ++a1)
    for (int a2 = 0; a2 <= 20; ++a2) {
      CHECK(g.chi[a1][a2] == g.plus[a1][a2] - g.minus[a1][a2]);
      if (chi_region(d, {a1, a2}).tag == RegionTag::A1) CHECK(g.plus[a1][a2] == g.chi[a1][a2]);
    }
}

TEST_CASE("dimension identities force h0 to the positive part") {
  for (const auto& d : kDegrees)
    for (int a1 = 0; a1 < 30; ++a1)
      for (int a2 = 0; a2 < 30; ++a2) {
        const long long c = chi(d, {a1, a2});
        const long long h1 = neg_part(c);
        const long long h0 = c + h1;
        CHECK(h0 == pos_part(c));
      }
}

TEST_CASE("nd grid for d=(1,6) renders as printed") {
  const std::string expected = testing_support::read_file(std::string(BIGRES_GOLDEN_DIR) + "/nd_grid_1_6.txt");
  REQUIRE_FALSE(expected.empty());
  CHECK(render_grid(nd_grid({1, 6}, {10, 20})) == expected);
}

TEST_CASE("grid layout") {
  CHECK(render_grid({{1, 2}, {30, 4}}) == "      | 2 4  |\n      | 1 30 |\n");
}

TEST_CASE("critical ranges") {
  const BiDegree d{1, 6};
  CHECK(in_critical_range(d, {3, 6}));
  CHECK(in_critical_range(d, {7, 10}));
  CHECK_FALSE(in_critical_range(d, {3, 11}));
  CHECK_FALSE(in_critical_range(d, {2, 8}));
  // d1 = 1: the second range d1 <= a1 <= 2d1-2 is empty.
  CHECK_FALSE(in_critical_range(d, {1, 20}));
  CHECK_FALSE(in_critical_range({1, 1}, {5, 1}));
}

TEST_CASE("nd boundary is traced on cell-edge midpoints") {
  auto lines = nd_boundary({1, 6}, {10, 20});
  REQUIRE_FALSE(lines.empty());
  for (const auto& l : lines)
    for (const auto& [x, y] : l) {
      const bool half_x = x != static_cast<int>(x), half_y = y != static_cast<int>(y);
      CHECK(half_x != half_y);
    }
}
