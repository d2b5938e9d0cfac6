#include <catch_amalgamated.hpp>

#include <map>

#include "bigres/betti.hpp"
#include "bigres/combinat.hpp"
#include "bigres/strands.hpp"
#include "support.hpp"

using namespace bigres;
using testing_support::poly;

namespace {

using Table = std::map<std::pair<int, BiDegree>, std::size_t>;

Table table_11() {
  return {{{0, {1, 1}}, 3}, {{1, {1, 3}}, 1}, {{1, {2, 2}}, 3}, {{1, {3, 1}}, 1},
          {{2, {2, 3}}, 2}, {{2, {3, 2}}, 2}, {{3, {3, 3}}, 1}};
}

const std::map<BiDegree, std::size_t> kBeta16 = {
    {{3, 10}, 1}, {{3, 11}, 4}, {{4, 10}, 3}, {{6, 9}, 2}, {{1, 18}, 1}};

template <class F>
SystemF<F> generic_system(const F& f, BiDegree d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (;;) {
    auto sys = testing_support::random_system(f, d, rng);
    if (is_generic(sys, default_generic_box(d)).generic) return sys;
  }
}

// Coefficient vector of a syzygy in R^3_{total - d}.
template <class F>
Vec<F> flatten(const std::array<BiPoly<F>, 3>& s, BiDegree deg) {
  Vec<F> v;
  for (const auto& p : s) {
    if (p.is_zero()) {
      v.resize(v.size() + dimR(deg), p.field().zero());
    } else {
      v.insert(v.end(), p.coeffs().begin(), p.coeffs().end());
    }
  }
  return v;
}

// True when no generator lies in the submodule generated by the others, which
// is checked strand by strand in its own degree.
template <class F>
bool minimal_generators(const F& f, const std::vector<SyzygyVector<F>>& gens, BiDegree d) {
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const BiDegree T = gens[k].total;
    const BiDegree deg = T - d;
    std::vector<Vec<F>> span;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j == k || !gens[j].total.leq(T)) continue;
      if (gens[j].total == T && j > k) continue;
      for (const auto& m : strand_basis(T - gens[j].total)) {
        const auto mono = BiPoly<F>::monomial(f, m, f.one());
        std::array<BiPoly<F>, 3> s;
        for (std::size_t i = 0; i < 3; ++i)
          s[i] = gens[j].sigma[i].is_zero() ? BiPoly<F>(f, deg) : gens[j].sigma[i] * mono;
        span.push_back(flatten(s, deg));
      }
    }
    const std::size_t rows = 3 * dimR(deg);
    const std::size_t before = span.empty() ? 0 : mat_rank(Matrix<F>::from_columns(f, rows, span));
    span.push_back(flatten(gens[k].sigma, deg));
    if (mat_rank(Matrix<F>::from_columns(f, rows, span)) == before) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("convention conversion and rendering") {
  BettiTable t;
  t.convention = Convention::Ideal;
  t.entries = table_11();
  auto q = t.converted(Convention::Quotient);
  CHECK(q.at(0, {0, 0}) == 1);
  CHECK(q.at(1, {1, 1}) == 3);
  CHECK(q.at(4, {3, 3}) == 1);
  CHECK(q.converted(Convention::Ideal) == t);
  CHECK(t.to_text() ==
        "convention: ideal\n"
        "beta_0: (1,1)^3\n"
        "beta_1: (1,3) (2,2)^3 (3,1)\n"
        "beta_2: (2,3)^2 (3,2)^2\n"
        "beta_3: (3,3)\n");
  CHECK(t.to_json().find("\"entries\":[[0,1,1,3],[1,1,3,1],[1,2,2,3],[1,3,1,1]") != std::string::npos);
  CHECK(parse_convention("quotient") == Convention::Quotient);
  CHECK_THROWS_AS(parse_convention("other"), std::invalid_argument);
}

TEST_CASE("d=(1,1) tables are always the same") {
  PrimeField f(32003);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    auto sys = testing_support::random_system(f, {1, 1}, rng);
    auto t = betti_table(sys, {5, 5});
    CHECK(t.entries == table_11());
    CHECK_FALSE(t.warning);
  }
  RationalField q;
  auto sys = SystemF<RationalField>(q, {1, 1},
                                    {poly(q, {1, 1}, {{1, 1, 0, 1, 0}}), poly(q, {1, 1}, {{1, 1, 0, 0, 1}, {1, 0, 1, 1, 0}}),
                                     poly(q, {1, 1}, {{1, 0, 1, 0, 1}})});
  CHECK(betti_table(sys, {5, 5}).entries == table_11());
}

TEST_CASE("basepoint input gets a warning") {
  RationalField q;
  auto sys = SystemF<RationalField>(q, {1, 1},
                                    {poly(q, {1, 1}, {{1, 1, 0, 1, 0}}), poly(q, {1, 1}, {{1, 1, 0, 0, 1}}),
                                     poly(q, {1, 1}, {{1, 0, 1, 1, 0}})});
  auto t = betti_table(sys, {3, 3});
  REQUIRE(t.warning);
  CHECK(t.to_json().find("warning") != std::string::npos);
}

TEST_CASE("Tor strands reproduce the Hilbert function") {
  PrimeField f(32003);
  std::mt19937_64 rng(5);
  for (BiDegree d : {BiDegree{1, 2}, BiDegree{2, 2}, BiDegree{2, 1}}) {
    auto sys = testing_support::random_system(f, d, rng);
    const BiDegree box = 3 * d + BiDegree{2, 2};
    auto t = betti_table(sys, box, Convention::Quotient);
    CHECK(t.at(0, {0, 0}) == 1);
    for (int a1 = 0; a1 <= box.a1; ++a1)
      for (int a2 = 0; a2 <= box.a2; ++a2) {
        long long s = 0;
        for (const auto& [key, m] : t.entries)
          s += (key.first % 2 ? -1 : 1) * static_cast<long long>(m * dimR(BiDegree{a1, a2} - key.second));
        CHECK(s == static_cast<long long>(hf_quotient(sys, {a1, a2})));
      }
    // Three generators at d, nothing else in degree 0.
    auto ideal = t.converted(Convention::Ideal);
    CHECK(ideal.total(0) == 3);
    CHECK(ideal.at(0, d) == 3);
  }
}

TEST_CASE("Koszul-only first syzygies in bidegree (2,m)") {
  PrimeField f(32003);
  std::mt19937_64 rng(6);
  for (int n : {2, 3}) {
    auto sys = testing_support::random_system(f, {1, n}, rng);
    auto t = betti_table(sys, {2, 3 * n + 1});
    for (int m = 0; m <= 3 * n + 1; ++m) CHECK(t.at(1, {2, m}) == (m == 2 * n ? 3u : 0u));
  }
}

TEST_CASE("d=(1,6) first Betti numbers by both routes") {
  PrimeField f(32003);
  auto sys = generic_system(f, {1, 6}, 61);
  auto t = betti_table(sys, {7, 19});
  CHECK(nonkoszul_beta1(t, {1, 6}) == kBeta16);

  StrandCache<PrimeField> cache(sys);
  auto fast = nonkoszul_beta1_fast(cache, {7, 19});
  CHECK(fast.beta == kBeta16);
  FastBeta1Options exhaustive;
  exhaustive.full_rank_outside_critical = false;
  auto slow = nonkoszul_beta1_fast(cache, {7, 19}, exhaustive);
  CHECK(slow.beta == kBeta16);
  CHECK(slow.ranked_strands > fast.ranked_strands);

  // Pointwise: non-Koszul beta_1 is the homology at the end of the complex.
  for (int a1 = 0; a1 <= 7; ++a1)
    for (int a2 = 0; a2 <= 19; ++a2) {
      const BiDegree a{a1, a2};
      auto it = kBeta16.find(a);
      CHECK(mcomplex_dims(cache, a).h[0] == (it == kBeta16.end() ? 0u : it->second));
    }
}

TEST_CASE("complex of H1 for d=(1,6) sums to 18 and 7") {
  PrimeField f(32003);
  auto sys = generic_system(f, {1, 6}, 62);
  StrandCache<PrimeField> cache(sys);
  auto tot = mcomplex_totals(cache, {10, 24});
  CHECK(tot[0] == 11);
  CHECK(tot[1] == 18);
  CHECK(tot[2] == 7);
  CHECK(tot[3] == 0);
  CHECK(tot[4] == 0);
  CHECK(tot[1] - tot[2] == 11);
  // Stable under enlarging the box.
  CHECK(mcomplex_totals(cache, {12, 28}) == tot);
  auto zero = mcomplex_dims(cache, {0, 0});
  for (int j = 0; j <= 4; ++j) {
    CHECK(zero.c[j] == 0);
    CHECK(zero.h[j] == 0);
  }
}

TEST_CASE("summed route identity on structured input") {
  PrimeField f(32003);
  auto sys = testing_support::maps6_system(f);
  StrandCache<PrimeField> cache(sys);
  const BiDegree box{10, 26};
  auto tot = mcomplex_totals(cache, box);
  auto t = betti_table(sys, box);
  std::size_t beta = 0;
  for (const auto& [a, m] : nonkoszul_beta1(t, sys.d())) beta += m;
  CHECK(tot[3] == 0);
  CHECK(tot[4] == 0);
  CHECK(tot[0] == beta);
  CHECK(tot[1] - tot[2] == beta);
}

TEST_CASE("minor syzygy") {
  RationalField q;
  auto sys = SystemF<RationalField>(q, {1, 1},
                                    {poly(q, {1, 1}, {{1, 1, 0, 1, 0}}), poly(q, {1, 1}, {{1, 1, 0, 0, 1}, {1, 0, 1, 1, 0}}),
                                     poly(q, {1, 1}, {{1, 0, 1, 0, 1}})});
  auto s = alicia_syzygy(sys);
  CHECK(s.annihilates(sys.f()));
  CHECK(s.total == BiDegree{1, 3});
  // p = (u, v, 0), q = (0, u, v): minors (-v^2, uv, -u^2).
  CHECK(s.sigma[0] == poly(q, {0, 2}, {{-1, 0, 0, 0, 2}}));
  CHECK(s.sigma[1] == poly(q, {0, 2}, {{1, 0, 0, 1, 1}}));
  CHECK(s.sigma[2] == poly(q, {0, 2}, {{-1, 0, 0, 2, 0}}));

  PrimeField f(32003);
  std::mt19937_64 rng(3);
  auto a0 = testing_support::random_form(f, 4, rng), a1 = testing_support::random_form(f, 4, rng);
  auto conic = testing_support::conic_system(a0, a1);
  auto c = alicia_syzygy(conic);
  CHECK(BinaryForm<PrimeField>::from_bipoly(c.sigma[0]) == a1 * a1);
  CHECK(BinaryForm<PrimeField>::from_bipoly(c.sigma[1]) == -(a0 * a1));
  CHECK(BinaryForm<PrimeField>::from_bipoly(c.sigma[2]) == a0 * a0);

  auto bp = SystemF<RationalField>(q, {1, 2},
                                   {poly(q, {1, 2}, {{1, 1, 0, 2, 0}}), poly(q, {1, 2}, {{1, 1, 0, 1, 1}}),
                                    poly(q, {1, 2}, {{1, 1, 0, 0, 2}})});
  CHECK_THROWS_AS(alicia_syzygy(bp), ComputationError);
}

TEST_CASE("Koszul syzygies and the second syzygy matrices") {
  PrimeField f(7);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    auto sys = testing_support::random_system(f, {1, 1 + trial % 3}, rng);
    for (const auto& k : koszul_syzygies(sys)) {
      CHECK(k.annihilates(sys.f()));
      CHECK(k.total == 2 * sys.d());
    }
  }
  PrimeField g(32003);
  for (int n = 1; n <= 4; ++n) {
    auto sys = testing_support::random_system(g, {1, n}, rng);
    auto pm = prop32_matrices(sys);
    CHECK((pm.A * pm.Aprime).is_zero());
    CHECK(pm.A.rows() == 3);
    CHECK(pm.A.cols() == 4);
    CHECK(pm.Aprime.rows() == 4);
    CHECK(pm.third[2] == BiPoly<PrimeField>::monomial(g, {0, 0, 0, 0}, g.neg(g.one())));
  }
}

TEST_CASE("graded kernels of binary forms") {
  RationalField q;
  auto u = BinaryForm<RationalField>::monomial(q, 1, 0, 1), v = BinaryForm<RationalField>::monomial(q, 0, 1, 1);
  auto hb = hb_kernel<RationalField>({u, v});
  REQUIRE(hb.kernel.size() == 1);
  CHECK(hb.column_degrees == std::vector<int>{1});
  CHECK((u * hb.kernel[0][0] + v * hb.kernel[0][1]).is_zero());

  auto hb2 = hb_kernel<RationalField>({u * u, u * v, v * v});
  CHECK(hb2.column_degrees == std::vector<int>{1, 1});
  for (const auto& col : hb2.kernel) CHECK((u * u * col[0] + u * v * col[1] + v * v * col[2]).is_zero());

  CHECK_THROWS_AS(hb_kernel<RationalField>({u * u, u * v}), ComputationError);

  PrimeField f(32003);
  std::mt19937_64 rng(21);
  std::vector<BinaryForm<PrimeField>> six;
  for (int i = 0; i < 6; ++i) six.push_back(testing_support::random_form(f, 6, rng));
  auto hb6 = hb_kernel(six);
  CHECK(hb6.column_degrees == std::vector<int>{1, 1, 1, 1, 2});
  for (const auto& col : hb6.kernel) {
    auto acc = six[0] * col[0];
    for (int i = 1; i < 6; ++i) acc = acc + six[static_cast<std::size_t>(i)] * col[static_cast<std::size_t>(i)];
    CHECK(acc.is_zero());
  }
  // Strand oracle: the kernel in degree e has dimension sum_k (e - b_k + 1)_+.
  for (int e = 0; e <= 4; ++e) {
    Matrix<PrimeField> m(f, static_cast<std::size_t>(e + 7), static_cast<std::size_t>(6 * (e + 1)));
    for (std::size_t j = 0; j < 6; ++j)
      for (int l = 0; l <= e; ++l)
        for (int c = 0; c <= 6; ++c) m(static_cast<std::size_t>(l + c), j * static_cast<std::size_t>(e + 1) + static_cast<std::size_t>(l)) = six[j].coeff(c);
    std::size_t expected = 0;
    for (int b : hb6.column_degrees) expected += static_cast<std::size_t>(std::max(0, e - b + 1));
    CHECK(kernel_dim(m) == expected);
  }
}

TEST_CASE("five quadratic syzygies") {
  PrimeField f(32003);
  std::mt19937_64 rng(8);
  for (int n : {5, 6, 7}) {
    auto sys = testing_support::random_system(f, {1, n}, rng);
    REQUIRE(q_span_dim(sys) == 6);
    auto r = syz3star(sys);
    REQUIRE(r.syzygies.size() == 5);
    int sum = 0;
    for (std::size_t k = 0; k < 5; ++k) {
      sum += r.b[k];
      CHECK(r.syzygies[k].annihilates(sys.f()));
      CHECK(r.syzygies[k].total == BiDegree{3, 2 * n - r.b[k]});
    }
    CHECK(sum == n);
    // M K^t == 0, recomputed here.
    for (const auto& row : r.M)
      for (const auto& k : r.K) {
        BinaryForm<PrimeField> acc(f, 0);
        bool any = false;
        for (std::size_t j = 0; j < 9; ++j) {
          if (row[j].is_zero() || k[j].is_zero()) continue;
          acc = any ? acc + row[j] * k[j] : row[j] * k[j];
          any = true;
        }
        CHECK((!any || acc.is_zero()));
      }
    auto red = syz3star_reduced(sys);
    std::vector<BiDegree> a, b;
    for (const auto& s : r.syzygies) a.push_back(s.total);
    for (const auto& s : red.syzygies) b.push_back(s.total);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    if (n == 6) {
      CHECK(a == std::vector<BiDegree>{{3, 10}, {3, 11}, {3, 11}, {3, 11}, {3, 11}});
    }
    // Together with the minor syzygy and the Koszul syzygies these are minimal
    // generators.
    std::vector<SyzygyVector<PrimeField>> all = r.syzygies;
    all.push_back(alicia_syzygy(sys));
    for (const auto& k : koszul_syzygies(sys)) all.push_back(k);
    CHECK(all.size() == 9);
    CHECK(minimal_generators(f, all, sys.d()));
  }
}

TEST_CASE("dependent coefficient forms need the reduced construction") {
  PrimeField f(32003);
  auto sys = testing_support::maps6_system(f);
  CHECK(q_span_dim(sys) == 2);
  CHECK_THROWS_AS(syz3star(sys), ComputationError);
}

TEST_CASE("graded kernel rank bookkeeping") {
  PrimeField f(32003);
  std::mt19937_64 rng(4);
  FormMatrix<PrimeField> m = {{testing_support::random_form(f, 2, rng), testing_support::random_form(f, 2, rng),
                               testing_support::random_form(f, 2, rng)}};
  CHECK(generic_rank(f, m, 2) == 1);
  auto gk = graded_kernel(f, m, 2);
  CHECK(gk.degrees == std::vector<int>{1, 1});
}
