#include <catch_amalgamated.hpp>

#include "bigres/sysio.hpp"
#include "support.hpp"

using namespace bigres;

namespace {

std::pair<std::size_t, std::size_t> error_position(const std::string& text) {
  try {
    parse_system(text);
  } catch (const SystemFileError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

}  // namespace

TEST_CASE("system files round trip") {
  RationalField q;
  const std::string text = R"j({
  "field": "Q",
  "d": [1, 1],
  "polys": [
    [["1", 1, 0, 1, 0]],
    [["1/2", 1, 0, 0, 1], [3, 0, 1, 0, 1]],
    [["-7", 0, 1, 1, 0], ["1", 0, 1, 1, 0]]
  ]
})j";
  auto sys = std::get<SystemF<RationalField>>(parse_system(text));
  CHECK(sys.d() == BiDegree{1, 1});
  CHECK(sys[0] == testing_support::poly(q, {1, 1}, {{1, 1, 0, 1, 0}}));
  CHECK(sys[1].coeff(1, 0) == mpq_class(1, 2));
  CHECK(sys[1].coeff(0, 0) == 3);
  CHECK(sys[2].coeff(0, 1) == -6);
  const std::string dumped = system_to_json(sys);
  CHECK(dumped ==
        "{\"field\":\"Q\",\"d\":[1,1],\"polys\":[[[\"1\",1,0,1,0]],[[\"1/2\",1,0,0,1],[\"3\",0,1,0,1]],"
        "[[\"-6\",0,1,1,0]]]}\n");
  CHECK(system_to_json(parse_system(dumped)) == dumped);

  PrimeField f(32003);
  std::mt19937_64 rng(1);
  const AnySystem r = testing_support::random_system(f, {2, 3}, rng);
  const auto back = std::get<SystemF<PrimeField>>(parse_system(system_to_json(r)));
  for (std::size_t i = 0; i < 3; ++i) CHECK(back[i] == std::get<SystemF<PrimeField>>(r)[i]);
}

TEST_CASE("prime field coefficients") {
  auto sys = std::get<SystemF<PrimeField>>(parse_system(
      R"j({"field": "GF(7)", "d": [1, 1], "polys": [[["1/2", 1, 0, 1, 0]], [["9", 1, 0, 0, 1]], [[-1, 0, 1, 1, 0]]]})j"));
  CHECK(sys.field().modulus() == 7);
  CHECK(sys[0].coeff(1, 1) == 4);
  CHECK(sys[1].coeff(1, 0) == 2);
  CHECK(sys[2].coeff(0, 1) == 6);
}

TEST_CASE("errors carry line and column") {
  // Syntax error: the missing comma before "d", reported at the end of the token.
  CHECK(error_position("{\n  \"field\": \"Q\"\n  \"d\": [1, 1]\n}") == std::pair<std::size_t, std::size_t>{3, 5});

  const std::string bad_degree = R"j({
  "field": "Q",
  "d": [1, 1],
  "polys": [
    [["1", 1, 0, 1, 0]],
    [["1", 1, 0, 0, 1]],
    [["1", 0, 1, 1, 0], ["1", 1, 1, 1, 0]]
  ]
})j";
  CHECK(error_position(bad_degree) == std::pair<std::size_t, std::size_t>{7, 25});

  const std::string bad_coef = R"j({"field": "Q", "d": [1, 1],
 "polys": [[["x", 1, 0, 1, 0]], [["1", 1, 0, 0, 1]], [["1", 0, 1, 1, 0]]]})j";
  CHECK(error_position(bad_coef) == std::pair<std::size_t, std::size_t>{2, 14});

  const std::string dependent = R"j({"field": "Q", "d": [1, 1],
 "polys": [[["1", 1, 0, 1, 0]], [["2", 1, 0, 1, 0]], [["1", 0, 1, 1, 0]]]})j";
  CHECK(error_position(dependent) == std::pair<std::size_t, std::size_t>{2, 11});

  CHECK(error_position(R"j({"field": "GF(8)", "d": [1, 1], "polys": []})j") ==
        std::pair<std::size_t, std::size_t>{1, 11});
  CHECK(error_position(R"j({"field": "Q", "polys": []})j") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(error_position(R"j({"field": "Q", "d": [1, -1], "polys": []})j") ==
        std::pair<std::size_t, std::size_t>{1, 25});
  CHECK(error_position(R"j({"field": "Q", "d": [1, 1], "polys": [[], []]})j") ==
        std::pair<std::size_t, std::size_t>{1, 38});

  try {
    parse_system(bad_coef);
    FAIL("no error");
  } catch (const SystemFileError& e) {
    CHECK(std::string(e.what()).rfind("2:14: bad coefficient", 0) == 0);
  }
  CHECK_THROWS_AS(read_system_file("/nonexistent/system.json"), SystemFileError);
}
