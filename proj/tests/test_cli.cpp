#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "support.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = bigres::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(BIGRES_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("bigres_cli_" + name);
  std::ofstream(path, std::ios::binary) << contents;
  return path.string();
}

std::multiset<std::pair<int, std::pair<int, int>>> shift_multiset(const nlohmann::json& entries) {
  std::multiset<std::pair<int, std::pair<int, int>>> out;
  for (const auto& e : entries)
    for (int k = 0; k < e[3].get<int>(); ++k) out.insert({e[0].get<int>(), {e[1].get<int>(), e[2].get<int>()}});
  return out;
}

}  // namespace

TEST_CASE("nd grid is byte-identical to the golden file") {
  const auto r = run({"nd", "--d", "1,6", "--box", "10,20"});
  CHECK(r.code == 0);
  CHECK(r.out == testing_support::read_file(std::string(BIGRES_GOLDEN_DIR) + "/nd_grid_1_6.txt"));
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 21);
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("chi grids") {
  const auto r = run({"chi", "--d", "1,1", "--box", "3,3"});
  CHECK(r.code == 0);
  // First row of the chi grid is a2 = 3; its last cell is (3,3).
  const auto chi_block = r.out.substr(0, r.out.find("chi_plus:"));
  CHECK(chi_block == "chi:\n      | 4 -1 0 0  |\n      | 3 0  0 0  |\n      | 2 1  0 -1 |\n      | 1 2  3 4  |\n");
  const auto j = nlohmann::json::parse(run({"chi", "--d", "1,1", "--box", "3,3", "--json"}).out);
  CHECK(j["chi"][3][3] == 0);
  CHECK(j["nd"][1][3] == 1);
}

TEST_CASE("betti on the sample files") {
  const auto r = run({"betti", data("case11.json"), "--box", "5,5"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "convention: ideal\n"
        "beta_0: (1,1)^3\n"
        "beta_1: (1,3) (2,2)^3 (3,1)\n"
        "beta_2: (2,3)^2 (3,2)^2\n"
        "beta_3: (3,3)\n");
  const auto q = run({"betti", data("case11.json"), "--box", "5,5", "--convention", "quotient"});
  CHECK(q.out.rfind("convention: quotient\nbeta_0: (0,0)\nbeta_1: (1,1)^3\n", 0) == 0);
  CHECK(run({"betti", data("case11.json"), "--box", "5,5", "--convention", "other"}).code == 2);
  CHECK(run({"betti", data("case11.json")}).code == 2);
}

TEST_CASE("betti and resolve agree on the conic input") {
  const auto b = nlohmann::json::parse(run({"betti", data("conic12.json"), "--box", "4,7", "--json"}).out);
  const auto r = run({"resolve", data("conic12.json"), "--case", "conic", "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verification"]["ok"] == true);
  CHECK(shift_multiset(b["entries"]) == shift_multiset(j["betti"]["entries"]));
  CHECK(j["differentials"].size() == 3);
}

TEST_CASE("resolve errors") {
  const auto bp = run({"resolve", data("basepoint11.json"), "--case", "conic"});
  CHECK(bp.code == 1);
  CHECK(bp.err.find("((0:1),(0:1))") != std::string::npos);
  CHECK(run({"resolve", data("conic12.json"), "--case", "threepoint"}).code == 1);
  CHECK(run({"resolve", data("conic12.json"), "--case", "other"}).code == 2);
  const auto tp = run({"resolve", data("threepoint3.json"), "--case", "threepoint"});
  CHECK(tp.code == 0);
  CHECK(tp.out.rfind("mu = 1\n", 0) == 0);
}

TEST_CASE("malformed files exit with 2 and a position") {
  const auto path = temp_file("bad.json", "{\"field\": \"Q\",\n \"d\": [1, 1],\n \"polys\": [[[\"1\", 2, 0, 1, 0]], [], []]}");
  const auto r = run({"classify", path});
  CHECK(r.code == 2);
  CHECK(r.err.find("3:13: term of degree (2,1)") != std::string::npos);
  const auto syntax = temp_file("syntax.json", "{\"field\": \"Q\"\n");
  CHECK(run({"betti", syntax, "--box", "3,3"}).code == 2);
  CHECK(run({"classify", "/nonexistent/file.json"}).code == 2);
  CHECK(run({"nd", "--d", "1", "--box", "3,3"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("classify, generic and plot") {
  const auto c = nlohmann::json::parse(run({"classify", data("threepoint3.json")}).out);
  CHECK(c["verdict"] == "three-noncollinear-points");
  CHECK(c["mu"] == 1);

  const auto g = run({"generic", data("maps6.json"), "--box", "10,24", "--json"});
  CHECK(g.code == 0);
  const auto gj = nlohmann::json::parse(g.out);
  CHECK(gj["generic"] == false);
  CHECK(gj["witness"] == nlohmann::json::array({3, 6}));
  CHECK(run({"generic", data("maps6.json"), "--box", "3,3"}).code == 2);

  const auto svg = (std::filesystem::temp_directory_path() / "bigres_cli_plot.svg").string();
  const auto p = run({"plot", data("maps6.json"), "--box", "7,20", "-o", svg, "--json"});
  CHECK(p.code == 0);
  CHECK(testing_support::read_file(svg).rfind("<?xml", 0) == 0);
  CHECK(run({"plot", data("maps6.json"), "--box", "7,20", "-o", "/nonexistent/dir/x.svg"}).code == 1);
}

TEST_CASE("lab runs are reproducible") {
  const std::vector<std::string> args{"lab", "--d", "1,2", "--trials", "4", "--seed", "9", "--json"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["trials"] == 4);
  CHECK(j["box"] == nlohmann::json::array({6, 9}));
  const auto csv = (std::filesystem::temp_directory_path() / "bigres_cli_lab.csv").string();
  CHECK(run({"lab", "--d", "1,1", "--trials", "1", "--csv", csv}).code == 0);
  CHECK(testing_support::read_file(csv).rfind("trial,a1,a2,dimH1,nd,hf,chi\n", 0) == 0);
  CHECK(run({"lab", "--d", "1,1", "--field", "GF(8)"}).code == 2);
  CHECK(run({"lab", "--d", "1,1", "--box", "2,2"}).code == 2);
}
