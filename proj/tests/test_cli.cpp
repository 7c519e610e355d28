#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "kap/cli.hpp"
#include "kap/io.hpp"
#include "support.hpp"

using namespace kap;
using namespace kap::testing;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const Json& content)
      : path("/tmp/kap_test_" + name + ".json") {
    save_json_file(path, content);
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("equations command") {
  RunResult r = run_cli({"equations", "--n", "2", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "x[1][b]*x[2][b]*x[2][c] - x[1][b]*x[2][c]*x[2][1] - x[1][c]*x[2][b]*x[2][c] + "
        "x[1][c]*x[2][b]*x[2][1] = 0\n");

  RunResult j = run_cli({"equations", "--n", "3", "--format", "json"});
  CHECK(j.code == 0);
  Json doc = Json::parse(j.out);
  CHECK(doc["count"] == 5);
  CHECK(doc["generators"].size() == 5);
}

TEST_CASE("embed, check and reconstruct round trip through files") {
  TempFile curve("curve", curve_to_json(branches_figure_curve(Rat(1, 2), Rat(1, 3))));
  RunResult em = run_cli({"embed", "--curve", curve.path});
  REQUIRE(em.code == 0);
  Json point = Json::parse(em.out);
  CHECK(point["factors"][3] == Json::array({"0", "0", "1", "2/3", "1"}));

  TempFile point_file("point", point);
  RunResult ck = run_cli({"check", "--point", point_file.path, "--json"});
  CHECK(ck.code == 0);
  CHECK(Json::parse(ck.out)["member"] == true);

  RunResult rc = run_cli({"reconstruct", "--point", point_file.path});
  REQUIRE(rc.code == 0);

  // embed(reconstruct(p)) is a fixed point on the multipoint file
  TempFile curve2("curve2", Json::parse(rc.out));
  RunResult em2 = run_cli({"embed", "--curve", curve2.path});
  CHECK(em2.code == 0);
  CHECK(em2.out == em.out);
}

TEST_CASE("check and reconstruct reject non-members with exit code 2") {
  Json bad = Json::parse(R"json({"n": 2, "factors": [["1","1"],["1","2","3"]]})json");
  TempFile point("bad_point", bad);
  RunResult ck = run_cli({"check", "--point", point.path});
  CHECK(ck.code == 2);
  CHECK(ck.err.find("minor(i=1, j=2") != std::string::npos);
  RunResult rc = run_cli({"reconstruct", "--point", point.path});
  CHECK(rc.code == 2);
}

TEST_CASE("tangent command reports nullity and subspace agreement") {
  TempFile curve("tcurve", curve_to_json(e1_curve()));
  RunResult r = run_cli({"tangent", "--curve", curve.path, "--method", "both"});
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["nullity"] == 2);
  CHECK(doc["subspace_equal"] == true);
  CHECK(doc["constructive_count"] == 1);

  RunResult jac = run_cli({"tangent", "--curve", curve.path, "--method", "jacobian"});
  REQUIRE(jac.code == 0);
  Json jdoc = Json::parse(jac.out);
  CHECK(jdoc["nullity"] == 2);
  CHECK(jdoc["jacobian_equations"].size() == 1);
  CHECK(!jdoc.contains("subspace_equal"));

  RunResult con = run_cli({"tangent", "--curve", curve.path, "--method", "constructive"});
  REQUIRE(con.code == 0);
  Json cdoc = Json::parse(con.out);
  CHECK(cdoc["constructive_equations"].size() == 1);
  CHECK(cdoc["constructive_equations"][0]["rule"] == "t-vs-t");
}

TEST_CASE("random-curve is reproducible") {
  RunResult a = run_cli({"random-curve", "--n", "5", "--seed", "7", "--nodes", "3"});
  RunResult b = run_cli({"random-curve", "--n", "5", "--seed", "7", "--nodes", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  Json doc = Json::parse(a.out);
  CHECK(doc["n"] == 5);
}

TEST_CASE("verify runs all checks and is byte-deterministic") {
  RunResult a = run_cli({"verify", "--n", "3", "--trials", "6", "--seed", "11"});
  RunResult b = run_cli({"verify", "--n", "3", "--trials", "6", "--seed", "11"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("membership: 6/6") != std::string::npos);
  CHECK(a.out.find("round-trip: 6/6") != std::string::npos);
  CHECK(a.out.find("nullity: 6/6") != std::string::npos);

  RunResult j = run_cli({"verify", "--n", "2", "--trials", "4", "--seed", "3", "--json",
                         "--checks", "membership,round-trip"});
  CHECK(j.code == 0);
  Json doc = Json::parse(j.out);
  CHECK(doc["passes"]["membership"] == 4);
  CHECK(doc["failures"].empty());
  CHECK(!doc["passes"].contains("nullity"));
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run_cli({"equations"}).code == 1);
  CHECK(run_cli({"nonsense"}).code == 1);
  CHECK(run_cli({"embed", "--curve", "/nonexistent/file.json"}).code == 1);
}

TEST_CASE("jets serialize with primal and tangent strings") {
  Json j = jet_to_json(Jet(Rat(1, 2), Rat(-1, 4)));
  CHECK(j["primal"] == "1/2");
  CHECK(j["tangent"] == "-1/4");
}

TEST_CASE("curve files survive a round trip") {
  MarkedCurve c = ten_equations_curve();
  Json j = curve_to_json(c);
  MarkedCurve back = curve_from_json(j);
  CHECK(same_moduli_point(back, c));
  CHECK(curve_to_json(back) == j);
  // multipoint file round trip, including infinity-free rationals
  MultiPoint p = omega(c);
  CHECK(multipoint_from_json(multipoint_to_json(p)) == p);
}
