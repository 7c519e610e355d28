#include <doctest.h>

#include "kap/minors.hpp"
#include "kap/curve.hpp"
#include "kap/io.hpp"
#include "support.hpp"

using namespace kap;
using namespace kap::testing;

TEST_CASE("generator enumeration counts") {
  CHECK(generators(1).empty());
  CHECK(generators(2).size() == 1);
  CHECK(generators(3).size() == 5);
  CHECK(generators(4).size() == 15);
  // closed form against direct enumeration
  for (int n = 1; n <= 8; ++n)
    CHECK(static_cast<long>(generators(n).size()) == generator_count(n));
  // brute-force column-pair enumeration
  for (int n = 1; n <= 8; ++n) {
    long count = 0;
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int m = 0; m < i + 1; ++m)
          for (int r = m + 1; r < i + 1; ++r) ++count;
    CHECK(count == generator_count(n));
  }
}

TEST_CASE("minor evaluation on hand points") {
  MultiPoint member = multipoint_from_json(Json::parse(R"json({"factors": [["1","4"],["1","2","3"]]})json"));
  MultiPoint off = multipoint_from_json(Json::parse(R"json({"factors": [["1","1"],["1","2","3"]]})json"));
  MinorIndex only = generators(2)[0];
  CHECK(evaluate_minor(only, member).is_zero());
  CHECK(evaluate_minor(only, off) == Rat(-3));
  CHECK(is_member(member).member());
  MembershipReport rep = is_member(off);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].index == only);
  CHECK(rep.violations[0].value == Rat(-3));
}

TEST_CASE("equal columns make the minor vanish") {
  MultiPoint p = multipoint_from_json(
      Json::parse(R"json({"factors": [["1","1"],["1","1","1"]]})json"));
  CHECK(evaluate_minor(generators(2)[0], p).is_zero());
}

TEST_CASE("the image satisfies every generator") {
  MarkedCurve fig = branches_figure_curve(Rat(1, 2), Rat(1, 3));
  CHECK(is_member(omega(fig)).member());
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + trial % 6;
    MarkedCurve c = random_curve(n, 3100 + static_cast<std::uint64_t>(trial), trial % (n + 1));
    CHECK(is_member(omega(c)).member());
  }
}

TEST_CASE("membership is invariant under factor rescaling") {
  Rng rng(5150);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + trial % 5;
    MarkedCurve c = random_curve(n, 4100 + static_cast<std::uint64_t>(trial), trial % (n + 1));
    MultiPoint p = omega(c);
    MultiPoint q = p;
    for (auto& f : q.factors) {
      Rat scale;
      do {
        scale = rng.small_rational(9, 5);
      } while (scale.is_zero());
      for (auto& x : f) x *= scale;
    }
    std::vector<MinorIndex> gens = generators(n);
    std::vector<Rat> vp = evaluate_all(gens, p);
    std::vector<Rat> vq = evaluate_all(gens, q);
    for (size_t k = 0; k < gens.size(); ++k) CHECK(vp[k].is_zero() == vq[k].is_zero());
  }
  // also on a non-member
  MultiPoint off = multipoint_from_json(Json::parse(R"json({"factors": [["1","1"],["1","2","3"]]})json"));
  MultiPoint off2 = off;
  for (auto& x : off2.factors[1]) x *= Rat(7, 3);
  CHECK(is_member(off).violations.size() == is_member(off2).violations.size());
}

TEST_CASE("parallel generator evaluation matches the serial reference") {
  MarkedCurve c = random_curve(7, 987, 4);
  MultiPoint p = omega(c);
  std::vector<MinorIndex> gens = generators(7);
  std::vector<Rat> serial = evaluate_all_serial(gens, p);
  std::vector<Rat> parallel = evaluate_all(gens, p);
  REQUIRE(serial.size() == parallel.size());
  for (size_t k = 0; k < serial.size(); ++k) CHECK(serial[k] == parallel[k]);
}

TEST_CASE("n=2 polynomial text is the reference cubic") {
  CHECK(minor_polynomial_text(generators(2)[0]) ==
        "x[1][b]*x[2][b]*x[2][c] - x[1][b]*x[2][c]*x[2][1] - x[1][c]*x[2][b]*x[2][c] + "
        "x[1][c]*x[2][b]*x[2][1] = 0");
}
