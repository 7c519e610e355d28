#include <doctest.h>

#include "kap/smoothing.hpp"
#include "support.hpp"

using namespace kap;
using namespace kap::testing;

namespace {

MultiPoint mp(const std::string& json_text) {
  return multipoint_from_json(Json::parse(json_text));
}

}  // namespace

TEST_CASE("psi on the interior curve E1") {
  MarkedCurve e1 = e1_curve();
  CHECK(psi(e1, 2) == std::vector<Rat>{Rat(1), Rat(2), Rat(3)});
  MarkedCurve down = forget_point(e1, Label::integer(2));
  CHECK(psi(down, 1) == std::vector<Rat>{Rat(-2) / Rat(-2), Rat(-4) / Rat(-1)});  // [1, 4]
  CHECK(omega(e1) == mp(R"json({"factors": [["1","4"],["1","2","3"]]})json"));
}

TEST_CASE("embedding of the branches-figure curve") {
  MarkedCurve c = branches_figure_curve(Rat(1, 2), Rat(1, 3));
  MultiPoint p = omega(c);
  CHECK(p == mp(R"json({"factors": [
    ["0","1"], ["0","0","1"], ["0","0","1","0"], ["0","0","1/2","1/3","1/2"]
  ]})json"));
  // [0 : 0 : s : t : s] scaled leftmost-nonzero-to-1
  CHECK(psi(c, 4) == std::vector<Rat>{Rat(0), Rat(0), Rat(1), Rat(2, 3), Rat(1)});
}

TEST_CASE("forget_point contracts and matches the tree-level map") {
  MarkedCurve fig = branches_figure_curve(Rat(1, 2), Rat(1, 3));
  SUBCASE("no contraction") {
    MarkedCurve e1 = e1_curve();
    MarkedCurve down = forget_point(e1, Label::integer(2));
    CHECK(down.tree == forget(e1.tree, Label::integer(2)));
    CHECK(down.tree.leaves().size() == 4);
  }
  SUBCASE("contracting the {1,3} component moves 3 to the node coordinate") {
    MarkedCurve down = forget_point(fig, Label::integer(1));
    CHECK(down.tree == forget(fig.tree, Label::integer(1)));
    // 3 now sits where the node was: at coordinate s = 1/2 on the center.
    int leaf3 = down.tree.leaf_vertex(Label::integer(3));
    int center = down.tree.neighbors(leaf3)[0];
    CHECK(down.coord(center, leaf3) == Ext<Rat>(Rat(1, 2)));
  }
  SUBCASE("four-leaf star drops to the rigid three-leaf star") {
    MarkedCurve small = random_curve(1, 9, 0);
    CHECK(small.tree.leaves().size() == 4);
    MarkedCurve tiny = forget_point(small, Label::integer(1));
    CHECK(tiny.tree.leaves().size() == 3);
    CHECK_NOTHROW(validate_curve(tiny));
    CHECK_THROWS_WITH_AS(forget_point(tiny, Label::c()), doctest::Contains("TooFewLeaves"),
                         Error);
  }
  SUBCASE("tree-level agreement on random curves") {
    for (int trial = 0; trial < 30; ++trial) {
      MarkedCurve c = random_curve(5, 100 + static_cast<std::uint64_t>(trial), trial % 6);
      MarkedCurve down = forget_point(c, Label::integer(5));
      CHECK(down.tree == forget(c.tree, Label::integer(5)));
      CHECK_NOTHROW(validate_curve(down));
    }
  }
}

TEST_CASE("omega is compatible with the forgetting map") {
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + trial % 5;
    MarkedCurve c = random_curve(n, 500 + static_cast<std::uint64_t>(trial), trial % (n + 1));
    MultiPoint p = omega(c);
    MultiPoint q = omega(forget_point(c, Label::integer(n)));
    REQUIRE(q.n() == n - 1);
    for (int i = 1; i < n; ++i)
      CHECK(q.factors[static_cast<size_t>(i) - 1] == p.factors[static_cast<size_t>(i) - 1]);
  }
}

TEST_CASE("omega is invariant under per-component re-coordinatization") {
  Rng rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 5;
    MarkedCurve c = random_curve(n, 900 + static_cast<std::uint64_t>(trial), trial % (n + 1));
    MarkedCurve tw = retwist(c, rng);
    CHECK(omega(tw) == omega(c));
    CHECK(same_moduli_point(c, tw));
  }
}

TEST_CASE("psi coordinate characterization on boundary curves") {
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 5;
    MarkedCurve c = random_curve(n, 1300 + static_cast<std::uint64_t>(trial), 1 + trial % n);
    std::vector<Rat> top = psi(c, n);
    std::vector<Label> cols = factor_labels(n);
    BranchPartition bp = branches_at(c.tree, Label::integer(n));
    auto block_of = [&](Label l) {
      for (size_t b = 0; b < bp.blocks.size(); ++b)
        if (std::binary_search(bp.blocks[b].begin(), bp.blocks[b].end(), l))
          return static_cast<int>(b);
      return -1;
    };
    for (size_t x = 0; x < cols.size(); ++x) {
      // zero iff sharing a branch with a
      CHECK(top[x].is_zero() == (block_of(cols[x]) == block_of(Label::a())));
      for (size_t y = x + 1; y < cols.size(); ++y)
        CHECK((top[x] == top[y]) == (block_of(cols[x]) == block_of(cols[y])));
    }
  }
}

TEST_CASE("canonical form of E1 pins a, b, c to 0, 1, infinity") {
  MarkedCurve canon = canonical_form(e1_curve());
  int v = canon.tree.neighbors(canon.tree.leaf_vertex(Label::a()))[0];
  auto at = [&](Label l) { return canon.coord(v, canon.tree.leaf_vertex(l)); };
  CHECK(at(Label::a()) == Ext<Rat>(Rat(0)));
  CHECK(at(Label::b()) == Ext<Rat>(Rat(1)));
  CHECK(at(Label::c()) == Ext<Rat>::infinity());
  // z -> -z/(z-2) sends (0,1,2) to (0,1,inf), so 3 -> -3 and inf -> -1
  CHECK(at(Label::integer(1)) == Ext<Rat>(Rat(-3)));
  CHECK(at(Label::integer(2)) == Ext<Rat>(Rat(-1)));
}

TEST_CASE("canonical form is idempotent and identifies twisted copies") {
  Rng rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + trial % 6;
    MarkedCurve c = random_curve(n, 7000 + static_cast<std::uint64_t>(trial), trial % (n + 1));
    MarkedCurve canon = canonical_form(c);
    CHECK(canonical_form(canon).tree == canon.tree);
    CHECK(canonical_form(canon).charts == canon.charts);
    MarkedCurve tw = retwist(c, rng);
    MarkedCurve tw_canon = canonical_form(tw);
    CHECK(tw_canon.tree == canon.tree);
    CHECK(tw_canon.charts == canon.charts);
  }
}

TEST_CASE("omega is unchanged by canonicalization, including infinity pins") {
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + trial % 6;
    MarkedCurve c = random_curve(n, 15200 + static_cast<std::uint64_t>(trial), trial % (n + 1));
    CHECK(omega(canonical_form(c)) == omega(c));
  }
}

TEST_CASE("random_curve is deterministic and respects the node count") {
  CHECK_THROWS_WITH_AS(random_curve(3, 1, 4), doctest::Contains("InfeasibleShape"), Error);
  for (int n = 1; n <= 6; ++n)
    for (int d = 0; d <= n; ++d) {
      MarkedCurve c = random_curve(n, 42, d);
      MarkedCurve again = random_curve(n, 42, d);
      CHECK(c.tree == again.tree);
      CHECK(c.charts == again.charts);
      CHECK(static_cast<int>(c.tree.internal_edges().size()) == d);
      CHECK_NOTHROW(validate_curve(c));
    }
}

TEST_CASE("smoothing jets have the right primal part") {
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3 + trial % 4;
    MarkedCurve c = random_curve(n, 2100 + static_cast<std::uint64_t>(trial), 1 + trial % n);
    auto edges = c.tree.internal_edges();
    REQUIRE(!edges.empty());
    const Edge& e = edges[static_cast<size_t>(trial) % edges.size()];
    JetMultiPoint jet = smooth_node(c, e.u, e.v);
    CHECK(jet.primal() == omega(c));
    CHECK_THROWS_WITH_AS(smooth_node(c, c.tree.leaf_vertex(Label::a()), e.v),
                         doctest::Contains("NotAnInternalEdge"), Error);
  }
}

TEST_CASE("perturbation jets have the right primal part") {
  MarkedCurve e1 = e1_curve();
  int v = e1.tree.neighbors(e1.tree.leaf_vertex(Label::a()))[0];
  int slot_b = e1.tree.leaf_vertex(Label::b());
  JetMultiPoint jet = perturb_point(e1, v, slot_b);
  CHECK(jet.primal() == omega(e1));
  // moving b changes the embedding to first order
  bool moved = false;
  for (int i = 1; i <= 2; ++i)
    for (Label l : factor_labels(i)) moved |= !jet.tangent(i, l).is_zero();
  CHECK(moved);
}
