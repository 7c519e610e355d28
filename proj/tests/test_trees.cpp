#include <doctest.h>

#include <set>

#include "kap/tree.hpp"
#include "support.hpp"

using namespace kap;
using kap::testing::all_stable_trees;
using kap::testing::standard_labels;

namespace {

// Independent oracle for branch blocks: split the edge list at the pivot's
// neighbor and collect leaves per component with a union-find.
std::vector<std::vector<Label>> branch_blocks_oracle(const StableTree& t, Label i) {
  int leaf = t.leaf_vertex(i);
  int pivot = t.neighbors(leaf)[0];
  std::vector<int> parent(static_cast<size_t>(t.vertex_count()));
  for (int v = 0; v < t.vertex_count(); ++v) parent[static_cast<size_t>(v)] = v;
  auto find = [&](int v) {
    while (parent[static_cast<size_t>(v)] != v) v = parent[static_cast<size_t>(v)];
    return v;
  };
  for (const Edge& e : t.edges()) {
    if (e.u == pivot || e.v == pivot) continue;
    parent[static_cast<size_t>(find(e.u))] = find(e.v);
  }
  std::map<int, std::vector<Label>> comp;
  for (int v = 0; v < t.vertex_count(); ++v)
    if (t.is_leaf(v) && v != leaf && v != pivot) comp[find(v)].push_back(t.leaf_label(v));
  std::vector<std::vector<Label>> blocks;
  for (auto& [root, ls] : comp) {
    std::sort(ls.begin(), ls.end());
    blocks.push_back(ls);
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return blocks;
}

StableTree star(const std::vector<Label>& labels) {
  StableTree t;
  int v = t.add_internal();
  for (Label l : labels) t.add_edge(v, t.add_leaf(l));
  return t;
}

}  // namespace

TEST_CASE("validate accepts stable trees and rejects the rest") {
  CHECK_NOTHROW(validate(star(standard_labels(0))));
  CHECK_NOTHROW(validate(StableTree::parse("(((a,b),c),(1,3),2,4)")));

  SUBCASE("degree-2 internal vertex") {
    // path a-u-v-b with leaf c on u and nothing else on v
    StableTree t;
    int u = t.add_internal();
    int v = t.add_internal();
    t.add_edge(u, v);
    t.add_edge(u, t.add_leaf(Label::a()));
    t.add_edge(u, t.add_leaf(Label::c()));
    t.add_edge(v, t.add_leaf(Label::b()));
    CHECK_THROWS_WITH_AS(validate(t), doctest::Contains("UnstableVertex"), Error);
  }
  SUBCASE("missing labels") {
    StableTree t;
    int v = t.add_internal();
    for (Label l : {Label::a(), Label::b(), Label::integer(1)}) t.add_edge(v, t.add_leaf(l));
    CHECK_THROWS_WITH_AS(validate(t), doctest::Contains("MissingLabels"), Error);
  }
  SUBCASE("disconnected") {
    StableTree t = star({Label::a(), Label::b(), Label::c()});
    t.add_internal();
    CHECK_THROWS_WITH_AS(validate(t), doctest::Contains("NotATree"), Error);
  }
}

TEST_CASE("tree text form round-trips and is canonical") {
  StableTree t = StableTree::parse("(((a,b),c),(1,3),2,4)");
  StableTree u = StableTree::parse("((3,1),(c,(b,a)),4,2)");
  CHECK(t == u);
  CHECK(t.text() == u.text());
  CHECK(StableTree::parse(t.text()) == t);
  CHECK_THROWS_AS(StableTree::parse("((a,b)"), Error);
  CHECK_THROWS_AS(StableTree::parse("(a,b,q)"), Error);
  CHECK_THROWS_AS(StableTree::parse("(a,a,b,c)"), Error);
}

TEST_CASE("branches_at matches the figure and the oracle") {
  StableTree fig = StableTree::parse("(((a,b),c),(1,3),2,4)");
  BranchPartition p = branches_at(fig, Label::integer(4));
  REQUIRE(p.blocks.size() == 3);
  CHECK(p.blocks[0] == std::vector<Label>{Label::a(), Label::b(), Label::c()});
  CHECK(p.blocks[1] == std::vector<Label>{Label::integer(1), Label::integer(3)});
  CHECK(p.blocks[2] == std::vector<Label>{Label::integer(2)});

  BranchPartition q = branches_at(star(standard_labels(1)), Label::integer(1));
  CHECK(q.blocks.size() == 3);

  StableTree cat = StableTree::parse("((a,b),c,(1,2))");
  CHECK(branches_at(cat, Label::c()).blocks == branch_blocks_oracle(cat, Label::c()));

  CHECK_THROWS_WITH_AS(branches_at(cat, Label::integer(9)), doctest::Contains("UnknownLabel"),
                       Error);
}

TEST_CASE("separates on the figure tree") {
  StableTree fig = StableTree::parse("(((a,b),c),(1,3),2,4)");
  CHECK(separates(fig, Label::integer(4), Label::integer(1), Label::integer(2)));
  CHECK(!separates(fig, Label::integer(4), Label::integer(1), Label::integer(3)));
  CHECK(!separates(fig, Label::integer(4), Label::a(), Label::b()));
}

TEST_CASE("forget smooths and stabilizes") {
  SUBCASE("star needs no collapse") {
    StableTree s = star(standard_labels(2));
    CHECK(forget(s, Label::integer(2)) == star(standard_labels(1)));
  }
  SUBCASE("figure tree: forgetting 1 moves 3 onto the center") {
    StableTree fig = StableTree::parse("(((a,b),c),(1,3),2,4)");
    CHECK(forget(fig, Label::integer(1)) == StableTree::parse("(((a,b),c),3,2,4)"));
  }
  SUBCASE("too few leaves") {
    CHECK_THROWS_WITH_AS(forget(star(standard_labels(0)), Label::c()),
                         doctest::Contains("TooFewLeaves"), Error);
  }
}

TEST_CASE("restrict_to iterates forget") {
  StableTree fig = StableTree::parse("(((a,b),c),(1,3),2,4)");
  CHECK(restrict_to(fig, 4) == fig);
  CHECK(restrict_to(fig, 2) == StableTree::parse("(((a,b),c),1,2)"));
  CHECK(restrict_to(star(standard_labels(3)), 1) == star(standard_labels(1)));
  // composition property on the figure tree
  for (int i = 1; i <= 3; ++i)
    for (int j = i; j <= 4; ++j)
      CHECK(restrict_to(restrict_to(fig, j), i) == restrict_to(fig, i));
}

TEST_CASE("exhaustive oracle over small stable trees") {
  // counts for 3..7 leaves
  CHECK(all_stable_trees(standard_labels(0)).size() == 1);
  CHECK(all_stable_trees(standard_labels(1)).size() == 4);
  CHECK(all_stable_trees(standard_labels(2)).size() == 26);
  CHECK(all_stable_trees(standard_labels(3)).size() == 236);
  std::vector<StableTree> seven = all_stable_trees(standard_labels(4));
  CHECK(seven.size() == 2752);

  for (const StableTree& t : all_stable_trees(standard_labels(3))) {
    CHECK_NOTHROW(validate(t));
    std::vector<Label> leaves = t.leaves();
    for (Label i : leaves) {
      // blocks form a partition of the other leaves
      BranchPartition p = branches_at(t, i);
      CHECK(p.blocks == branch_blocks_oracle(t, i));
      std::set<Label> all;
      size_t total = 0;
      for (const auto& b : p.blocks) {
        total += b.size();
        all.insert(b.begin(), b.end());
      }
      CHECK(total == leaves.size() - 1);
      CHECK(all.size() == total);
      CHECK(!all.count(i));
    }
    // separates is symmetric in its last two arguments
    for (Label i : leaves)
      for (Label j : leaves)
        for (Label k : leaves) {
          if (i == j || i == k || j == k) continue;
          CHECK(separates(t, i, j, k) == separates(t, i, k, j));
        }
    // forget then validate always succeeds (stabilization is total); the
    // label set stays of the form {a,b,c,1..m}, so forget the top label
    if (leaves.size() >= 4 && t.top_label() >= 1)
      CHECK_NOTHROW(validate(forget(t, Label::integer(t.top_label()))));
  }
}
