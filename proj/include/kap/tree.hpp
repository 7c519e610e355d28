#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kap/label.hpp"

namespace kap {

/** Unordered edge between two vertex ids, stored as (min, max). */
struct Edge {
  int u, v;
  Edge(int x, int y) : u(std::min(x, y)), v(std::max(x, y)) {}
  auto operator<=>(const Edge&) const = default;
};

/**
 * Leaf-labeled tree over a subset of {a,b,c,1,...,n}. Leaves are vertices
 * carrying a label; internal vertices carry none. Stability (every internal
 * vertex at least trivalent) is checked by validate(), not enforced during
 * construction, so intermediate states may be unstable.
 */
class StableTree {
 public:
  StableTree() = default;

  int add_internal();
  int add_leaf(Label l);
  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  int vertex_count() const { return static_cast<int>(verts_.size()); }
  bool is_leaf(int v) const { return verts_[v].label_code >= 0; }
  bool is_internal(int v) const { return verts_[v].label_code < 0; }
  Label leaf_label(int v) const {
    KAP_CHECK(is_leaf(v), "leaf_label on internal vertex");
    return Label::from_code(verts_[v].label_code);
  }
  const std::vector<int>& neighbors(int v) const { return verts_[v].nbrs; }
  int degree(int v) const { return static_cast<int>(verts_[v].nbrs.size()); }

  bool has_label(Label l) const;
  int leaf_vertex(Label l) const;  // throws UnknownLabel
  std::vector<Label> leaves() const;  // sorted in S-order
  std::vector<Edge> edges() const;
  std::vector<Edge> internal_edges() const;
  /// Largest integer label present, or 0 when only a,b,c are present.
  int top_label() const;

  /// Leaf labels of the component of `start` in the tree with `removed` deleted.
  std::vector<Label> component_leaves(int start, int removed) const;
  /// All vertices of that component.
  std::vector<int> component_vertices(int start, int removed) const;

  /// Vertices on the path from u to v, inclusive.
  std::vector<int> path(int u, int v) const;

  /// Canonical text form: nested parenthesized label lists, rooted at the
  /// internal vertex adjacent to leaf a, children sorted by minimal leaf.
  std::string text() const;
  static StableTree parse(const std::string& text);

  /// Canonically renumbered copy (internal vertices in canonical discovery
  /// order, then leaves in label order) plus the old->new vertex map.
  StableTree canonicalized(std::vector<int>* old_to_new = nullptr) const;

  bool operator==(const StableTree& o) const { return text() == o.text(); }

 private:
  struct V {
    int label_code = -1;  // -1 for internal vertices
    std::vector<int> nbrs;
  };
  std::vector<V> verts_;

  friend struct TreeBuilderAccess;
};

struct BranchPartition {
  Label pivot;
  std::vector<std::vector<Label>> blocks;  // each sorted; blocks sorted by min label
};

void validate(const StableTree& t);
BranchPartition branches_at(const StableTree& t, Label i);
bool separates(const StableTree& t, Label i, Label j, Label k);
StableTree forget(const StableTree& t, Label m);
/// forget all integer labels > i, in decreasing order
StableTree restrict_to(const StableTree& t, int i);

}  // namespace kap
