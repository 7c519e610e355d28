#include "kap/tree.hpp"

#include <algorithm>
#include <map>

namespace kap {

int StableTree::add_internal() {
  verts_.push_back(V{});
  return vertex_count() - 1;
}

int StableTree::add_leaf(Label l) {
  verts_.push_back(V{l.code(), {}});
  return vertex_count() - 1;
}

void StableTree::add_edge(int u, int v) {
  KAP_CHECK(u != v && u >= 0 && v >= 0 && u < vertex_count() && v < vertex_count(), "bad edge");
  verts_[u].nbrs.push_back(v);
  verts_[v].nbrs.push_back(u);
}

void StableTree::remove_edge(int u, int v) {
  auto drop = [&](int x, int y) {
    auto& ns = verts_[x].nbrs;
    auto it = std::find(ns.begin(), ns.end(), y);
    KAP_CHECK(it != ns.end(), "removing absent edge");
    ns.erase(it);
  };
  drop(u, v);
  drop(v, u);
}

bool StableTree::has_label(Label l) const {
  for (const auto& v : verts_)
    if (v.label_code == l.code()) return true;
  return false;
}

int StableTree::leaf_vertex(Label l) const {
  for (int i = 0; i < vertex_count(); ++i)
    if (verts_[i].label_code == l.code()) return i;
  fail(Errc::unknown_label, "no leaf labeled " + l.str());
}

std::vector<Label> StableTree::leaves() const {
  std::vector<Label> out;
  for (const auto& v : verts_)
    if (v.label_code >= 0) out.push_back(Label::from_code(v.label_code));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> StableTree::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < vertex_count(); ++u)
    for (int v : verts_[u].nbrs)
      if (u < v) out.emplace_back(u, v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> StableTree::internal_edges() const {
  std::vector<Edge> out;
  for (const Edge& e : edges())
    if (is_internal(e.u) && is_internal(e.v)) out.push_back(e);
  return out;
}

int StableTree::top_label() const {
  int top = 0;
  for (const auto& v : verts_)
    if (v.label_code >= 3) top = std::max(top, v.label_code - 2);
  return top;
}

std::vector<int> StableTree::component_vertices(int start, int removed) const {
  std::vector<int> stack{start}, seen;
  std::vector<char> vis(verts_.size(), 0);
  vis[start] = 1;
  if (removed >= 0) vis[removed] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    seen.push_back(v);
    for (int w : verts_[v].nbrs)
      if (!vis[w]) {
        vis[w] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

std::vector<Label> StableTree::component_leaves(int start, int removed) const {
  std::vector<Label> out;
  for (int v : component_vertices(start, removed))
    if (is_leaf(v)) out.push_back(leaf_label(v));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> StableTree::path(int u, int v) const {
  std::vector<int> parent(verts_.size(), -2);
  std::vector<int> stack{u};
  parent[u] = -1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (x == v) break;
    for (int w : verts_[x].nbrs)
      if (parent[w] == -2) {
        parent[w] = x;
        stack.push_back(w);
      }
  }
  KAP_CHECK(parent[v] != -2, "path endpoints not connected");
  std::vector<int> out;
  for (int x = v; x != -1; x = parent[x]) out.push_back(x);
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

// Minimal leaf label in the subtree rooted at v when entered from `from`.
Label subtree_min(const StableTree& t, int v, int from) {
  if (t.is_leaf(v)) return t.leaf_label(v);
  std::optional<Label> best;
  for (int w : t.neighbors(v)) {
    if (w == from) continue;
    Label m = subtree_min(t, w, v);
    if (!best || m < *best) best = m;
  }
  KAP_CHECK(best.has_value(), "internal vertex with no descendant leaves");
  return *best;
}

void serialize(const StableTree& t, int v, int from, std::string& out,
               std::vector<int>* internal_order) {
  if (t.is_leaf(v)) {
    out += t.leaf_label(v).str();
    return;
  }
  if (internal_order) internal_order->push_back(v);
  std::vector<std::pair<Label, int>> kids;
  for (int w : t.neighbors(v))
    if (w != from) kids.emplace_back(subtree_min(t, w, v), w);
  std::sort(kids.begin(), kids.end());
  out += '(';
  for (size_t i = 0; i < kids.size(); ++i) {
    if (i) out += ',';
    serialize(t, kids[i].second, v, out, internal_order);
  }
  out += ')';
}

}  // namespace

std::string StableTree::text() const {
  int va = neighbors(leaf_vertex(Label::a()))[0];
  std::string out;
  serialize(*this, va, -1, out, nullptr);
  return out;
}

StableTree StableTree::parse(const std::string& text) {
  StableTree t;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  // Recursive descent over "(" item ("," item)* ")" where item is a label or
  // a nested list. Returns the vertex id of the parsed node.
  auto parse_node = [&](auto&& self) -> int {
    skip_ws();
    if (i >= text.size()) fail(Errc::parse_error, "unexpected end of tree text");
    if (text[i] == '(') {
      ++i;
      int v = t.add_internal();
      while (true) {
        int child = self(self);
        t.add_edge(v, child);
        skip_ws();
        if (i >= text.size()) fail(Errc::parse_error, "unterminated list in tree text");
        if (text[i] == ',') {
          ++i;
          continue;
        }
        if (text[i] == ')') {
          ++i;
          break;
        }
        fail(Errc::parse_error, "expected ',' or ')' in tree text");
      }
      return v;
    }
    size_t start = i;
    while (i < text.size() && text[i] != ',' && text[i] != ')' && text[i] != '(' &&
           text[i] != ' ')
      ++i;
    auto l = Label::parse(text.substr(start, i - start));
    if (!l) fail(Errc::parse_error, "bad label token in tree text");
    if (t.has_label(*l)) fail(Errc::parse_error, "duplicate label " + l->str());
    return t.add_leaf(*l);
  };
  int root = parse_node(parse_node);
  skip_ws();
  if (i != text.size()) fail(Errc::parse_error, "trailing characters after tree text");
  if (t.is_leaf(root)) fail(Errc::parse_error, "tree text must be a parenthesized list");
  return t;
}

StableTree StableTree::canonicalized(std::vector<int>* old_to_new) const {
  int va = neighbors(leaf_vertex(Label::a()))[0];
  std::string dummy;
  std::vector<int> internal_order;
  serialize(*this, va, -1, dummy, &internal_order);

  std::vector<char> reach(vertex_count(), 0);
  for (int v : component_vertices(va, -1)) reach[v] = 1;

  std::vector<int> map(vertex_count(), -1);
  int next = 0;
  for (int v : internal_order) map[v] = next++;
  std::vector<std::pair<Label, int>> leaf_list;
  for (int v = 0; v < vertex_count(); ++v)
    if (is_leaf(v) && reach[v]) leaf_list.emplace_back(leaf_label(v), v);
  std::sort(leaf_list.begin(), leaf_list.end());
  for (auto& [l, v] : leaf_list) map[v] = next++;

  StableTree out;
  out.verts_.resize(static_cast<size_t>(next));
  for (int v = 0; v < vertex_count(); ++v) {
    if (map[v] < 0) continue;  // disconnected leftovers are dropped
    out.verts_[map[v]].label_code = verts_[v].label_code;
    for (int w : verts_[v].nbrs) out.verts_[map[v]].nbrs.push_back(map[w]);
  }
  for (auto& v : out.verts_) std::sort(v.nbrs.begin(), v.nbrs.end());
  if (old_to_new) *old_to_new = std::move(map);
  return out;
}

void validate(const StableTree& t) {
  int n_vert = t.vertex_count();
  if (n_vert == 0) fail(Errc::not_a_tree, "empty tree");
  // Connected and acyclic: edge count and reachability.
  int n_edges = static_cast<int>(t.edges().size());
  if (n_edges != n_vert - 1) fail(Errc::not_a_tree, "edge count does not match a tree");
  if (static_cast<int>(t.component_vertices(0, -1).size()) != n_vert)
    fail(Errc::not_a_tree, "tree is not connected");
  std::set<int> codes;
  for (int v = 0; v < n_vert; ++v) {
    if (t.is_leaf(v)) {
      if (t.degree(v) != 1) fail(Errc::not_a_tree, "leaf with degree != 1");
      if (!codes.insert(t.leaf_label(v).code()).second)
        fail(Errc::not_a_tree, "duplicate leaf label");
    } else if (t.degree(v) < 3) {
      fail(Errc::unstable_vertex, "internal vertex of degree " + std::to_string(t.degree(v)));
    }
  }
  for (Label l : {Label::a(), Label::b(), Label::c()})
    if (!codes.count(l.code())) fail(Errc::missing_labels, "label " + l.str() + " absent");
  // Integer labels must be exactly 1..top with no gaps.
  int top = t.top_label();
  for (int k = 1; k <= top; ++k)
    if (!codes.count(Label::integer(k).code()))
      fail(Errc::missing_labels, "integer label " + std::to_string(k) + " absent");
}

BranchPartition branches_at(const StableTree& t, Label i) {
  int leaf = t.leaf_vertex(i);
  int pivot = t.neighbors(leaf)[0];
  BranchPartition out;
  out.pivot = i;
  for (int w : t.neighbors(pivot)) {
    if (w == leaf) continue;
    out.blocks.push_back(t.component_leaves(w, pivot));
  }
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return out;
}

bool separates(const StableTree& t, Label i, Label j, Label k) {
  KAP_CHECK(i != j && i != k && j != k, "separates needs distinct labels");
  BranchPartition p = branches_at(t, i);
  auto block_of = [&](Label l) -> int {
    for (size_t b = 0; b < p.blocks.size(); ++b)
      if (std::binary_search(p.blocks[b].begin(), p.blocks[b].end(), l))
        return static_cast<int>(b);
    fail(Errc::unknown_label, "label " + l.str() + " not in tree");
  };
  return block_of(j) != block_of(k);
}

StableTree forget(const StableTree& t, Label m) {
  if (t.leaves().size() < 4) fail(Errc::too_few_leaves, "forget needs at least 4 leaves");
  StableTree s = t;
  int leaf = s.leaf_vertex(m);
  int v = s.neighbors(leaf)[0];
  s.remove_edge(leaf, v);
  if (s.degree(v) == 2) {
    int x = s.neighbors(v)[0], y = s.neighbors(v)[1];
    s.remove_edge(v, x);
    s.remove_edge(v, y);
    s.add_edge(x, y);
  }
  // Renumber compactly, dropping the detached leaf (and smoothed vertex).
  return s.canonicalized();
}

StableTree restrict_to(const StableTree& t, int i) {
  KAP_CHECK(i >= 1, "restrict_to needs i >= 1");
  StableTree out = t;
  for (int k = t.top_label(); k > i; --k) out = forget(out, Label::integer(k));
  return out;
}

}  // namespace kap
