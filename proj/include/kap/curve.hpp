#pragma once

#include <map>

#include "kap/mobius.hpp"
#include "kap/multipoint.hpp"
#include "kap/rng.hpp"
#include "kap/tree.hpp"

namespace kap {

/**
 * Stable marked curve: a stable tree plus, per internal vertex, an injective
 * assignment of P^1 coordinates to its incident edges and leaves. Chart maps
 * are keyed by the adjacent vertex id (leaf vertices included).
 */
template <class F>
struct MarkedCurveT {
  StableTree tree;
  std::vector<std::map<int, Ext<F>>> charts;

  const Ext<F>& coord(int vertex, int slot) const {
    auto it = charts[vertex].find(slot);
    KAP_CHECK(it != charts[vertex].end(), "missing chart entry");
    return it->second;
  }
  int n() const { return tree.top_label(); }
};

using MarkedCurve = MarkedCurveT<Rat>;

template <class F>
void validate_curve(const MarkedCurveT<F>& c) {
  validate(c.tree);
  KAP_CHECK(static_cast<int>(c.charts.size()) == c.tree.vertex_count(), "chart table size");
  for (int v = 0; v < c.tree.vertex_count(); ++v) {
    if (c.tree.is_leaf(v)) {
      KAP_CHECK(c.charts[v].empty(), "leaf vertex carries a chart");
      continue;
    }
    const auto& chart = c.charts[v];
    KAP_CHECK(static_cast<int>(chart.size()) == c.tree.degree(v), "chart size != degree");
    int infs = 0;
    for (auto it = chart.begin(); it != chart.end(); ++it) {
      bool adjacent = false;
      for (int w : c.tree.neighbors(v)) adjacent |= (w == it->first);
      KAP_CHECK(adjacent, "chart entry for a non-incident slot");
      if (it->second.is_inf()) ++infs;
      for (auto jt = std::next(it); jt != chart.end(); ++jt)
        KAP_CHECK(!(it->second == jt->second), "coincident special points on a component");
    }
    KAP_CHECK(infs <= 1, "more than one point at infinity on a component");
  }
}

/// Minimal leaf label reachable through slot w from vertex v.
inline Label branch_min(const StableTree& t, int v, int w) {
  return t.component_leaves(w, v).front();
}

/**
 * Kapranov morphism psi_i. The curve must carry exactly the marked points
 * a,...,i (restrict first if needed). Locates the component containing leaf
 * i, normalizes it so the a-side special point goes to 0 and i to infinity,
 * and reads off one coordinate per branch.
 */
template <class F>
std::vector<F> psi(const MarkedCurveT<F>& c, int i) {
  KAP_CHECK(c.tree.top_label() == i && i >= 1, "psi needs marked points a..i exactly");
  int leaf = c.tree.leaf_vertex(Label::integer(i));
  int vi = c.tree.neighbors(leaf)[0];

  // One slot per branch at vi; sort the non-i slots by branch-minimal label.
  std::vector<std::pair<Label, int>> slots;
  for (int w : c.tree.neighbors(vi))
    if (w != leaf) slots.emplace_back(branch_min(c.tree, vi, w), w);
  std::sort(slots.begin(), slots.end());
  KAP_CHECK(slots.size() >= 2 && slots[0].first == Label::a(), "bad branch structure at v_i");

  const Ext<F>& z0 = c.coord(vi, slots[0].second);
  const Ext<F>& z1 = c.coord(vi, slots[1].second);
  const Ext<F>& zi = c.coord(vi, leaf);
  MobiusT<F> g = mobius_through(z0, z1, zi);

  // Value per branch, then propagated to every label on that branch.
  std::map<int, F> label_value;  // label code -> value
  for (const auto& [mn, w] : slots) {
    Ext<F> img = g(c.coord(vi, w));
    KAP_CHECK(!img.is_inf(), "branch value at infinity");
    for (Label l : c.tree.component_leaves(w, vi)) label_value[l.code()] = img.finite();
  }

  std::vector<F> out;
  out.reserve(static_cast<size_t>(i) + 1);
  for (Label l : factor_labels(i)) {
    auto it = label_value.find(l.code());
    KAP_CHECK(it != label_value.end(), "factor label missing from curve");
    out.push_back(it->second);
  }
  normalize_factor(out);
  return out;
}

/**
 * Forgetting map with coordinates: removes marked point m; a component left
 * with two special points is contracted, its neighbors glued at the
 * coordinates each already held for the node.
 */
template <class F>
MarkedCurveT<F> forget_point(const MarkedCurveT<F>& c, Label m) {
  if (c.tree.leaves().size() < 4) fail(Errc::too_few_leaves, "forget_point needs >= 4 leaves");
  StableTree t = c.tree;
  auto charts = c.charts;
  int leaf = t.leaf_vertex(m);
  int v = t.neighbors(leaf)[0];
  t.remove_edge(leaf, v);
  charts[v].erase(leaf);
  if (t.degree(v) == 2) {
    int x = t.neighbors(v)[0], y = t.neighbors(v)[1];
    if (t.is_leaf(x)) std::swap(x, y);
    KAP_CHECK(t.is_internal(x), "contraction with two leaf neighbors");
    t.remove_edge(v, x);
    t.remove_edge(v, y);
    t.add_edge(x, y);
    charts[x][y] = charts[x][v];
    charts[x].erase(v);
    if (t.is_internal(y)) {
      charts[y][x] = charts[y][v];
      charts[y].erase(v);
    }
    charts[v].clear();
  }
  std::vector<int> map;
  StableTree compact = t.canonicalized(&map);
  MarkedCurveT<F> out;
  out.tree = std::move(compact);
  out.charts.resize(out.tree.vertex_count());
  for (int w = 0; w < static_cast<int>(charts.size()); ++w) {
    if (map[w] < 0) continue;
    for (auto& [slot, val] : charts[w]) {
      KAP_CHECK(map[slot] >= 0, "chart slot maps to dropped vertex");
      out.charts[map[w]][map[slot]] = val;
    }
  }
  return out;
}

template <class F>
MarkedCurveT<F> restrict_curve(const MarkedCurveT<F>& c, int i) {
  KAP_CHECK(i >= 1, "restrict_curve needs i >= 1");
  MarkedCurveT<F> out = c;
  for (int k = c.tree.top_label(); k > i; --k) out = forget_point(out, Label::integer(k));
  return out;
}

/**
 * Iterated Kapranov embedding: factor i is psi_i of the curve restricted to
 * the marked points a,...,i, each factor scaled leftmost-nonzero-to-1.
 */
template <class F>
MultiPointT<F> omega(const MarkedCurveT<F>& c) {
  int n = c.tree.top_label();
  KAP_CHECK(n >= 1, "omega needs a marked point 1");
  MultiPointT<F> out;
  out.factors.resize(static_cast<size_t>(n));
  MarkedCurveT<F> cur = c;
  for (int i = n; i >= 1; --i) {
    out.factors[static_cast<size_t>(i) - 1] = psi(cur, i);
    if (i > 1) cur = forget_point(cur, Label::integer(i));
  }
  out.normalize();
  return out;
}

/**
 * Canonical form of the moduli point: per component, the unique Mobius
 * taking the three special points with smallest branch-minimal labels to
 * 0, 1, infinity; vertices renumbered canonically. Two curves are equal as
 * moduli points iff their canonical forms are identical.
 */
template <class F>
MarkedCurveT<F> canonical_form(const MarkedCurveT<F>& c) {
  MarkedCurveT<F> work = c;
  for (int v = 0; v < work.tree.vertex_count(); ++v) {
    if (!work.tree.is_internal(v)) continue;
    std::vector<std::pair<Label, int>> slots;
    for (int w : work.tree.neighbors(v)) slots.emplace_back(branch_min(work.tree, v, w), w);
    std::sort(slots.begin(), slots.end());
    MobiusT<F> g = mobius_through(work.coord(v, slots[0].second), work.coord(v, slots[1].second),
                                  work.coord(v, slots[2].second));
    for (auto& [slot, val] : work.charts[v]) val = g(val);
  }
  std::vector<int> map;
  StableTree compact = work.tree.canonicalized(&map);
  MarkedCurveT<F> out;
  out.tree = std::move(compact);
  out.charts.resize(out.tree.vertex_count());
  for (int w = 0; w < static_cast<int>(work.charts.size()); ++w)
    for (auto& [slot, val] : work.charts[w]) out.charts[map[w]][map[slot]] = val;
  return out;
}

template <class F>
bool same_moduli_point(const MarkedCurveT<F>& x, const MarkedCurveT<F>& y) {
  MarkedCurveT<F> cx = canonical_form(x), cy = canonical_form(y);
  return cx.tree == cy.tree && cx.charts == cy.charts;
}

template <class G>
MarkedCurveT<G> lift_curve(const MarkedCurve& c) {
  MarkedCurveT<G> out;
  out.tree = c.tree;
  out.charts.resize(c.charts.size());
  for (size_t v = 0; v < c.charts.size(); ++v)
    for (const auto& [slot, val] : c.charts[v]) out.charts[v][slot] = ext_from_rat<G>(val);
  return out;
}

/**
 * Deterministic random stable curve with marked points a,b,c,1..n and
 * exactly `boundary_nodes` internal edges. The tree grows by sequential
 * leaf insertion; coordinates are distinct small rationals per component.
 */
MarkedCurve random_curve(int n, std::uint64_t seed, int boundary_nodes);

/// Applies an independent random Mobius re-coordinatization to every
/// component; the moduli point is unchanged.
MarkedCurve retwist(const MarkedCurve& c, Rng& rng);

}  // namespace kap
