#include "kap/smoothing.hpp"

#include <algorithm>

namespace kap {

namespace {

// Two smallest-branch-min slots of `v` other than `excluded`.
std::pair<int, int> anchor_slots(const StableTree& t, int v, int excluded) {
  std::vector<std::pair<Label, int>> slots;
  for (int w : t.neighbors(v))
    if (w != excluded) slots.emplace_back(branch_min(t, v, w), w);
  std::sort(slots.begin(), slots.end());
  KAP_CHECK(slots.size() >= 2, "component with fewer than three special points");
  return {slots[0].second, slots[1].second};
}

}  // namespace

JetMultiPoint smooth_node(const MarkedCurve& c, int fixed_vertex, int moving_vertex) {
  const StableTree& t0 = c.tree;
  bool adjacent = false;
  for (int w : t0.neighbors(fixed_vertex)) adjacent |= (w == moving_vertex);
  if (!adjacent || !t0.is_internal(fixed_vertex) || !t0.is_internal(moving_vertex))
    fail(Errc::not_an_internal_edge, "smooth_node needs an internal edge");

  int u = fixed_vertex, w = moving_vertex;
  auto [s1u, s2u] = anchor_slots(t0, u, w);
  auto [s1w, s2w] = anchor_slots(t0, w, u);
  Mobius gu = mobius_through(c.coord(u, s1u), c.coord(u, w), c.coord(u, s2u));
  Mobius gw = mobius_through(c.coord(w, s1w), c.coord(w, s2w), c.coord(w, u));

  // Merge w into u; w's other edges are re-attached to u.
  StableTree t = t0;
  auto charts = c.charts;
  t.remove_edge(u, w);
  std::vector<int> w_slots;
  for (int y : t.neighbors(w)) w_slots.push_back(y);
  for (int y : w_slots) {
    t.remove_edge(w, y);
    t.add_edge(u, y);
  }

  MarkedCurveT<RatFun> jc;
  {
    std::vector<int> map;
    jc.tree = t.canonicalized(&map);
    jc.charts.resize(jc.tree.vertex_count());
    const RatFun tt = RatFun::t();
    for (int v = 0; v < static_cast<int>(charts.size()); ++v) {
      if (v == w || map[v] < 0 || !t0.is_internal(v)) continue;
      for (auto& [slot, val] : charts[v]) {
        if (v == u) {
          if (slot == w) continue;
          Ext<Rat> img = gu(val);
          jc.charts[map[v]][map[slot]] = ext_from_rat<RatFun>(img);
        } else {
          int key = (slot == w) ? u : slot;  // edges into w now point at the merged vertex
          jc.charts[map[v]][map[key]] = ext_from_rat<RatFun>(val);
        }
      }
    }
    // Moving-side special points enter the merged component at 1 + t*q.
    for (auto& [slot, val] : c.charts[w]) {
      if (slot == u) continue;
      Ext<Rat> img = gw(val);
      KAP_CHECK(!img.is_inf(), "moving special point at infinity");
      jc.charts[map[u]][map[slot]] = Ext<RatFun>(RatFun(Rat(1)) + tt * RatFun(img.finite()));
    }
  }
  validate_curve(jc);
  return jet_at_zero(omega(jc));
}

JetMultiPoint perturb_point(const MarkedCurve& c, int vertex, int slot) {
  KAP_CHECK(c.tree.is_internal(vertex), "perturb_point needs an internal vertex");
  const Ext<Rat>& cur = c.coord(vertex, slot);
  KAP_CHECK(!cur.is_inf(), "cannot perturb the point at infinity");
  MarkedCurveT<Jet> jc = lift_curve<Jet>(c);
  jc.charts[vertex][slot] = Ext<Jet>(Jet(cur.finite(), Rat(1)));
  return JetMultiPoint{omega(jc)};
}

std::vector<JetMultiPoint> deformation_basis(const MarkedCurve& c) {
  MarkedCurve cc = canonical_form(c);
  std::vector<JetMultiPoint> out;
  for (const Edge& e : cc.tree.internal_edges()) out.push_back(smooth_node(cc, e.u, e.v));
  for (int v = 0; v < cc.tree.vertex_count(); ++v) {
    if (!cc.tree.is_internal(v)) continue;
    std::vector<std::pair<Label, int>> slots;
    for (int w : cc.tree.neighbors(v)) slots.emplace_back(branch_min(cc.tree, v, w), w);
    std::sort(slots.begin(), slots.end());
    for (size_t k = 3; k < slots.size(); ++k) out.push_back(perturb_point(cc, v, slots[k].second));
  }
  return out;
}

}  // namespace kap
