#include "kap/curve.hpp"

#include <algorithm>

namespace kap {

JetMultiPoint jet_at_zero(const MultiPointT<RatFun>& p) {
  JetMultiPoint out;
  out.point.factors.reserve(p.factors.size());
  for (const auto& f : p.factors) {
    int piv = -1, best_val = 0;
    for (size_t k = 0; k < f.size(); ++k) {
      if (f[k].is_zero()) continue;
      int val = f[k].valuation0();
      if (piv < 0 || val < best_val) {
        piv = static_cast<int>(k);
        best_val = val;
      }
    }
    KAP_CHECK(piv >= 0, "zero projective factor");
    std::vector<Jet> row;
    row.reserve(f.size());
    for (const auto& x : f) {
      if (x.is_zero()) {
        row.emplace_back(Rat(0), Rat(0));
      } else {
        row.push_back((x / f[piv]).jet0());
      }
    }
    out.point.factors.push_back(std::move(row));
  }
  return out;
}

namespace {

Ext<Rat> fresh_small_rational(Rng& rng, const std::map<int, Ext<Rat>>& used) {
  for (int tries = 0; tries < 10000; ++tries) {
    Ext<Rat> cand(rng.small_rational());
    bool clash = false;
    for (const auto& [slot, val] : used) clash |= (val == cand);
    if (!clash) return cand;
  }
  fail(Errc::internal, "could not sample a fresh coordinate");
}

}  // namespace

MarkedCurve random_curve(int n, std::uint64_t seed, int boundary_nodes) {
  KAP_CHECK(n >= 1, "random_curve needs n >= 1");
  if (boundary_nodes < 0 || boundary_nodes > n)
    fail(Errc::infeasible_shape,
         "boundary_nodes must lie in [0, " + std::to_string(n) + "] for n = " + std::to_string(n));
  Rng rng(seed);

  StableTree t;
  int center = t.add_internal();
  for (Label l : {Label::a(), Label::b(), Label::c()}) t.add_edge(center, t.add_leaf(l));

  // Decide which of the n insertions subdivide an edge (each adds exactly
  // one internal edge); the remainder attach to an existing vertex.
  std::vector<int> order(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) order[static_cast<size_t>(k)] = k + 1;
  for (int k = n - 1; k > 0; --k)
    std::swap(order[static_cast<size_t>(k)], order[static_cast<size_t>(rng.range(0, k))]);
  std::vector<char> subdivide(static_cast<size_t>(n) + 1, 0);
  for (int k = 0; k < boundary_nodes; ++k) subdivide[static_cast<size_t>(order[static_cast<size_t>(k)])] = 1;

  for (int k = 1; k <= n; ++k) {
    int leaf = t.add_leaf(Label::integer(k));
    if (subdivide[static_cast<size_t>(k)]) {
      std::vector<Edge> es = t.edges();
      Edge e = es[static_cast<size_t>(rng.range(0, static_cast<long>(es.size()) - 1))];
      int mid = t.add_internal();
      t.remove_edge(e.u, e.v);
      t.add_edge(e.u, mid);
      t.add_edge(mid, e.v);
      t.add_edge(mid, leaf);
    } else {
      std::vector<int> internals;
      for (int v = 0; v < t.vertex_count(); ++v)
        if (t.is_internal(v)) internals.push_back(v);
      t.add_edge(internals[static_cast<size_t>(rng.range(0, static_cast<long>(internals.size()) - 1))], leaf);
    }
  }

  MarkedCurve c;
  c.tree = t.canonicalized();
  c.charts.resize(c.tree.vertex_count());
  for (int v = 0; v < c.tree.vertex_count(); ++v) {
    if (!c.tree.is_internal(v)) continue;
    for (int w : c.tree.neighbors(v)) c.charts[v][w] = fresh_small_rational(rng, c.charts[v]);
  }
  validate_curve(c);
  KAP_CHECK(static_cast<int>(c.tree.internal_edges().size()) == boundary_nodes,
            "internal edge count drifted");
  return c;
}

MarkedCurve retwist(const MarkedCurve& c, Rng& rng) {
  MarkedCurve out = c;
  for (int v = 0; v < out.tree.vertex_count(); ++v) {
    if (!out.tree.is_internal(v)) continue;
    Mobius g{};
    do {
      g = Mobius{rng.small_rational(6, 4), rng.small_rational(6, 4), rng.small_rational(6, 4),
                 rng.small_rational(6, 4)};
    } while (g.det().is_zero());
    for (auto& [slot, val] : out.charts[v]) val = g(val);
  }
  validate_curve(out);
  return out;
}

}  // namespace kap
