#include "kap/reconstruct.hpp"

#include <algorithm>

namespace kap {

LeafColoring color_leaves(const StableTree& t, const std::vector<Rat>& y) {
  std::vector<Label> labels = t.leaves();
  KAP_CHECK(y.size() == labels.size() - 1, "coordinate vector does not match leaf count");
  LeafColoring out;
  out.value[Label::a().code()] = Rat(0);
  // y is indexed b, c, 1, ..., in S-order; labels[0] is a.
  for (size_t k = 1; k < labels.size(); ++k) out.value[labels[k].code()] = y[k - 1];
  std::set<Rat> seen;
  for (const auto& [code, v] : out.value)
    if (!v.is_zero()) seen.insert(v);
  out.nonzero_colors.assign(seen.begin(), seen.end());
  return out;
}

std::vector<BadConfiguration> find_bad_configurations(const StableTree& t,
                                                      const std::set<Label>& green) {
  std::vector<BadConfiguration> out;
  std::vector<Label> labels = t.leaves();
  auto is_green = [&](Label l) { return green.count(l) > 0; };
  KAP_CHECK(!is_green(Label::a()), "leaf a must be red");
  for (Label i : labels) {
    if (!i.is_integer()) continue;
    StableTree ti = restrict_to(t, i.integer_value());
    std::vector<Label> lower;
    for (Label l : labels)
      if (l < i && !(l == Label::a())) lower.push_back(l);
    if (!is_green(i)) {
      // R-type: i red separating two lower greens.
      for (size_t x = 0; x < lower.size(); ++x)
        for (size_t y = x + 1; y < lower.size(); ++y) {
          Label j = lower[x], k = lower[y];
          if (is_green(j) && is_green(k) && separates(ti, i, j, k))
            out.push_back(BadConfiguration{BadKind::r_type, i, j, k});
        }
    } else {
      // G-type: i green separating a from a lower red j, with a lower green k present.
      for (Label j : lower) {
        if (is_green(j)) continue;
        for (Label k : lower) {
          if (k == j || !is_green(k)) continue;
          if (separates(ti, i, Label::a(), j))
            out.push_back(BadConfiguration{BadKind::g_type, i, j, k});
        }
      }
    }
  }
  return out;
}

Edge separating_edge(const StableTree& t, const std::set<Label>& green) {
  KAP_CHECK(!green.empty() && green.size() < t.leaves().size(), "need both colors present");
  std::optional<Edge> found;
  for (const Edge& e : t.edges()) {
    std::vector<Label> side = t.component_leaves(e.u, e.v);
    std::set<Label> side_set(side.begin(), side.end());
    if (side_set == green) {
      if (found) fail(Errc::internal, "two separating edges");
      found = e;
      continue;
    }
    // complement check
    std::vector<Label> other = t.component_leaves(e.v, e.u);
    std::set<Label> other_set(other.begin(), other.end());
    if (other_set == green) {
      if (found && !(*found == e)) fail(Errc::internal, "two separating edges");
      found = e;
    }
  }
  if (!found) fail(Errc::no_separation, "no edge separates the two colors");
  return *found;
}

std::vector<BadConfiguration> scan_bad_configurations(const StableTree& t,
                                                      const LeafColoring& coloring) {
  // Scenario 1: green = union of all nonzero colors; scenario 2: green = one
  // nonzero color, red = everything else.
  std::vector<BadConfiguration> bad;
  {
    std::set<Label> nonzero;
    for (const auto& [code, v] : coloring.value)
      if (!v.is_zero()) nonzero.insert(Label::from_code(code));
    auto b = find_bad_configurations(t, nonzero);
    bad.insert(bad.end(), b.begin(), b.end());
  }
  for (const Rat& beta : coloring.nonzero_colors) {
    auto b = find_bad_configurations(t, coloring.color_class(beta));
    bad.insert(bad.end(), b.begin(), b.end());
  }
  return bad;
}

std::variant<Edge, int> attachment_site(const StableTree& t, const LeafColoring& coloring) {
  std::vector<BadConfiguration> bad = scan_bad_configurations(t, coloring);
  if (!bad.empty()) throw SeparationError(std::move(bad));

  if (coloring.binary()) {
    std::set<Label> nonzero;
    for (const auto& [code, v] : coloring.value)
      if (!v.is_zero()) nonzero.insert(Label::from_code(code));
    return separating_edge(t, nonzero);
  }

  // Unique vertex all of whose branches are monochromatic with pairwise
  // distinct colors.
  std::optional<int> site;
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (!t.is_internal(v)) continue;
    bool ok = true;
    std::set<Rat> used;
    for (int w : t.neighbors(v)) {
      std::vector<Label> leaves = t.component_leaves(w, v);
      Rat c = coloring.value_of(leaves.front());
      for (Label l : leaves)
        if (!(coloring.value_of(l) == c)) ok = false;
      if (!ok) break;
      if (!used.insert(c).second) ok = false;
      if (!ok) break;
    }
    if (ok) {
      KAP_CHECK(!site, "two candidate attachment vertices");
      site = v;
    }
  }
  if (!site) fail(Errc::no_separation, "no vertex with monochromatic branches");
  return *site;
}

namespace {

// Rigid three-point component chart in branch-min order: 0, 1, infinity.
void assign_rigid_chart(MarkedCurve& c, int v) {
  std::vector<std::pair<Label, int>> slots;
  for (int w : c.tree.neighbors(v)) slots.emplace_back(branch_min(c.tree, v, w), w);
  std::sort(slots.begin(), slots.end());
  KAP_CHECK(slots.size() == 3, "rigid chart needs a trivalent vertex");
  c.charts[v][slots[0].second] = Ext<Rat>(Rat(0));
  c.charts[v][slots[1].second] = Ext<Rat>(Rat(1));
  c.charts[v][slots[2].second] = Ext<Rat>::infinity();
}

MarkedCurve reconstruct_base(const std::vector<Rat>& f1) {
  KAP_CHECK(f1.size() == 2, "first factor must have two coordinates");
  const Rat& tb = f1[0];
  const Rat& tc = f1[1];
  MarkedCurve c;
  auto star = [&](std::vector<std::pair<Label, Ext<Rat>>> pts) {
    int v = c.tree.add_internal();
    c.charts.resize(1);
    for (auto& [l, coord] : pts) {
      int leaf = c.tree.add_leaf(l);
      c.tree.add_edge(v, leaf);
      c.charts.resize(c.tree.vertex_count());
      c.charts[v][leaf] = coord;
    }
  };
  auto two_blocks = [&](std::vector<Label> first, std::vector<Label> second) {
    int u = c.tree.add_internal();
    int w = c.tree.add_internal();
    c.tree.add_edge(u, w);
    for (Label l : first) c.tree.add_edge(u, c.tree.add_leaf(l));
    for (Label l : second) c.tree.add_edge(w, c.tree.add_leaf(l));
    c.charts.resize(c.tree.vertex_count());
    assign_rigid_chart(c, u);
    assign_rigid_chart(c, w);
  };
  Label one = Label::integer(1);
  if (tb.is_zero()) {
    two_blocks({Label::a(), Label::b()}, {Label::c(), one});
  } else if (tc.is_zero()) {
    two_blocks({Label::a(), Label::c()}, {Label::b(), one});
  } else if (tb == tc) {
    two_blocks({Label::a(), one}, {Label::b(), Label::c()});
  } else {
    star({{Label::a(), Ext<Rat>(Rat(0))},
          {Label::b(), Ext<Rat>(tb)},
          {Label::c(), Ext<Rat>(tc)},
          {one, Ext<Rat>::infinity()}});
  }
  validate_curve(c);
  return c;
}

MultiPoint prefix_point(const MultiPoint& p, int levels) {
  MultiPoint out;
  out.factors.assign(p.factors.begin(), p.factors.begin() + levels);
  return out;
}

void verify_image(const MarkedCurve& c, const MultiPoint& p, const char* stage) {
  MultiPoint back = omega(c);
  if (!(back == p))
    fail(Errc::not_in_image, std::string("verification failed after ") + stage);
}

MarkedCurve reconstruct_rec(const MultiPoint& p) {
  int n = p.n();
  if (n == 1) return reconstruct_base(p.factors[0]);

  MarkedCurve prev = reconstruct_rec(prefix_point(p, n - 1));
  const std::vector<Rat>& y = p.factors[static_cast<size_t>(n) - 1];
  LeafColoring coloring = color_leaves(prev.tree, y);
  std::variant<Edge, int> site = attachment_site(prev.tree, coloring);

  MarkedCurve cur = prev;
  Label ln = Label::integer(n);
  if (std::holds_alternative<Edge>(site)) {
    // Insert n in the middle of the separating edge: the new component is
    // rigid, with chart 0 (a-side node), 1 (other side), infinity (n).
    Edge e = std::get<Edge>(site);
    int mid = cur.tree.add_internal();
    cur.charts.resize(cur.tree.vertex_count());
    int leaf = cur.tree.add_leaf(ln);
    cur.charts.resize(cur.tree.vertex_count());
    cur.tree.remove_edge(e.u, e.v);
    cur.tree.add_edge(e.u, mid);
    cur.tree.add_edge(mid, e.v);
    cur.tree.add_edge(mid, leaf);
    for (int end : {e.u, e.v}) {
      if (!cur.tree.is_internal(end)) continue;
      int other = (end == e.u) ? e.v : e.u;
      cur.charts[end][mid] = cur.charts[end][other];
      cur.charts[end].erase(other);
    }
    std::vector<Label> u_side = cur.tree.component_leaves(e.u, mid);
    bool u_has_a = std::binary_search(u_side.begin(), u_side.end(), Label::a());
    cur.charts[mid][u_has_a ? e.u : e.v] = Ext<Rat>(Rat(0));
    cur.charts[mid][u_has_a ? e.v : e.u] = Ext<Rat>(Rat(1));
    cur.charts[mid][leaf] = Ext<Rat>::infinity();
  } else {
    // Vertex case: transport the new point's coordinate from the interior
    // auxiliary curve on the branch minima.
    int v = std::get<int>(site);
    std::vector<std::pair<Label, int>> minima;
    for (int w : cur.tree.neighbors(v)) minima.emplace_back(branch_min(cur.tree, v, w), w);
    std::sort(minima.begin(), minima.end());
    KAP_CHECK(minima.size() >= 3 && minima[0].first == Label::a(), "bad attachment vertex");
    int m = static_cast<int>(minima.size()) - 1;  // number of non-a branch minima

    // Auxiliary multipoint on labels {a, i_1, ..., i_m, n}: factor f < m-1
    // restricts the P^{i_{f+2}} coordinates of p to indices i_1..i_{f+1};
    // the top factor is y restricted to the minima.
    MultiPoint aux;
    for (int f = 1; f <= m - 1; ++f) {
      std::vector<Rat> row;
      if (f == m - 1) {
        for (int s = 1; s <= m; ++s)
          row.push_back(coloring.value_of(minima[static_cast<size_t>(s)].first));
      } else {
        int ij = minima[static_cast<size_t>(f) + 2].first.integer_value();
        for (int s = 1; s <= f + 1; ++s)
          row.push_back(p.at(ij, minima[static_cast<size_t>(s)].first));
      }
      aux.factors.push_back(std::move(row));
    }
    aux.normalize();
    MarkedCurve interior = reconstruct_interior(aux);
    int center = -1;
    for (int w = 0; w < interior.tree.vertex_count(); ++w)
      if (interior.tree.is_internal(w)) center = w;
    // Chart values of a, i_1, i_2 and n on the auxiliary component, by the
    // standard relabeling a,b,c,... -> a,i_1,i_2,...
    auto aux_coord = [&](Label std_label) {
      return interior.coord(center, interior.tree.leaf_vertex(std_label));
    };
    Ext<Rat> pa = aux_coord(Label::a());
    Ext<Rat> p1 = aux_coord(Label::b());
    Ext<Rat> p2 = aux_coord(Label::c());
    Ext<Rat> pn = aux_coord(Label::integer(m - 1));
    // Match the a, i_1, i_2 special points on the target component.
    Mobius to_chart = mobius_through(pa, p1, p2);
    Mobius from_target =
        mobius_through(cur.coord(v, minima[0].second), cur.coord(v, minima[1].second),
                       cur.coord(v, minima[2].second));
    Ext<Rat> coord_n = from_target.inverse().compose(to_chart)(pn);
    for (const auto& [slot, val] : cur.charts[v])
      if (val == coord_n)
        fail(Errc::not_in_image, "transported coordinate collides with a special point");
    int leaf = cur.tree.add_leaf(ln);
    cur.charts.resize(cur.tree.vertex_count());
    cur.tree.add_edge(v, leaf);
    cur.charts[v][leaf] = coord_n;
  }
  validate_curve(cur);
  return cur;
}

}  // namespace

MarkedCurve reconstruct_interior(const MultiPoint& input) {
  MultiPoint p = input;
  p.normalize();
  const std::vector<Rat>& y = p.factors.back();
  for (size_t i = 0; i < y.size(); ++i) {
    if (y[i].is_zero()) fail(Errc::not_interior, "zero coordinate in the last factor");
    for (size_t j = i + 1; j < y.size(); ++j)
      if (y[i] == y[j]) fail(Errc::not_interior, "repeated coordinate in the last factor");
  }
  MembershipReport rep = is_member(p);
  if (!rep.member()) throw MembershipError(std::move(rep.violations));
  int n = p.n();
  MarkedCurve c;
  int v = c.tree.add_internal();
  c.charts.resize(1);
  auto put = [&](Label l, Ext<Rat> coord) {
    int leaf = c.tree.add_leaf(l);
    c.tree.add_edge(v, leaf);
    c.charts.resize(c.tree.vertex_count());
    c.charts[v][leaf] = std::move(coord);
  };
  put(Label::a(), Ext<Rat>(Rat(0)));
  std::vector<Label> cols = factor_labels(n);
  for (size_t i = 0; i < cols.size(); ++i) put(cols[i], Ext<Rat>(y[i]));
  put(Label::integer(n), Ext<Rat>::infinity());
  validate_curve(c);
  verify_image(c, p, "interior reconstruction");
  return c;
}

MarkedCurve reconstruct(const MultiPoint& input) {
  MultiPoint p = input;
  p.normalize();
  MembershipReport rep = is_member(p);
  if (!rep.member()) throw MembershipError(std::move(rep.violations));
  MarkedCurve c = reconstruct_rec(p);
  verify_image(c, p, "reconstruction");
  return c;
}

}  // namespace kap
