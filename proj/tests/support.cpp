#include "support.hpp"

#include <set>

namespace kap::testing {

MarkedCurve curve_from_literal(const std::string& json_text) {
  return curve_from_json(Json::parse(json_text));
}

MarkedCurve e1_curve() {
  return curve_from_literal(R"json({
    "n": 2,
    "tree": "(a,b,c,1,2)",
    "charts": [
      {"vertex": 0, "points": {"a": "0", "b": "1", "c": "2", "1": "3", "2": "inf"}}
    ]
  })json");
}

MarkedCurve branches_figure_curve(const Rat& s, const Rat& t) {
  Json j = Json::parse(R"json({
    "n": 4,
    "tree": "(((a,b),c),(1,3),2,4)",
    "charts": [
      {"vertex": 0, "points": {"v1": "0", "v3": "S", "2": "T", "4": "inf"}},
      {"vertex": 1, "points": {"v2": "0", "c": "1", "v0": "inf"}},
      {"vertex": 2, "points": {"a": "0", "b": "1", "v1": "inf"}},
      {"vertex": 3, "points": {"v0": "0", "1": "1", "3": "inf"}}
    ]
  })json");
  j["charts"][0]["points"]["v3"] = s.str();
  j["charts"][0]["points"]["2"] = t.str();
  return curve_from_json(j);
}

MarkedCurve ten_equations_curve() {
  return curve_from_literal(R"json({
    "n": 5,
    "tree": "(5,(b,4,(2,a)),(3,(1,c)))",
    "charts": [
      {"vertex": 0, "points": {"v1": "0", "v3": "1", "5": "inf"}},
      {"vertex": 1, "points": {"v2": "0", "b": "1", "v0": "1/3", "4": "inf"}},
      {"vertex": 2, "points": {"a": "0", "v1": "1", "2": "inf"}},
      {"vertex": 3, "points": {"v0": "0", "v4": "1", "3": "inf"}},
      {"vertex": 4, "points": {"v3": "0", "c": "1", "1": "inf"}}
    ]
  })json");
}

MarkedCurve exceptional_moving_k_curve() {
  return curve_from_literal(R"json({
    "n": 5,
    "tree": "(5,(a,1,2),(c,(b,3,4)))",
    "charts": [
      {"vertex": 0, "points": {"v1": "0", "v2": "1", "5": "inf"}},
      {"vertex": 1, "points": {"a": "0", "1": "1", "2": "2", "v0": "inf"}},
      {"vertex": 2, "points": {"v0": "0", "v3": "1", "c": "inf"}},
      {"vertex": 3, "points": {"v2": "0", "b": "1", "3": "2", "4": "inf"}}
    ]
  })json");
}

MarkedCurve exceptional_moving_a_curve() {
  return curve_from_literal(R"json({
    "n": 4,
    "tree": "(4,(a,b,c,1),(2,3))",
    "charts": [
      {"vertex": 0, "points": {"v1": "0", "v2": "1", "4": "inf"}},
      {"vertex": 1, "points": {"a": "0", "b": "1", "c": "2", "1": "3", "v0": "inf"}},
      {"vertex": 2, "points": {"v0": "0", "2": "1", "3": "inf"}}
    ]
  })json");
}

BadPair bad_configuration_pair() {
  BadPair out;
  out.curve = curve_from_literal(R"json({
    "n": 3,
    "tree": "((1,a),3,(2,b,c))",
    "charts": [
      {"vertex": 0, "points": {"v1": "0", "v2": "1", "3": "inf"}},
      {"vertex": 1, "points": {"a": "0", "1": "1", "v0": "inf"}},
      {"vertex": 2, "points": {"v0": "0", "b": "1", "c": "2", "2": "inf"}}
    ]
  })json");
  out.y = {Rat(0), Rat(0), Rat(1), Rat(1), Rat(0)};  // b, c, 1, 2, 3
  out.point = omega(out.curve);
  out.point.factors.push_back(out.y);
  out.point.normalize();
  return out;
}

MarkedCurve with_random_charts(const StableTree& t, std::uint64_t seed) {
  Rng rng(seed);
  MarkedCurve c;
  c.tree = t;
  c.charts.resize(t.vertex_count());
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (!t.is_internal(v)) continue;
    for (int w : t.neighbors(v)) {
      Ext<Rat> cand;
      do {
        cand = Ext<Rat>(rng.small_rational());
        bool clash = false;
        for (const auto& [slot, val] : c.charts[v]) clash |= (val == cand);
        if (!clash) break;
      } while (true);
      c.charts[v][w] = cand;
    }
  }
  validate_curve(c);
  return c;
}

std::vector<Label> standard_labels(int n) {
  std::vector<Label> out = {Label::a(), Label::b(), Label::c()};
  for (int k = 1; k <= n; ++k) out.push_back(Label::integer(k));
  return out;
}

std::vector<StableTree> all_stable_trees(const std::vector<Label>& labels) {
  KAP_CHECK(labels.size() >= 3, "need at least three labels");
  std::vector<StableTree> current;
  {
    StableTree t;
    int v = t.add_internal();
    for (int k = 0; k < 3; ++k) t.add_edge(v, t.add_leaf(labels[static_cast<size_t>(k)]));
    current.push_back(t);
  }
  for (size_t next = 3; next < labels.size(); ++next) {
    std::set<std::string> seen;
    std::vector<StableTree> grown;
    for (const StableTree& t : current) {
      // attach the next leaf to an existing internal vertex
      for (int v = 0; v < t.vertex_count(); ++v) {
        if (!t.is_internal(v)) continue;
        StableTree s = t;
        s.add_edge(v, s.add_leaf(labels[next]));
        s = s.canonicalized();
        if (seen.insert(s.text()).second) grown.push_back(s);
      }
      // or subdivide an edge
      for (const Edge& e : t.edges()) {
        StableTree s = t;
        int mid = s.add_internal();
        s.remove_edge(e.u, e.v);
        s.add_edge(e.u, mid);
        s.add_edge(mid, e.v);
        s.add_edge(mid, s.add_leaf(labels[next]));
        s = s.canonicalized();
        if (seen.insert(s.text()).second) grown.push_back(s);
      }
    }
    current = std::move(grown);
  }
  return current;
}

}  // namespace kap::testing
