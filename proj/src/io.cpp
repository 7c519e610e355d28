#include "kap/io.hpp"

#include <fstream>

namespace kap {

namespace {

std::string ext_to_string(const Ext<Rat>& e) { return e.is_inf() ? "inf" : e.finite().str(); }

Ext<Rat> ext_from_string(const std::string& s) {
  if (s == "inf") return Ext<Rat>::infinity();
  auto r = Rat::parse(s);
  if (!r) fail(Errc::parse_error, "bad coordinate '" + s + "'");
  return Ext<Rat>(*r);
}

// "v<k>" refers to the k-th internal vertex in creation order of the parsed
// tree; a plain label token refers to that leaf.
int slot_from_key(const StableTree& t, const std::string& key) {
  if (!key.empty() && key[0] == 'v' && key.size() > 1 && key[1] >= '0' && key[1] <= '9') {
    int want = 0;
    for (size_t i = 1; i < key.size(); ++i) {
      if (key[i] < '0' || key[i] > '9') fail(Errc::parse_error, "bad vertex key '" + key + "'");
      want = want * 10 + (key[i] - '0');
    }
    int count = 0;
    for (int v = 0; v < t.vertex_count(); ++v)
      if (t.is_internal(v)) {
        if (count == want) return v;
        ++count;
      }
    fail(Errc::parse_error, "vertex key out of range: " + key);
  }
  auto l = Label::parse(key);
  if (!l) fail(Errc::parse_error, "bad chart key '" + key + "'");
  return t.leaf_vertex(*l);
}

std::string slot_to_key(const StableTree& t, int slot) {
  if (t.is_leaf(slot)) return t.leaf_label(slot).str();
  int count = 0;
  for (int v = 0; v < slot; ++v)
    if (t.is_internal(v)) ++count;
  return "v" + std::to_string(count);
}

}  // namespace

Json curve_to_json(const MarkedCurve& c) {
  // Renumber canonically so files are stable across equal trees.
  std::vector<int> map;
  StableTree tree = c.tree.canonicalized(&map);
  MarkedCurve cc;
  cc.tree = tree;
  cc.charts.resize(tree.vertex_count());
  for (int v = 0; v < static_cast<int>(c.charts.size()); ++v)
    for (const auto& [slot, val] : c.charts[v]) cc.charts[map[v]][map[slot]] = val;

  Json j;
  j["n"] = cc.tree.top_label();
  j["tree"] = cc.tree.text();
  Json charts = Json::array();
  int internal_index = 0;
  for (int v = 0; v < cc.tree.vertex_count(); ++v) {
    if (!cc.tree.is_internal(v)) continue;
    Json entry;
    entry["vertex"] = internal_index++;
    Json points = Json::object();
    // Deterministic key order: leaves by label, then internal slots by index.
    std::vector<std::pair<std::string, int>> keys;
    for (const auto& [slot, val] : cc.charts[v]) keys.emplace_back(slot_to_key(cc.tree, slot), slot);
    std::sort(keys.begin(), keys.end());
    for (const auto& [key, slot] : keys) points[key] = ext_to_string(cc.charts[v].at(slot));
    entry["points"] = points;
    charts.push_back(entry);
  }
  j["charts"] = charts;
  return j;
}

MarkedCurve curve_from_json(const Json& j) {
  if (!j.contains("tree") || !j.contains("charts")) fail(Errc::parse_error, "curve file needs tree and charts");
  MarkedCurve c;
  c.tree = StableTree::parse(j.at("tree").get<std::string>());
  c.charts.resize(c.tree.vertex_count());
  std::vector<int> internals;
  for (int v = 0; v < c.tree.vertex_count(); ++v)
    if (c.tree.is_internal(v)) internals.push_back(v);
  for (const auto& entry : j.at("charts")) {
    int idx = entry.at("vertex").get<int>();
    if (idx < 0 || idx >= static_cast<int>(internals.size()))
      fail(Errc::parse_error, "chart vertex index out of range");
    int v = internals[static_cast<size_t>(idx)];
    for (const auto& [key, val] : entry.at("points").items())
      c.charts[v][slot_from_key(c.tree, key)] = ext_from_string(val.get<std::string>());
  }
  validate_curve(c);
  if (j.contains("n") && j.at("n").get<int>() != c.tree.top_label())
    fail(Errc::parse_error, "declared n does not match the tree");
  return c;
}

Json multipoint_to_json(const MultiPoint& p) {
  Json j;
  j["n"] = p.n();
  Json factors = Json::array();
  for (const auto& f : p.factors) {
    Json row = Json::array();
    for (const Rat& x : f) row.push_back(x.str());
    factors.push_back(row);
  }
  j["factors"] = factors;
  return j;
}

MultiPoint multipoint_from_json(const Json& j) {
  if (!j.contains("factors")) fail(Errc::parse_error, "multipoint file needs factors");
  MultiPoint p;
  int i = 1;
  for (const auto& row : j.at("factors")) {
    std::vector<Rat> f;
    for (const auto& x : row) {
      auto r = Rat::parse(x.get<std::string>());
      if (!r) fail(Errc::parse_error, "bad rational in factor " + std::to_string(i));
      f.push_back(*r);
    }
    if (static_cast<int>(f.size()) != i + 1)
      fail(Errc::parse_error, "factor " + std::to_string(i) + " must have " +
                                  std::to_string(i + 1) + " entries");
    p.factors.push_back(std::move(f));
    ++i;
  }
  if (p.n() < 1) fail(Errc::parse_error, "multipoint needs at least one factor");
  if (j.contains("n") && j.at("n").get<int>() != p.n())
    fail(Errc::parse_error, "declared n does not match the factors");
  p.normalize();
  return p;
}

Json jet_to_json(const Jet& j) {
  Json out;
  out["primal"] = j.primal.str();
  out["tangent"] = j.tangent.str();
  return out;
}

Json minor_to_json(const MinorIndex& ix) {
  Json j;
  j["i"] = ix.i;
  j["j"] = ix.j;
  j["m"] = ix.m.str();
  j["r"] = ix.r.str();
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::parse_error, std::string("bad JSON in ") + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(Errc::io_error, "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace kap
