#pragma once

#include <set>
#include <variant>

#include "kap/curve.hpp"
#include "kap/minors.hpp"

namespace kap {

/**
 * Coloring of the leaves of a tree by the values of the top coordinate
 * vector: leaf a and every zero coordinate get the reserved color Z (value
 * 0); two leaves share a color iff their coordinates are equal.
 */
struct LeafColoring {
  std::map<int, Rat> value;  // label code -> value; a maps to 0
  std::vector<Rat> nonzero_colors;  // distinct nonzero values, ascending

  Rat value_of(Label l) const {
    auto it = value.find(l.code());
    KAP_CHECK(it != value.end(), "label not colored");
    return it->second;
  }
  std::set<Label> color_class(const Rat& v) const {
    std::set<Label> out;
    for (const auto& [code, val] : value)
      if (val == v) out.insert(Label::from_code(code));
    return out;
  }
  bool binary() const { return nonzero_colors.size() <= 1; }
};

LeafColoring color_leaves(const StableTree& t, const std::vector<Rat>& y);

enum class BadKind { r_type, g_type };

struct BadConfiguration {
  BadKind kind;
  Label i, j, k;
  bool operator==(const BadConfiguration&) const = default;
  std::string str() const {
    return std::string(kind == BadKind::r_type ? "R" : "G") + "(i=" + i.str() + ", j=" + j.str() +
           ", k=" + k.str() + ")";
  }
};

/**
 * Exhaustive scan for R-type and G-type bad configurations of a two-coloring
 * (leaf a is red). `green` holds the G-colored leaves; everything else is R.
 * Empty result means the strong separation property holds.
 */
std::vector<BadConfiguration> find_bad_configurations(const StableTree& t,
                                                      const std::set<Label>& green);

class SeparationError : public Error {
 public:
  explicit SeparationError(std::vector<BadConfiguration> bad)
      : Error(Errc::separation_failure, describe(bad)), bad_(std::move(bad)) {}
  const std::vector<BadConfiguration>& bad() const { return bad_; }

 private:
  static std::string describe(const std::vector<BadConfiguration>& bad) {
    std::string s = std::to_string(bad.size()) + " bad configuration(s)";
    if (!bad.empty()) s += ", first " + bad.front().str();
    return s;
  }
  std::vector<BadConfiguration> bad_;
};

/// The unique edge splitting the leaves into the green set and the rest;
/// requires strong separation and at least one leaf of each color.
Edge separating_edge(const StableTree& t, const std::set<Label>& green);

/// Bad configurations over both coloring scenarios: zero against the union
/// of the nonzero colors, and each nonzero color against everything else.
std::vector<BadConfiguration> scan_bad_configurations(const StableTree& t,
                                                      const LeafColoring& coloring);

/// Where the next marked point attaches: an edge when the coordinate vector
/// is binary, otherwise the unique vertex whose branches are monochromatic
/// with pairwise distinct colors. Verifies strong separation for both
/// coloring scenarios first.
std::variant<Edge, int> attachment_site(const StableTree& t, const LeafColoring& coloring);

class MembershipError : public Error {
 public:
  explicit MembershipError(std::vector<MinorValue> violations)
      : Error(Errc::not_in_image, describe(violations)), violations_(std::move(violations)) {}
  const std::vector<MinorValue>& violations() const { return violations_; }

 private:
  static std::string describe(const std::vector<MinorValue>& v) {
    std::string s = std::to_string(v.size()) + " violated generator(s)";
    if (!v.empty()) s += ", first " + v.front().index.str();
    return s;
  }
  std::vector<MinorValue> violations_;
};

/// Inverse of the embedding on the interior: the last factor must have all
/// entries nonzero and pairwise distinct.
MarkedCurve reconstruct_interior(const MultiPoint& p);

/// Inverse of the embedding: builds the unique stable curve mapping to a
/// point satisfying the defining equations. Throws MembershipError when a
/// generator is violated or the final verification fails.
MarkedCurve reconstruct(const MultiPoint& p);

}  // namespace kap
