#pragma once

#include <string>
#include <vector>

#include "kap/curve.hpp"
#include "kap/io.hpp"

namespace kap::testing {

MarkedCurve curve_from_literal(const std::string& json_text);

/// Five-marked interior curve with p_a=0, p_b=1, p_c=2, p_1=3, p_2=inf.
MarkedCurve e1_curve();

/// The nodal 7-marked curve whose component at marked point 4 carries the
/// branches {a,b,c}, {1,3}, {2}, with branch coordinates s and t. Its
/// embedding is ([0:1],[0:0:1],[0:0:1:0],[0:0:s:t:s]).
MarkedCurve branches_figure_curve(const Rat& s, const Rat& t);

/// Eight-marked curve whose stacked tangent systems reproduce the ten
/// reference equations (parameter t = 1/3).
MarkedCurve ten_equations_curve();

/// Exceptional configurations: marked point n on a trivalent component with
/// two nodes. In the first the k-side component moves under the prescribed
/// smoothing (m0 > m1), in the second the a-side moves (m0 < m1).
MarkedCurve exceptional_moving_k_curve();  // n=5, m0=1, m1=c
MarkedCurve exceptional_moving_a_curve();  // n=4, m0=b, m1=3

/// Hand-built violating pair: a 6-marked curve plus a top coordinate vector
/// whose coloring has the R-type bad configuration (i=3, j=1, k=2).
struct BadPair {
  MarkedCurve curve;
  std::vector<Rat> y;
  MultiPoint point;  // omega(curve) extended by y
};
BadPair bad_configuration_pair();

/// Every stable tree on the given leaf labels (labels sorted, starting with
/// a, b, c), built by exhaustive leaf insertion with canonical-form
/// deduplication.
std::vector<StableTree> all_stable_trees(const std::vector<Label>& labels);

/// Equip a tree with deterministic random charts (distinct small rationals
/// per component).
MarkedCurve with_random_charts(const StableTree& t, std::uint64_t seed);

std::vector<Label> standard_labels(int n);

}  // namespace kap::testing
