#pragma once

#include "kap/curve.hpp"

namespace kap {

/**
 * First-order smoothing of a node. The edge (fixed, moving) is an internal
 * edge of the curve's tree; the two components are merged into one, the
 * fixed side re-coordinatized so the node sits at 1 (its two smallest other
 * special points at 0 and infinity), and each special point q on the moving
 * side placed at 1 + t*q with the moving chart normalized so the node is at
 * infinity. Evaluating the embedding over Q(t) and reading off the jet at
 * t=0 yields a tangent vector to the image at omega(curve).
 */
JetMultiPoint smooth_node(const MarkedCurve& c, int fixed_vertex, int moving_vertex);

/**
 * Tangent vector from moving a single special point: the chart entry of
 * `slot` at `vertex` moves with unit speed, everything else stays. The slot
 * must hold a finite coordinate.
 */
JetMultiPoint perturb_point(const MarkedCurve& c, int vertex, int slot);

/// All first-order deformations used by the span checks: one smoothing jet
/// per internal edge (both orientations give the same span; one is emitted)
/// plus one perturbation per non-pinned special point of the canonical form.
std::vector<JetMultiPoint> deformation_basis(const MarkedCurve& c);

}  // namespace kap
