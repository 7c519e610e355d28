#pragma once

#include <vector>

#include "kap/label.hpp"
#include "kap/polyq.hpp"
#include "kap/scalar.hpp"

namespace kap {

/// Labels indexing the coordinates of the i-th projective factor:
/// b, c, 1, ..., i-1 (that is, codes 1..i+1).
inline std::vector<Label> factor_labels(int i) {
  std::vector<Label> out;
  out.reserve(static_cast<size_t>(i) + 1);
  for (int code = 1; code <= i + 1; ++code) out.push_back(Label::from_code(code));
  return out;
}

inline int factor_slot(int i, Label l) {
  KAP_CHECK(l.code() >= 1 && l.code() <= i + 1, "label not a coordinate of factor " + std::to_string(i));
  return l.code() - 1;
}

/// Scale a homogeneous coordinate vector so its leftmost pivotable entry is
/// 1 (for F=Rat, the leftmost nonzero entry).
template <class F>
void normalize_factor(std::vector<F>& f) {
  int piv = -1;
  for (size_t k = 0; k < f.size(); ++k)
    if (is_pivot(f[k])) {
      piv = static_cast<int>(k);
      break;
    }
  KAP_CHECK(piv >= 0, "projective factor with no pivotable entry");
  F inv = f[static_cast<size_t>(piv)];
  for (auto& x : f) x = x / inv;
}

/**
 * A point of P^1 x P^2 x ... x P^n over scalar F: one homogeneous coordinate
 * vector per factor, factor i of length i+1, scaled so that the leftmost
 * pivotable entry is 1 (for F=Rat this is the leftmost nonzero entry).
 */
template <class F>
struct MultiPointT {
  std::vector<std::vector<F>> factors;

  int n() const { return static_cast<int>(factors.size()); }
  const F& at(int i, Label l) const { return factors[i - 1][factor_slot(i, l)]; }

  void normalize() {
    for (auto& f : factors) normalize_factor(f);
  }

  bool operator==(const MultiPointT& o) const { return factors == o.factors; }
};

using MultiPoint = MultiPointT<Rat>;

/**
 * Jet-valued point: primal parts form a valid MultiPoint (the chart entry of
 * each factor is exactly 1), tangent parts are a tangent vector to the
 * ambient product in that chart.
 */
struct JetMultiPoint {
  MultiPointT<Jet> point;

  int n() const { return point.n(); }
  MultiPoint primal() const {
    MultiPoint out;
    out.factors.reserve(point.factors.size());
    for (const auto& f : point.factors) {
      std::vector<Rat> row;
      row.reserve(f.size());
      for (const auto& j : f) row.push_back(j.primal);
      out.factors.push_back(std::move(row));
    }
    return out;
  }
  Rat tangent(int i, Label l) const { return point.at(i, l).tangent; }
};

/// Read off the first-order jet of a Q(t)-valued multipoint at t=0. Each
/// factor is rescaled by its leftmost entry of minimal t-adic valuation, so
/// the result is finite and matches the chart of the underlying point.
JetMultiPoint jet_at_zero(const MultiPointT<RatFun>& p);

}  // namespace kap
