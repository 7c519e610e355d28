#pragma once

#include "kap/scalar.hpp"

namespace kap {

/**
 * Mobius transformation z -> (a z + b) / (c z + d) with nonzero determinant,
 * acting on P^1 over a scalar field F.
 */
template <class F>
struct MobiusT {
  F a, b, c, d;

  F det() const { return a * d - b * c; }

  Ext<F> operator()(const Ext<F>& z) const {
    if (z.is_inf()) {
      if (is_zero(c)) return Ext<F>::infinity();
      return Ext<F>(a / c);
    }
    F den = c * z.finite() + d;
    if (is_zero(den)) return Ext<F>::infinity();
    return Ext<F>((a * z.finite() + b) / den);
  }

  MobiusT compose(const MobiusT& o) const {  // (*this) after o
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }

  MobiusT inverse() const { return {d, -b, -c, a}; }
};

/**
 * The unique Mobius transformation with g(z0)=0, g(z1)=1, g(zinf)=inf
 * (the cross-ratio map). Inputs must be pairwise distinct; at most one may
 * be the point at infinity.
 */
template <class F>
MobiusT<F> mobius_through(const Ext<F>& z0, const Ext<F>& z1, const Ext<F>& zinf) {
  if (z0 == z1 || z0 == zinf || z1 == zinf)
    fail(Errc::degenerate_triple, "mobius_through needs three distinct points");
  const F one = from_rat<F>(Rat(1));
  if (z0.is_inf()) {
    // g(z) = (z1 - zinf) / (z - zinf)
    return {F{}, z1.finite() - zinf.finite(), one, -zinf.finite()};
  }
  if (z1.is_inf()) {
    // g(z) = (z - z0) / (z - zinf)
    return {one, -z0.finite(), one, -zinf.finite()};
  }
  if (zinf.is_inf()) {
    // g(z) = (z - z0) / (z1 - z0)
    return {one, -z0.finite(), F{}, z1.finite() - z0.finite()};
  }
  // g(z) = ((z - z0)(z1 - zinf)) / ((z - zinf)(z1 - z0))
  F p = z1.finite() - zinf.finite();
  F q = z1.finite() - z0.finite();
  return {p, -z0.finite() * p, q, -zinf.finite() * q};
}

using Mobius = MobiusT<Rat>;

/**
 * Pushes a first-order jet through a Mobius transformation: the primal part
 * maps through g and the tangent part is scaled by g'(primal).
 */
inline Jet jet_eval(const Mobius& g, const Jet& z) {
  Rat den = g.c * z.primal + g.d;
  if (den.is_zero()) fail(Errc::pole_evaluation, "jet_eval at the pole of the transformation");
  Rat primal = (g.a * z.primal + g.b) / den;
  Rat deriv = g.det() / (den * den);
  return {primal, deriv * z.tangent};
}

}  // namespace kap
