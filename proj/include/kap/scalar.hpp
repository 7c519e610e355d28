#pragma once

#include <string>

#include "kap/rational.hpp"

namespace kap {

/**
 * First-order jet: primal + tangent*eps with eps^2 = 0. The exact carrier
 * for derivatives of one-parameter families.
 */
struct Jet {
  Rat primal;
  Rat tangent;

  Jet() = default;
  Jet(Rat p) : primal(std::move(p)) {}  // NOLINT: lifts a scalar to a constant jet
  Jet(Rat p, Rat t) : primal(std::move(p)), tangent(std::move(t)) {}

  Jet operator-() const { return {-primal, -tangent}; }
  Jet operator+(const Jet& o) const { return {primal + o.primal, tangent + o.tangent}; }
  Jet operator-(const Jet& o) const { return {primal - o.primal, tangent - o.tangent}; }
  Jet operator*(const Jet& o) const {
    return {primal * o.primal, primal * o.tangent + tangent * o.primal};
  }
  Jet operator/(const Jet& o) const {
    if (o.primal.is_zero())
      fail(Errc::pole_evaluation, "jet division requires nonzero primal part");
    Rat p = primal / o.primal;
    return {p, (tangent - p * o.tangent) / o.primal};
  }
  bool operator==(const Jet& o) const { return primal == o.primal && tangent == o.tangent; }

  std::string str() const { return "{" + primal.str() + ", " + tangent.str() + "e}"; }
};

inline bool is_zero(const Jet& j) { return j.primal.is_zero() && j.tangent.is_zero(); }

// Scalar trait hooks used by the generic geometry code. A scalar type needs
// ring operations, division, is_zero, is_pivot (safe to divide a projective
// vector by), and an embedding of Rat.
inline bool is_pivot(const Rat& r) { return !r.is_zero(); }
inline bool is_pivot(const Jet& j) { return !j.primal.is_zero(); }

template <class F>
F from_rat(const Rat& r);

template <>
inline Rat from_rat<Rat>(const Rat& r) { return r; }
template <>
inline Jet from_rat<Jet>(const Rat& r) { return Jet(r); }

/** A point of P^1: either a finite scalar or the point at infinity. */
template <class F>
struct Ext {
  bool inf = false;
  F val{};

  Ext() = default;
  Ext(F v) : val(std::move(v)) {}  // NOLINT
  static Ext infinity() {
    Ext e;
    e.inf = true;
    return e;
  }
  bool is_inf() const { return inf; }
  const F& finite() const {
    if (inf) fail(Errc::internal, "finite() on infinity");
    return val;
  }
  bool operator==(const Ext& o) const {
    if (inf || o.inf) return inf == o.inf;
    return val == o.val;
  }
};

using ExtendedScalar = Ext<Rat>;

template <class F, class G, class Fn>
Ext<G> map_ext(const Ext<F>& e, Fn&& fn) {
  if (e.is_inf()) return Ext<G>::infinity();
  return Ext<G>(fn(e.finite()));
}

template <class F>
Ext<F> ext_from_rat(const Ext<Rat>& e) {
  return map_ext<Rat, F>(e, [](const Rat& r) { return from_rat<F>(r); });
}

}  // namespace kap
