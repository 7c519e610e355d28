#pragma once

#include <vector>

#include "kap/scalar.hpp"

namespace kap {

/** Dense univariate polynomial over Q, trailing zeros trimmed. */
class Poly {
 public:
  Poly() = default;
  Poly(Rat c) { c_.push_back(std::move(c)); trim(); }  // NOLINT
  explicit Poly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }
  static Poly t() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const Rat& coeff(int k) const;
  const std::vector<Rat>& coeffs() const { return c_; }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& r) const;

  /// Euclidean division; divisor must be nonzero.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  static Poly gcd(Poly a, Poly b);  // monic gcd; gcd(0,0) = 0

  Poly derivative() const;
  Rat eval0() const { return c_.empty() ? Rat(0) : c_[0]; }
  /// Index of lowest nonzero coefficient; -1 for the zero polynomial.
  int valuation() const;

  bool operator==(const Poly& o) const { return c_ == o.c_; }

 private:
  void trim();
  std::vector<Rat> c_;
};

/**
 * Rational function in one variable t over Q, kept reduced with monic
 * denominator. Field of definition for one-parameter curve families; the
 * first-order behavior at t=0 is read off at the end as a Jet.
 */
class RatFun {
 public:
  RatFun() : num_(), den_(Rat(1)) {}
  RatFun(Rat c) : num_(std::move(c)), den_(Rat(1)) {}  // NOLINT
  RatFun(Poly num, Poly den);
  static RatFun t() { return RatFun(Poly::t(), Poly(Rat(1))); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFun operator-() const;
  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;
  bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }

  /// Order of vanishing at t=0 (negative for a pole). Only for nonzero values.
  int valuation0() const;
  bool regular0() const { return den_.valuation() == 0; }
  Rat value0() const;
  Rat derivative0() const;
  Jet jet0() const { return Jet(value0(), derivative0()); }

 private:
  Poly num_, den_;
};

inline bool is_zero(const RatFun& f) { return f.is_zero(); }
inline bool is_pivot(const RatFun& f) { return !f.is_zero(); }
template <>
inline RatFun from_rat<RatFun>(const Rat& r) { return RatFun(r); }

}  // namespace kap
