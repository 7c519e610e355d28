#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "kap/error.hpp"

namespace kap {

/**
 * Arbitrary-precision rational number, always stored reduced with positive
 * denominator. Thin value wrapper around GMP's mpq_class so that generic
 * code sees plain value semantics (no expression templates).
 */
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit, mirrors integer literals
  Rat(long num, long den) {
    if (den == 0) fail(Errc::division_by_zero, "rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  const mpq_class& raw() const { return v_; }

  Rat operator-() const { return Rat(mpq_class(-v_), NoCanon{}); }
  Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_), NoCanon{}); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_), NoCanon{}); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_), NoCanon{}); }
  Rat operator/(const Rat& o) const {
    if (o.is_zero()) fail(Errc::division_by_zero, "rational division by zero");
    return Rat(mpq_class(v_ / o.v_), NoCanon{});
  }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  bool operator==(const Rat& o) const { return mpq_cmp(v_.get_mpq_t(), o.v_.get_mpq_t()) == 0; }
  std::strong_ordering operator<=>(const Rat& o) const {
    int c = mpq_cmp(v_.get_mpq_t(), o.v_.get_mpq_t());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return *this == Rat(1); }
  Rat inverse() const {
    if (is_zero()) fail(Errc::division_by_zero, "inverse of zero");
    return Rat(1) / *this;
  }

  /// Serialized as "p/q", or just "p" when the denominator is 1.
  std::string str() const;
  static std::optional<Rat> parse(std::string_view s);

 private:
  struct NoCanon {};
  Rat(mpq_class v, NoCanon) : v_(std::move(v)) {}
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

inline bool is_zero(const Rat& r) { return r.is_zero(); }

}  // namespace kap
