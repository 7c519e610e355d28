#include "kap/polyq.hpp"

namespace kap {

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Rat& Poly::coeff(int k) const {
  static const Rat zero(0);
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[k];
}

Poly Poly::operator-() const {
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return Poly(std::move(r));
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(r));
}

Poly Poly::operator*(const Rat& s) const {
  std::vector<Rat> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
  return Poly(std::move(r));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  KAP_CHECK(!b.is_zero(), "polynomial division by zero");
  std::vector<Rat> rem = a.c_;
  int db = b.degree();
  const Rat& lead = b.c_.back();
  std::vector<Rat> quot;
  if (static_cast<int>(rem.size()) - 1 >= db)
    quot.assign(rem.size() - db, Rat(0));
  for (int d = static_cast<int>(rem.size()) - 1; d >= db; --d) {
    if (rem[d].is_zero()) continue;
    Rat f = rem[d] / lead;
    quot[d - db] = f;
    for (int j = 0; j <= db; ++j) rem[d - db + j] -= f * b.c_[j];
  }
  q = Poly(std::move(quot));
  r = Poly(std::move(rem));
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * a.c_.back().inverse();  // monic
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rat> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return Poly(std::move(r));
}

int Poly::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return static_cast<int>(i);
  return -1;
}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  KAP_CHECK(!den_.is_zero(), "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(Rat(1));
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    Poly q, r;
    Poly::divmod(num_, g, q, r);
    num_ = q;
    Poly::divmod(den_, g, q, r);
    den_ = q;
  }
  Rat lead = den_.coeffs().back();
  if (!lead.is_one()) {
    Rat inv = lead.inverse();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

RatFun RatFun::operator-() const {
  RatFun r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RatFun RatFun::operator+(const RatFun& o) const {
  return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const { return *this + (-o); }

RatFun RatFun::operator*(const RatFun& o) const {
  return RatFun(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::operator/(const RatFun& o) const {
  if (o.is_zero()) fail(Errc::division_by_zero, "rational function division by zero");
  return RatFun(num_ * o.den_, den_ * o.num_);
}

int RatFun::valuation0() const {
  KAP_CHECK(!is_zero(), "valuation of zero function");
  return num_.valuation() - den_.valuation();
}

Rat RatFun::value0() const {
  KAP_CHECK(regular0(), "value at t=0 of a function with a pole there");
  return num_.eval0() / den_.eval0();
}

Rat RatFun::derivative0() const {
  KAP_CHECK(regular0(), "derivative at t=0 of a function with a pole there");
  Rat n0 = num_.eval0(), d0 = den_.eval0();
  Rat n1 = num_.derivative().eval0(), d1 = den_.derivative().eval0();
  return (n1 * d0 - n0 * d1) / (d0 * d0);
}

}  // namespace kap
