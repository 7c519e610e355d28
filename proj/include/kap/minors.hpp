#pragma once

#include <string>
#include <vector>

#include "kap/multipoint.hpp"

namespace kap {

/**
 * Index record naming one 2x2 minor: columns m and r of the 2x(i+1) matrix
 * built from factors i < j. Column labels run over b, c, 1, ..., i-1.
 */
struct MinorIndex {
  int i, j;
  Label m, r;
  auto operator<=>(const MinorIndex&) const = default;
  std::string str() const {
    return "minor(i=" + std::to_string(i) + ", j=" + std::to_string(j) + ", m=" + m.str() +
           ", r=" + r.str() + ")";
  }
};

struct MinorValue {
  MinorIndex index;
  Rat value;
};

/// All generators of the defining ideal for P^1 x ... x P^n, enumerated in
/// lexicographic order of (i, j, m, r).
std::vector<MinorIndex> generators(int n);

/// Number of generators, by the closed-form count; cross-checked in tests
/// against direct enumeration.
long generator_count(int n);

/// x_m^(i) (x_m^(j) - x_i^(j)) x_r^(j)  -  x_r^(i) (x_r^(j) - x_i^(j)) x_m^(j)
Rat evaluate_minor(const MinorIndex& ix, const MultiPoint& p);

/// Values of all generators in enumeration order. The parallel kernel and
/// the serial reference must agree entry for entry.
std::vector<Rat> evaluate_all_serial(const std::vector<MinorIndex>& gens, const MultiPoint& p);
std::vector<Rat> evaluate_all(const std::vector<MinorIndex>& gens, const MultiPoint& p);

struct MembershipReport {
  std::vector<MinorValue> violations;  // generators with nonzero value, in order
  bool member() const { return violations.empty(); }
};

MembershipReport is_member(const MultiPoint& p);

/// Expanded trilinear polynomial of a minor with monomials in lexicographic
/// order by (factor, label) variable sequences, e.g.
/// "x[1][b]*x[2][b]*x[2][c] - ...".
std::string minor_polynomial_text(const MinorIndex& ix);

}  // namespace kap
