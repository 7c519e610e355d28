#include "kap/minors.hpp"

#include <algorithm>

namespace kap {

std::vector<MinorIndex> generators(int n) {
  KAP_CHECK(n >= 1, "generators needs n >= 1");
  std::vector<MinorIndex> out;
  for (int i = 1; i < n; ++i) {
    std::vector<Label> cols = factor_labels(i);
    for (int j = i + 1; j <= n; ++j)
      for (size_t m = 0; m < cols.size(); ++m)
        for (size_t r = m + 1; r < cols.size(); ++r)
          out.push_back(MinorIndex{i, j, cols[m], cols[r]});
  }
  return out;
}

long generator_count(int n) {
  long total = 0;
  for (int i = 1; i < n; ++i) total += static_cast<long>(i + 1) * i / 2 * (n - i);
  return total;
}

Rat evaluate_minor(const MinorIndex& ix, const MultiPoint& p) {
  KAP_CHECK(p.n() >= ix.j, "point has too few factors for this minor");
  const Rat& xmi = p.at(ix.i, ix.m);
  const Rat& xri = p.at(ix.i, ix.r);
  const Rat& xmj = p.at(ix.j, ix.m);
  const Rat& xrj = p.at(ix.j, ix.r);
  const Rat& xij = p.at(ix.j, Label::integer(ix.i));
  return xmi * (xmj - xij) * xrj - xri * (xrj - xij) * xmj;
}

std::vector<Rat> evaluate_all_serial(const std::vector<MinorIndex>& gens, const MultiPoint& p) {
  std::vector<Rat> out(gens.size());
  for (size_t k = 0; k < gens.size(); ++k) out[k] = evaluate_minor(gens[k], p);
  return out;
}

std::vector<Rat> evaluate_all(const std::vector<MinorIndex>& gens, const MultiPoint& p) {
  std::vector<Rat> out(gens.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < static_cast<long>(gens.size()); ++k)
    out[static_cast<size_t>(k)] = evaluate_minor(gens[static_cast<size_t>(k)], p);
  return out;
}

MembershipReport is_member(const MultiPoint& p) {
  std::vector<MinorIndex> gens = generators(p.n());
  std::vector<Rat> vals = evaluate_all(gens, p);
  MembershipReport rep;
  for (size_t k = 0; k < gens.size(); ++k)
    if (!vals[k].is_zero()) rep.violations.push_back(MinorValue{gens[k], vals[k]});
  return rep;
}

namespace {

struct Var {
  int factor;
  Label label;
  auto operator<=>(const Var&) const = default;
  std::string str() const {
    return "x[" + std::to_string(factor) + "][" + label.str() + "]";
  }
};

using Monomial = std::vector<Var>;  // sorted

}  // namespace

std::string minor_polynomial_text(const MinorIndex& ix) {
  Var A{ix.i, ix.m}, C{ix.i, ix.r};
  Var B{ix.j, ix.m}, D{ix.j, ix.r}, E{ix.j, Label::integer(ix.i)};
  // A(B-E)D - C(D-E)B = ABD - AED - CDB + CEB
  std::vector<std::pair<Monomial, int>> terms = {
      {{A, B, D}, +1}, {{A, E, D}, -1}, {{C, D, B}, -1}, {{C, E, B}, +1}};
  for (auto& [mono, sign] : terms) std::sort(mono.begin(), mono.end());
  std::sort(terms.begin(), terms.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::string out;
  for (size_t k = 0; k < terms.size(); ++k) {
    if (k == 0) {
      if (terms[k].second < 0) out += "-";
    } else {
      out += terms[k].second < 0 ? " - " : " + ";
    }
    const Monomial& mono = terms[k].first;
    for (size_t v = 0; v < mono.size(); ++v) {
      if (v) out += "*";
      out += mono[v].str();
    }
  }
  out += " = 0";
  return out;
}

}  // namespace kap
