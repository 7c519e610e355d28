#include "kap/tangent.hpp"

#include <algorithm>

#include "kap/smoothing.hpp"

namespace kap {

ChartIndex chart(const MultiPoint& p) {
  ChartIndex ci;
  for (int i = 1; i <= p.n(); ++i) {
    const auto& f = p.factors[static_cast<size_t>(i) - 1];
    int piv = -1;
    for (size_t k = 0; k < f.size(); ++k)
      if (!f[k].is_zero()) {
        piv = static_cast<int>(k);
        break;
      }
    KAP_CHECK(piv >= 0, "zero factor");
    ci.k.push_back(Label::from_code(piv + 1));
  }
  return ci;
}

VarIndex VarIndex::make(const ChartIndex& ci) {
  VarIndex vi;
  for (int f = 1; f <= static_cast<int>(ci.k.size()); ++f)
    for (Label l : factor_labels(f)) {
      if (l == ci.of(f)) continue;
      vi.pos[{f, l.code()}] = static_cast<int>(vi.vars.size());
      vi.vars.emplace_back(f, l);
    }
  return vi;
}

int VarIndex::column(int factor, Label l) const {
  auto it = pos.find({factor, l.code()});
  KAP_CHECK(it != pos.end(), "variable not in chart");
  return it->second;
}

void LinearForm::add(int factor, Label l, const Rat& v) {
  if (v.is_zero()) return;
  auto key = std::make_pair(factor, l.code());
  auto [it, fresh] = c_.emplace(key, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
  }
}

std::optional<std::pair<int, Label>> LinearForm::leading() const {
  if (c_.empty()) return std::nullopt;
  auto it = std::prev(c_.end());
  return std::make_pair(it->first.first, Label::from_code(it->first.second));
}

void LinearForm::normalize_leading() {
  if (c_.empty()) return;
  Rat inv = std::prev(c_.end())->second.inverse();
  for (auto& [key, v] : c_) v *= inv;
}

std::vector<Rat> LinearForm::dense(const VarIndex& vi) const {
  std::vector<Rat> out(static_cast<size_t>(vi.columns()), Rat(0));
  for (const auto& [key, v] : c_)
    out[static_cast<size_t>(vi.column(key.first, Label::from_code(key.second)))] = v;
  return out;
}

Rat LinearForm::apply_tangent(const JetMultiPoint& jet) const {
  Rat acc(0);
  for (const auto& [key, v] : c_) acc += v * jet.tangent(key.first, Label::from_code(key.second));
  return acc;
}

Rat LinearForm::apply(const std::vector<Rat>& vec, const VarIndex& vi) const {
  Rat acc(0);
  for (const auto& [key, v] : c_)
    acc += v * vec[static_cast<size_t>(vi.column(key.first, Label::from_code(key.second)))];
  return acc;
}

LinearForm linearize_minor(const MinorIndex& ix, const MultiPoint& p, const ChartIndex& ci) {
  Rat constant = evaluate_minor(ix, p);
  if (!constant.is_zero())
    fail(Errc::not_on_variety, ix.str() + " has nonzero value " + constant.str());
  // F = A(B-E)D - C(D-E)B with A=x_m^(i), C=x_r^(i), B=x_m^(j), D=x_r^(j), E=x_i^(j).
  const Rat& A = p.at(ix.i, ix.m);
  const Rat& C = p.at(ix.i, ix.r);
  const Rat& B = p.at(ix.j, ix.m);
  const Rat& D = p.at(ix.j, ix.r);
  const Rat& E = p.at(ix.j, Label::integer(ix.i));
  LinearForm form;
  auto add = [&](int factor, Label l, const Rat& coeff) {
    if (l == ci.of(factor)) return;  // chart variable is pinned to 0
    form.add(factor, l, coeff);
  };
  add(ix.i, ix.m, D * (B - E));
  add(ix.i, ix.r, B * (E - D));
  add(ix.j, ix.m, A * D - C * (D - E));
  add(ix.j, ix.r, A * (B - E) - C * B);
  add(ix.j, Label::integer(ix.i), C * B - A * D);
  return form;
}

std::vector<LinearForm> linearize_all_serial(const std::vector<MinorIndex>& gens,
                                             const MultiPoint& p, const ChartIndex& ci) {
  std::vector<LinearForm> out(gens.size());
  for (size_t k = 0; k < gens.size(); ++k) out[k] = linearize_minor(gens[k], p, ci);
  return out;
}

std::vector<LinearForm> linearize_all(const std::vector<MinorIndex>& gens, const MultiPoint& p,
                                      const ChartIndex& ci) {
  std::vector<LinearForm> out(gens.size());
  bool off_variety = false;
#pragma omp parallel for schedule(static)
  for (long k = 0; k < static_cast<long>(gens.size()); ++k) {
    try {
      out[static_cast<size_t>(k)] = linearize_minor(gens[static_cast<size_t>(k)], p, ci);
    } catch (const Error&) {
#pragma omp atomic write
      off_variety = true;
    }
  }
  if (off_variety) fail(Errc::not_on_variety, "point violates a defining equation");
  return out;
}

BranchProfile branch_profile(const MarkedCurve& c) {
  int n = c.tree.top_label();
  KAP_CHECK(n >= 1, "branch_profile needs an integer marked point");
  int leaf_n = c.tree.leaf_vertex(Label::integer(n));
  int v = c.tree.neighbors(leaf_n)[0];

  BranchProfile prof;
  prof.v = v;

  struct RawBranch {
    int slot;
    std::vector<Label> leaves;
  };
  std::vector<RawBranch> branches;
  for (int w : c.tree.neighbors(v)) {
    if (w == leaf_n) continue;
    branches.push_back({w, c.tree.component_leaves(w, v)});
  }
  auto contains = [](const std::vector<Label>& ls, Label l) {
    return std::binary_search(ls.begin(), ls.end(), l);
  };
  int a_slot = -1;
  for (const auto& b : branches)
    if (contains(b.leaves, Label::a())) a_slot = b.slot;
  KAP_CHECK(a_slot >= 0, "no branch contains a");
  std::optional<Label> k;
  for (const auto& b : branches) {
    if (b.slot == a_slot) continue;
    if (!k || b.leaves.front() < *k) k = b.leaves.front();
  }
  KAP_CHECK(k.has_value(), "v_n has a single branch");
  prof.k = *k;

  auto side_branch = [&](int slot, Label endpoint) {
    SideBranch side;
    side.leaves = c.tree.component_leaves(slot, v);
    std::vector<int> path = c.tree.path(v, c.tree.leaf_vertex(endpoint));
    for (size_t d = 1; d + 1 < path.size(); ++d) {
      int x = path[d];
      for (int y : c.tree.neighbors(x)) {
        if (y == path[d - 1] || y == path[d + 1]) continue;
        side.subs.push_back(SubBranch{x, static_cast<int>(d), c.tree.component_leaves(y, x)});
      }
    }
    std::sort(side.subs.begin(), side.subs.end(), [](const SubBranch& p, const SubBranch& q) {
      return std::make_pair(p.distance, p.min()) < std::make_pair(q.distance, q.min());
    });
    return side;
  };
  prof.a_branch = side_branch(a_slot, Label::a());
  int k_slot = -1;
  for (const auto& b : branches)
    if (b.slot != a_slot && contains(b.leaves, *k)) k_slot = b.slot;
  prof.k_branch = side_branch(k_slot, *k);

  for (const auto& b : branches) {
    if (b.slot == a_slot || b.slot == k_slot) continue;
    prof.t_branches.push_back(TBranch{b.leaves});
  }
  std::sort(prof.t_branches.begin(), prof.t_branches.end(),
            [](const TBranch& p, const TBranch& q) { return p.min() < q.min(); });

  auto nonzero_min = [](const SideBranch& side) -> std::optional<Label> {
    std::optional<Label> best;
    for (const auto& s : side.subs)
      if (s.nonzero() && (!best || s.min() < *best)) best = s.min();
    return best;
  };
  prof.m0 = nonzero_min(prof.a_branch);
  prof.m1 = nonzero_min(prof.k_branch);
  KAP_CHECK(prof.m0.has_value() == (prof.a_branch.leaf_count() >= 2), "a-branch m0 mismatch");
  KAP_CHECK(prof.m1.has_value() == (prof.k_branch.leaf_count() >= 2), "k-branch m1 mismatch");
  prof.exceptional = prof.t_branches.empty() && prof.a_branch.leaf_count() >= 2 &&
                     prof.k_branch.leaf_count() >= 2;
  return prof;
}

const char* tangent_rule_name(TangentRule r) {
  switch (r) {
    case TangentRule::two_away_a: return "two-away-a";
    case TangentRule::equal_sub_a: return "equal-sub-a";
    case TangentRule::compare_subs_a: return "compare-subs-a";
    case TangentRule::two_away_k: return "two-away-k";
    case TangentRule::equal_sub_k: return "equal-sub-k";
    case TangentRule::compare_subs_k: return "compare-subs-k";
    case TangentRule::t_branch: return "t-branch";
    case TangentRule::t_vs_t: return "t-vs-t";
    case TangentRule::t_vs_a: return "t-vs-a";
    case TangentRule::t_vs_k: return "t-vs-k";
    case TangentRule::extra: return "extra";
  }
  return "?";
}

namespace {

/// Labels on sub-branches of `side` attached strictly closer to v than
/// `limit_distance`.
std::vector<Label> between_labels(const SideBranch& side, int limit_distance) {
  std::vector<Label> out;
  for (const auto& s : side.subs)
    if (s.distance < limit_distance)
      out.insert(out.end(), s.leaves.begin(), s.leaves.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TangentSystem constructive_system(const MarkedCurve& curve, int level) {
  KAP_CHECK(level >= 2 && curve.n() == level, "constructive_system needs the restricted curve");
  MultiPoint point = omega(curve);
  ChartIndex ci = chart(point);
  BranchProfile prof = branch_profile(curve);
  Label k = prof.k;
  if (!(ci.of(level) == k))
    fail(Errc::profile_mismatch, "chart of top factor disagrees with branch profile");

  TangentSystem sys;
  sys.level = level;
  auto emit = [&](TangentRule rule, MinorIndex ix, Label target) {
    LinearForm form = linearize_minor(ix, point, ci);
    if (form.is_zero())
      fail(Errc::profile_mismatch, "selected " + ix.str() + " linearizes to the zero form");
    form.normalize_leading();
    sys.equations.push_back(std::move(form));
    sys.provenance.push_back(Provenance{rule, ix, target});
  };
  auto sval = [&](int factor, Label l) -> const Rat& { return point.at(factor, l); };

  auto factor_of = [&](Label l) {
    if (!l.is_integer())
      fail(Errc::profile_mismatch, "selection wants factor index " + l.str());
    return l.integer_value();
  };
  // The first label below k found on a sub-branch strictly closer to v than
  // `limit`, scanning sub-branches by (distance, min) so the attachment is
  // as close to v as possible.
  auto blocker_below_k = [&](const SideBranch& side, int limit) -> std::optional<Label> {
    for (const auto& s2 : side.subs) {
      if (s2.distance >= limit) continue;
      for (Label q : s2.leaves)
        if (q < k) return q;
    }
    return std::nullopt;
  };

  // One equation per leaf u of the a-branch other than a and m0, per the
  // sub-branch case analysis; mirrored for the k-branch; then the t-branch
  // equalities and the cross-branch comparisons.
  auto side_equations = [&](const SideBranch& side, bool a_side) {
    if (side.leaf_count() < 2) return;
    Label mstar = a_side ? *prof.m0 : *prof.m1;
    for (const auto& sub : side.subs) {
      for (Label u : sub.leaves) {
        if (u == sub.min()) continue;
        // equality along one sub-branch
        if (a_side && u < k) {
          std::optional<Label> blocker = blocker_below_k(side, sub.distance);
          if (blocker)
            emit(TangentRule::equal_sub_a, MinorIndex{factor_of(k), level, u, *blocker}, u);
          else
            emit(TangentRule::equal_sub_a, MinorIndex{factor_of(k), level, sub.min(), u}, u);
        } else {
          // u above the chart label: pair with the least lower element of
          // the sub-branch that u separates from a (nonzero coordinate in
          // factor u).
          std::optional<Label> partner;
          for (Label q : sub.leaves) {
            if (!(q < u)) break;
            if (!sval(factor_of(u), q).is_zero()) {
              partner = q;
              break;
            }
          }
          if (!partner)
            fail(Errc::profile_mismatch, "no separated partner for " + u.str());
          emit(a_side ? TangentRule::equal_sub_a : TangentRule::equal_sub_k,
               MinorIndex{factor_of(u), level, *partner, k}, u);
        }
      }
      Label u = sub.min();
      if (sub.nonzero()) {
        if (u == mstar) continue;  // exempt variable of this side
        if (a_side && u < k && mstar < k)
          emit(TangentRule::compare_subs_a, MinorIndex{factor_of(k), level, mstar, u}, u);
        else
          emit(a_side ? TangentRule::compare_subs_a : TangentRule::compare_subs_k,
               MinorIndex{factor_of(std::max(u, mstar)), level, std::min(u, mstar), k}, u);
      } else {
        // minimum of a zero sub-branch vanishes
        std::vector<Label> btw = between_labels(side, sub.distance);
        KAP_CHECK(!btw.empty(), "zero sub-branch with empty spine below it");
        if (a_side && u < k) {
          std::optional<Label> small = blocker_below_k(side, sub.distance);
          if (small)
            emit(TangentRule::two_away_a, MinorIndex{factor_of(k), level, u, *small}, u);
          else
            emit(TangentRule::two_away_a, MinorIndex{factor_of(btw.front()), level, u, k}, u);
        } else {
          Label q = btw.front();
          if (u < q)
            emit(a_side ? TangentRule::two_away_a : TangentRule::two_away_k,
                 MinorIndex{factor_of(q), level, u, k}, u);
          else
            emit(a_side ? TangentRule::two_away_a : TangentRule::two_away_k,
                 MinorIndex{factor_of(u), level, q, k}, u);
        }
      }
    }
  };
  side_equations(prof.a_branch, true);
  side_equations(prof.k_branch, false);

  for (const auto& tb : prof.t_branches) {
    for (Label u : tb.leaves) {
      if (u == tb.min()) continue;
      std::optional<Label> partner;
      for (Label q : tb.leaves) {
        if (!(q < u)) break;
        if (!sval(factor_of(u), q).is_zero()) {
          partner = q;
          break;
        }
      }
      if (!partner) fail(Errc::profile_mismatch, "no separated partner on t-branch for " + u.str());
      emit(TangentRule::t_branch, MinorIndex{factor_of(u), level, *partner, k}, u);
    }
  }

  if (!prof.t_branches.empty()) {
    Label mr = prof.t_branches.back().min();
    for (size_t j = 0; j + 1 < prof.t_branches.size(); ++j) {
      Label mj = prof.t_branches[j].min();
      emit(TangentRule::t_vs_t, MinorIndex{factor_of(mr), level, mj, k}, mj);
    }
    if (prof.m0) {
      Label m0 = *prof.m0;
      emit(TangentRule::t_vs_a,
           MinorIndex{factor_of(std::max(m0, mr)), level, std::min(m0, mr), k}, m0);
    }
    if (prof.m1) {
      Label m1 = *prof.m1;
      emit(TangentRule::t_vs_k,
           MinorIndex{factor_of(std::max(m1, mr)), level, std::min(m1, mr), k}, m1);
    }
  } else if (prof.exceptional) {
    Label m = std::min(*prof.m0, *prof.m1);
    Label i = std::max(*prof.m0, *prof.m1);
    emit(TangentRule::extra, MinorIndex{factor_of(i), level, m, k}, m);
  }

  if (static_cast<int>(sys.equations.size()) != level - 1)
    fail(Errc::profile_mismatch, "expected " + std::to_string(level - 1) + " equations, got " +
                                     std::to_string(sys.equations.size()));
  // Independence, by exact rank.
  VarIndex vi = VarIndex::make(ci);
  std::vector<std::vector<Rat>> rows;
  for (const auto& f : sys.equations) rows.push_back(f.dense(vi));
  if (stacked_rank(rows, vi.columns()) != level - 1)
    fail(Errc::profile_mismatch, "constructive system is not independent");
  return sys;
}

int jacobian_nullity(const MultiPoint& p) {
  ChartIndex ci = chart(p);
  VarIndex vi = VarIndex::make(ci);
  std::vector<MinorIndex> gens = generators(p.n());
  std::vector<LinearForm> forms = linearize_all(gens, p, ci);
  std::vector<std::vector<Rat>> rows;
  for (const auto& f : forms)
    if (!f.is_zero()) rows.push_back(f.dense(vi));
  return vi.columns() - stacked_rank(rows, vi.columns());
}

std::vector<std::vector<Rat>> jacobian_kernel(const MultiPoint& p) {
  ChartIndex ci = chart(p);
  VarIndex vi = VarIndex::make(ci);
  std::vector<MinorIndex> gens = generators(p.n());
  std::vector<LinearForm> forms = linearize_all(gens, p, ci);
  QMatrix m(0, vi.columns());
  for (const auto& f : forms)
    if (!f.is_zero()) m.append_row(f.dense(vi));
  if (m.rows() == 0) m = QMatrix(1, vi.columns());  // zero row; kernel is everything
  return m.kernel();
}

bool kernel_equals_constructive(const MarkedCurve& c) {
  int n = c.n();
  KAP_CHECK(n >= 2, "kernel_equals_constructive needs n >= 2");
  MultiPoint point = omega(c);
  ChartIndex ci = chart(point);
  VarIndex vi = VarIndex::make(ci);

  std::vector<LinearForm> stacked;
  for (int level = 2; level <= n; ++level) {
    MarkedCurve restricted = restrict_curve(c, level);
    TangentSystem sys = constructive_system(restricted, level);
    for (auto& f : sys.equations) stacked.push_back(std::move(f));
  }
  long expect = static_cast<long>(n) * (n - 1) / 2;
  if (static_cast<long>(stacked.size()) != expect) return false;

  std::vector<std::vector<Rat>> rows;
  for (const auto& f : stacked) rows.push_back(f.dense(vi));
  if (stacked_rank(rows, vi.columns()) != static_cast<int>(expect)) return false;

  std::vector<std::vector<Rat>> jk = jacobian_kernel(point);
  if (static_cast<int>(jk.size()) != n) return false;
  for (const auto& v : jk)
    for (const auto& f : stacked)
      if (!f.apply(v, vi).is_zero()) return false;
  return true;
}

WitnessReport smoothing_witness(const MarkedCurve& c) {
  BranchProfile prof = branch_profile(c);
  if (!prof.exceptional) fail(Errc::not_exceptional, "curve is not in the exceptional configuration");
  int n = c.n();
  Label m = std::min(*prof.m0, *prof.m1);
  Label ilab = std::max(*prof.m0, *prof.m1);
  bool moving_k_side = *prof.m0 > *prof.m1;

  MarkedCurve cprime = forget_point(c, Label::integer(n));
  // The node created by forgetting n: the unique edge separating the
  // a-branch leaves from the k-branch leaves.
  std::vector<Label> a_leaves = prof.a_branch.leaves;
  std::optional<Edge> node;
  for (const Edge& e : cprime.tree.internal_edges()) {
    std::vector<Label> side = cprime.tree.component_leaves(e.u, e.v);
    if (side == a_leaves || cprime.tree.component_leaves(e.v, e.u) == a_leaves) node = e;
  }
  KAP_CHECK(node.has_value(), "no node separating the two branches");
  std::vector<Label> u_side = cprime.tree.component_leaves(node->u, node->v);
  bool u_is_a_side = (u_side == a_leaves);
  int a_vertex = u_is_a_side ? node->u : node->v;
  int k_vertex = u_is_a_side ? node->v : node->u;

  int fixed = moving_k_side ? a_vertex : k_vertex;
  int moving = moving_k_side ? k_vertex : a_vertex;
  JetMultiPoint jet = smooth_node(cprime, fixed, moving);

  WitnessReport rep{moving_k_side, m, ilab.integer_value(), jet.tangent(ilab.integer_value(), m),
                    true, jet};
  MultiPoint prefix = omega(cprime);
  ChartIndex ci = chart(prefix);
  for (const MinorIndex& ix : generators(n - 1)) {
    LinearForm f = linearize_minor(ix, prefix, ci);
    if (!f.apply_tangent(jet).is_zero()) rep.lower_annihilated = false;
  }
  return rep;
}

}  // namespace kap
