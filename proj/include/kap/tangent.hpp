#pragma once

#include <map>
#include <optional>

#include "kap/curve.hpp"
#include "kap/linalg.hpp"
#include "kap/minors.hpp"

namespace kap {

/** Per factor, the label of the leftmost nonzero coordinate (the pinned chart variable). */
struct ChartIndex {
  std::vector<Label> k;  // k[i-1] for factor i
  Label of(int factor) const { return k[static_cast<size_t>(factor) - 1]; }
};

ChartIndex chart(const MultiPoint& p);

/// Enumeration of the free ambient tangent variables (factor-major, then
/// S-order, chart variables excluded); dimension n(n+1)/2.
struct VarIndex {
  std::vector<std::pair<int, Label>> vars;
  std::map<std::pair<int, int>, int> pos;  // (factor, label code) -> column

  static VarIndex make(const ChartIndex& ci);
  int columns() const { return static_cast<int>(vars.size()); }
  int column(int factor, Label l) const;
};

/**
 * Linear functional on the ambient tangent chart, finitely supported on
 * variables x[i][j] with j != chart(i).
 */
class LinearForm {
 public:
  void add(int factor, Label l, const Rat& v);
  bool is_zero() const { return c_.empty(); }
  const std::map<std::pair<int, int>, Rat>& terms() const { return c_; }
  std::optional<std::pair<int, Label>> leading() const;  // largest variable present
  void normalize_leading();                              // scale leading coefficient to 1
  std::vector<Rat> dense(const VarIndex& vi) const;
  Rat apply_tangent(const JetMultiPoint& jet) const;
  Rat apply(const std::vector<Rat>& dense_vector, const VarIndex& vi) const;

 private:
  std::map<std::pair<int, int>, Rat> c_;  // (factor, label code) -> coefficient
};

/// Degree-1 part of a minor at a point of the variety, in the point's chart
/// (chart variables eliminated). Throws NotOnVariety if the constant term of
/// the expansion is nonzero.
LinearForm linearize_minor(const MinorIndex& ix, const MultiPoint& p, const ChartIndex& ci);

std::vector<LinearForm> linearize_all_serial(const std::vector<MinorIndex>& gens,
                                             const MultiPoint& p, const ChartIndex& ci);
std::vector<LinearForm> linearize_all(const std::vector<MinorIndex>& gens, const MultiPoint& p,
                                      const ChartIndex& ci);

/** Sub-branch hanging off the spine of the a- or k-branch. */
struct SubBranch {
  int attach_vertex;
  int distance;  // edges from v_n to the attachment vertex; 1 = nonzero sub-branch
  std::vector<Label> leaves;
  Label min() const { return leaves.front(); }
  bool nonzero() const { return distance == 1; }
};

struct SideBranch {
  std::vector<Label> leaves;  // sorted, includes the endpoint label (a or k)
  std::vector<SubBranch> subs;
  int leaf_count() const { return static_cast<int>(leaves.size()); }
};

struct TBranch {
  std::vector<Label> leaves;  // sorted
  Label min() const { return leaves.front(); }
};

/**
 * Classification of the branches of the dual tree at the vertex carrying the
 * top marked point: the a-branch and k-branch with their sub-branch
 * structure, the remaining t-branches, and the minima m0/m1 of the nonzero
 * sub-branches. `exceptional` marks the trivalent two-node configuration.
 */
struct BranchProfile {
  int v;
  Label k;
  SideBranch a_branch, k_branch;
  std::vector<TBranch> t_branches;  // sorted by min
  std::optional<Label> m0, m1;
  bool exceptional;
};

BranchProfile branch_profile(const MarkedCurve& c);

enum class TangentRule {
  two_away_a,
  equal_sub_a,
  compare_subs_a,
  two_away_k,
  equal_sub_k,
  compare_subs_k,
  t_branch,
  t_vs_t,
  t_vs_a,
  t_vs_k,
  extra,
};

const char* tangent_rule_name(TangentRule r);

struct Provenance {
  TangentRule rule;
  MinorIndex minor;
  Label target;  // the variable this equation eliminates
};

struct TangentSystem {
  int level;
  std::vector<LinearForm> equations;
  std::vector<Provenance> provenance;
};

/**
 * The per-level constructive tangent system: level-1 equations selected by
 * the branch analysis at the top marked point (level-2 plus the extra
 * equation x[i][m] = 0 in the exceptional trivalent case), each one a
 * normalized linearized minor. Independence is asserted by exact rank.
 */
TangentSystem constructive_system(const MarkedCurve& restricted, int level);

int jacobian_nullity(const MultiPoint& p);
std::vector<std::vector<Rat>> jacobian_kernel(const MultiPoint& p);

/// Stacks constructive systems for levels 2..n: exactly C(n,2) equations of
/// full rank whose kernel equals the Jacobian kernel.
bool kernel_equals_constructive(const MarkedCurve& c);

struct WitnessReport {
  bool moving_k_side;  // true when m0 > m1: the k-side component moves
  Label m;
  int i;
  Rat witness_value;          // tangent coordinate x[i][m] of the smoothing jet
  bool lower_annihilated;     // jet kills every linearized minor below the top level
  JetMultiPoint jet;
};

/// Builds the node-smoothing family prescribed for the exceptional case and
/// checks that its jet kills all lower-level linearized minors while having
/// a nonzero x[i][m] coordinate.
WitnessReport smoothing_witness(const MarkedCurve& c);

}  // namespace kap
