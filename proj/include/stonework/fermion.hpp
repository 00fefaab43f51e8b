#pragma once

#include <memory>

#include "stonework/clopen.hpp"
#include "stonework/kernel.hpp"
#include "stonework/report.hpp"

namespace stonework {

/// Stage n of the flip tower: on the 2^n basis vectors indexed by subsets
/// of {1..n}, e_j projects onto the vectors whose j-th index bit is 0 and
/// u_j permutes by toggling that bit.  All matrices are exact 0/1; dense
/// forms are materialized on demand.
struct TowerStage {
  int n;
  std::vector<uint32_t> flip;  // flip[j-1] = bit mask toggled by u_j

  explicit TowerStage(int n_);

  uint32_t dim() const { return 1u << n; }
  /// Diagonal of e_j.
  std::vector<int> e_diag(int j) const;
  /// Permutation of u_j.
  std::vector<uint32_t> u_perm(int j) const;

  /// Dense integer matrices, dim x dim row-major.
  std::vector<long long> e_dense(int j) const;
  std::vector<long long> u_dense(int j) const;
};

TowerStage stage(int n);

/// The defining relations, as exact matrix identities on the dense forms:
/// u_n e_n u_n = 1 - e_n, u_n e_m u_n = e_m for m != n, the u's commute and
/// square to the identity, and everything in sight is self-adjoint.
bool relations_check(const TowerStage& st);

/// Ranks of all 2^n signed products prod_j e_j or (1 - e_j).  Each must be
/// a rank-1 projection, nonzero and proper.
struct IndependenceReport {
  std::vector<uint64_t> ranks;
  bool all_rank_one = false;
};
IndependenceReport independence_check(const TowerStage& st);

/// Dimension of the algebra generated by {1, e_j, u_j}, computed by closing
/// the generating words under products and ranking their span.  For the
/// full matrix algebra this is 4^n.  Exact mode only, n <= 4.
struct SpanReport {
  uint64_t dimension = 0;
  uint64_t expected = 0;
  bool full_matrix_algebra = false;
};
SpanReport full_matrix_check(const TowerStage& st);

/// Stagewise saturation of a Boolean algebra of clopen sets: stage p is
/// generated by the images of the previous atoms and the p-th generator
/// under the p-th subgroup.  Atoms are the nonempty sign-pattern
/// intersections, with emptiness judged on the witness window.
struct SaturationStage {
  std::vector<ClopenPtr> atoms;
  long dropped_empty = 0;  // sign patterns empty at the window depth
};
struct BooleanSaturation {
  std::shared_ptr<const FeasibleSpace> space;
  std::vector<ClopenPtr> gens;
  std::vector<std::vector<DyadicElem>> subgroups;
  int window_depth = 0;
  std::vector<SaturationStage> stages;
};
BooleanSaturation saturate_boolean(std::shared_ptr<const FeasibleSpace> space,
                                   std::vector<ClopenPtr> gens,
                                   std::vector<std::vector<DyadicElem>> subgroups,
                                   int window_depth);

/// Finite-dimensional piece spanned by (atom indicator) x (subgroup
/// translation) at stage p, represented on the witness window and ranked
/// exactly.  With the subgroup permuting the atoms freely the dimension is
/// atoms times group order; the span rank is computed either way.
struct FinDimAlgebra {
  int stage = 0;
  uint64_t atom_count = 0;
  uint64_t group_order = 0;
  uint64_t dimension = 0;
  bool free_on_atoms = false;
};
FinDimAlgebra findim_algebra(const BooleanSaturation& sat, int p);

/// Approximate finite-dimensionality audit across stages up to max_n
/// (<= 6): stage inclusions as exact matrix identities, relations
/// everywhere, span dimension where exact mode is feasible, and the
/// truncation scheme driving window residuals to zero.  Claims about the
/// infinite limit are reported as open evidence.
std::vector<Check> afd_audit(int max_n, uint64_t seed);

}  // namespace stonework
