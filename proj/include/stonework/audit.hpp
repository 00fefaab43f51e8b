#pragma once

#include "stonework/kernel.hpp"
#include "stonework/report.hpp"
#include "stonework/rng.hpp"
#include "stonework/tower.hpp"

namespace stonework {

/// Exhaustive law checks for the enumerated group action on subsets of
/// {1..depth}: self-inverse, commuting toggles, transitive orbit of the
/// empty set, freeness.
std::vector<Check> audit_core(int depth);

/// Decidability checks of the space predicates: index window examples,
/// feasibility and admissibility audits, coordinate projection.
std::vector<Check> audit_space(const FeasibleSpace& space, int audits,
                               int feas_bound, int admis_top, Rng rng);

/// Symbolic images against pointwise ground truth: `samples` random
/// (toggle index, basic set, point) triples, plus involution and
/// group-action laws.  Reports how often the guarded image branch fired.
struct ImageAuditResult {
  std::vector<Check> checks;
  long guarded_hits = 0;
  long samples = 0;
};
ImageAuditResult audit_images(const FeasibleSpace& space, long samples, Rng rng);

/// Invariant-set probe on generated expressions: random Boolean expressions
/// over basic sets are classified; with the full generator list no
/// nontrivial invariant set may appear.
std::vector<Check> audit_ergodicity(const FeasibleSpace& space, int exprs,
                                    int depth, Rng rng);

/// The tower guarantees, checked pointwise over the 2^n window: involutive
/// nontrivial maps, commutation, tree refinement and partition, the zero
/// spine, address translation under transport, reachability of the
/// enumerated points, level preservation, and orbit freeness.
std::vector<Check> audit_tower(const InvolutionTower& t);

/// Single-generator reparametrization: successor legs partition the window
/// off the top node, the orbit of the empty set follows the canonical
/// enumeration, forward and backward invert each other.
std::vector<Check> audit_zaction(const ZActionMap& z);

/// Algebra laws on random kernels over the window: associativity, adjoint
/// laws, unit, the compression identity suite, truncation monotonicity,
/// vanishing, conjugation relabelling.  tol = 0 means exact scalars.
template <class S>
std::vector<Check> audit_groupoid_laws(OrbitWindow win, int matrices, double tol,
                                       Rng rng);

/// Random diagonal-phase times window-permutation unitaries pushed through
/// the normalizer factorization; residuals must stay under tol.
std::vector<Check> audit_normalizer(OrbitWindow win, int samples, double tol,
                                    Rng rng);

/// Boolean saturation of the first `stages` half-spaces under the dyadic
/// subgroup chain: atoms partition the window, stages refine, each stage is
/// invariant under its subgroup and contains its generators, and the stage
/// algebra dimensions match the exact span ranks.
std::vector<Check> audit_saturation(std::shared_ptr<const FeasibleSpace> space,
                                    int stages, int window_depth);

/// Random exact kernel with small rational entries.
Kernel<GaussRat> random_gauss_kernel(OrbitWindow win, Rng& rng);
/// Random float kernel with unit-disc entries.
Kernel<std::complex<double>> random_float_kernel(OrbitWindow win, Rng& rng);

}  // namespace stonework
