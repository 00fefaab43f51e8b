#pragma once

#include "stonework/piecewise.hpp"

namespace stonework {

/// Tower of commuting piecewise involutions over the canonical dense orbit.
/// Level p splits the space into 2^p clopen nodes indexed by binary words;
/// h_p exchanges the two halves of every level-(p-1) node, and the node tree
/// refines as p grows.  The enumerated points s_0, s_1, ... are threaded
/// through the nodes so that the whole enumeration becomes reachable from
/// s_0 by words in the h's.
class InvolutionTower {
 public:
  int n() const { return n_; }
  int depth() const { return depth_; }
  int scan_cap() const { return scan_cap_; }
  const std::shared_ptr<const FeasibleSpace>& space() const { return space_; }
  const std::vector<PiecewiseMap>& maps() const { return h_; }
  const PiecewiseMap& map(int j) const { return h_.at(static_cast<size_t>(j) - 1); }
  const std::vector<ClopenPtr>& neighborhoods() const { return nbhd_; }

  /// Node of the level-p partition addressed by the word bits
  /// (bit j-1 of `word` is the j-th letter), p in [1, n].
  const ClopenPtr& node(int p, uint32_t word) const;

  /// Apply h_1^{a_1} ... h_p^{a_p} where a_j = bit j-1 of word.
  FinSet transport(int p, uint32_t word, const FinSet& x) const;

 private:
  friend InvolutionTower build_tower(std::shared_ptr<const FeasibleSpace>,
                                     int, const std::vector<ClopenPtr>&, int, int);
  std::shared_ptr<const FeasibleSpace> space_;
  int n_ = 0, depth_ = 0, scan_cap_ = 0;
  std::vector<PiecewiseMap> h_;
  std::vector<ClopenPtr> nbhd_;
  std::vector<std::vector<ClopenPtr>> nodes_;  // nodes_[p-1] has 2^p entries
};

/// Default shrinking neighbourhood chain: D_p cuts away the half-space of
/// the least element of each of the first p enumerated sets, so s_0 stays
/// inside every D_p while s_p falls out of D_p.
std::vector<ClopenPtr> default_neighborhoods(int n);

/// Build the tower to depth n.  `nbhd` must be decreasing with the empty
/// set inside and the p-th enumerated point outside D_p (checked on the
/// witness window).  `depth` bounds witness searches, `scan_cap` bounds
/// piece scans during map application.
InvolutionTower build_tower(std::shared_ptr<const FeasibleSpace> space, int n,
                            const std::vector<ClopenPtr>& nbhd, int depth,
                            int scan_cap = 4096);

/// Action of a group element through the tower: apply h_j for each j in the
/// support.  Requires the support to fit under n.
FinSet dyadic_action(const InvolutionTower& t, const DyadicElem& g, const FinSet& x);

/// Single transformation generating the same orbits as the whole tower:
/// forward regions peel off the nodes (0), (1 0), (1 1 0), ... and move by
/// the corresponding prefix word of h's; backward regions mirror them.
/// Together the forward pieces enumerate the dense orbit in canonical
/// order starting at the empty set.
class ZActionMap {
 public:
  struct Leg {
    ClopenPtr region;
    int len;  // apply h_1 .. h_len
  };

  explicit ZActionMap(InvolutionTower t);

  const InvolutionTower& tower() const { return t_; }
  const std::vector<Leg>& forward_legs() const { return fwd_; }
  const std::vector<Leg>& backward_legs() const { return bwd_; }

  /// Successor; defined off the all-ones node at stage n.
  FinSet forward(const FinSet& x) const;
  /// Predecessor; defined off the all-zero node at stage n (which holds the
  /// orbit start).
  FinSet backward(const FinSet& x) const;

  bool forward_defined(const FinSet& x) const;
  bool backward_defined(const FinSet& x) const;

 private:
  FinSet run(const std::vector<Leg>& legs, const FinSet& x, const char* dir) const;
  InvolutionTower t_;
  std::vector<Leg> fwd_, bwd_;
};

ZActionMap build_zaction(InvolutionTower t);

}  // namespace stonework
