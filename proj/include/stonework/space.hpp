#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stonework/finset.hpp"
#include "stonework/tpoint.hpp"

namespace stonework {

/// A countable dense set T of points together with an indexed family O of
/// distinguished clopen sets, plus a reference subset R of T used to carve
/// out the admissible half of the point set.  Only decidable queries are
/// exposed; every predicate must answer exactly for eventually periodic
/// points.
class FeasibleSpace {
 public:
  virtual ~FeasibleSpace() = default;

  virtual std::string name() const = 0;

  /// Is t a member of O_n?  n >= 1.
  virtual bool in_o(int n, const TPoint& t) const = 0;

  /// Finite description of O_n (for the builtin space, the word whose
  /// cylinder it is).
  virtual std::string o_descriptor(int n) const = 0;

  /// Is t in the reference subset R?
  virtual bool in_r(const TPoint& t) const = 0;

  /// A point of O_n outside R.  Throws if the space cannot produce one.
  virtual TPoint r_witness(int n) const = 0;
};

/// Full binary sequence space.  O_n is the cylinder of the n-th binary word
/// in length-then-lexicographic order (n = 1 is the empty word, so O_1 is
/// everything); R is the set of points whose coordinates agree in the pairs
/// (1,2), (3,4), (5,6), ...
class BuiltinCantorSpace final : public FeasibleSpace {
 public:
  std::string name() const override { return "builtin-cantor"; }
  bool in_o(int n, const TPoint& t) const override;
  std::string o_descriptor(int n) const override;
  bool in_r(const TPoint& t) const override;
  TPoint r_witness(int n) const override;
};

/// Factory keyed by CLI name.  Throws on unknown names.
std::shared_ptr<const FeasibleSpace> make_space(const std::string& name);

/// N(t) within a finite index window: all n in [1, bound] with t in O_n.
FinSet n_window(const FeasibleSpace& space, const TPoint& t, int bound);

/// Least n in (m, search_bound] such that t is in O_n while every point of
/// excluded stays outside O_n.  Empty when the bound is exhausted; the
/// caller should widen search_bound in that case.
std::optional<int> feasibility_audit(const FeasibleSpace& space,
                                     const std::vector<TPoint>& excluded,
                                     const TPoint& t, int m, int search_bound);

/// Witness that O_n is not swallowed by R: a point of O_n outside R,
/// verified against both predicates before return.
TPoint admissibility_audit(const FeasibleSpace& space, int n, int search_bound);

/// Query against a point of the reparametrized space: the point is
/// addressed by the finite set k, the query by the pair (l, L).
struct PointQuery {
  FinSet k;
  FinSet l;
  std::vector<TPoint> L;
};

/// Coordinate of the point addressed by k at the query (l, L): 1 iff l is a
/// subset of k and, for every t in L, the window N(t) (computed up to
/// max(k)) misses k minus l.  Each t must lie outside R; otherwise the query
/// is rejected.
int eval_point(const FeasibleSpace& space, const PointQuery& q);

/// Projection of the address k to a plain binary word of length `bound`:
/// character n is '1' iff the singleton query ({n}, empty) answers 1, which
/// reproduces the indicator of k.
std::string gamma_project(const FeasibleSpace& space, const FinSet& k, int bound);

}  // namespace stonework
