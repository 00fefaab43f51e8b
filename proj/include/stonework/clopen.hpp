#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stonework/space.hpp"

namespace stonework {

/// Parameters (l, L) of a basic clopen set: the points answering 1 to the
/// query are exactly its members.  L is kept sorted and deduplicated in
/// canonical form.
struct BasisSet {
  FinSet l;
  std::vector<TPoint> L;

  BasisSet(FinSet l_, std::vector<TPoint> L_);
  bool operator==(const BasisSet& o) const { return l == o.l && L == o.L; }
};

class ClopenExpr;
using ClopenPtr = std::shared_ptr<const ClopenExpr>;

/// Clopen subset of the point space, as an expression tree.  Trees are kept
/// unnormalized apart from Empty/Full absorption, so structural equality is
/// finer than semantic equality; use equal_on_window for the latter.
///
/// Besides the Boolean forms there is a transport node: the image of a child
/// set under a self-inverse point map.  Membership stays exact, because the
/// image of a set under an involution is tested by mapping the queried point
/// back through the same map.
class ClopenExpr {
 public:
  enum class Kind { Empty, Full, Basis, Complement, Intersect, Union, Transport };

  Kind kind() const { return kind_; }
  const BasisSet& basis() const { return *basis_; }
  const ClopenPtr& left() const { return a_; }
  const ClopenPtr& right() const { return b_; }
  const std::function<FinSet(const FinSet&)>& transport() const { return map_; }
  const std::string& transport_label() const { return label_; }

  static ClopenPtr empty();
  static ClopenPtr full();
  static ClopenPtr basis(FinSet l, std::vector<TPoint> L);
  static ClopenPtr complement(ClopenPtr e);
  static ClopenPtr intersect(ClopenPtr a, ClopenPtr b);
  static ClopenPtr unite(ClopenPtr a, ClopenPtr b);
  static ClopenPtr difference(ClopenPtr a, ClopenPtr b);
  /// Image of `child` under the involution `map`.  The label is carried
  /// into serialized forms.
  static ClopenPtr transported(std::function<FinSet(const FinSet&)> map,
                               std::string label, ClopenPtr child);

  /// Shorthand for the basic half-space E_n = all points whose address
  /// contains n.
  static ClopenPtr en(int n);

 private:
  explicit ClopenExpr(Kind k) : kind_(k) {}
  friend int member(const FeasibleSpace& space, const FinSet& k,
                    const ClopenPtr& e);

  Kind kind_;
  std::optional<BasisSet> basis_;
  ClopenPtr a_, b_;
  std::function<FinSet(const FinSet&)> map_;
  std::string label_;
  // Answers for points with coordinates <= 8, two bitsets of 256.  Trees
  // share subtrees heavily; without the cache, membership through the
  // coverage chains of piecewise constructions re-evaluates shared nodes
  // exponentially often.  Filling the cache is not thread safe.
  struct EvalCache {
    uint64_t seen[4] = {};
    uint64_t val[4] = {};
  };
  mutable std::unique_ptr<EvalCache> cache_;
};

/// Exact membership of the point addressed by k.
int member(const FeasibleSpace& space, const FinSet& k, const ClopenPtr& e);

/// Branch counters for the coordinate-toggle image; callers that do not
/// care pass nullptr.
struct SigmaStats {
  long removed = 0;     // toggled index was present in l
  long plain_add = 0;   // absent from l, no query point sees the index
  long guarded_add = 0; // absent from l, some query point sees the index
};

/// Image of e under the n-th coordinate toggle, computed symbolically.
/// On basic sets the image is again a short Boolean combination of basic
/// sets; the shape depends on whether n sits in l and on whether any query
/// point of L sees index n.  Boolean nodes map through, transport nodes are
/// wrapped.
ClopenPtr sigma_image(const FeasibleSpace& space, int n, const ClopenPtr& e,
                      SigmaStats* stats = nullptr);

/// Image under a full group element: the toggles of its support, folded in
/// increasing index order (they commute).
ClopenPtr epsilon_image(const FeasibleSpace& space, const DyadicElem& g,
                        const ClopenPtr& e, SigmaStats* stats = nullptr);

/// First point (in enumeration order over subsets of {1..depth}) inside e.
std::optional<FinSet> find_witness(const FeasibleSpace& space, const ClopenPtr& e,
                                   int depth);

/// Split e by the least index m <= depth, m not in `used`, such that both
/// e & E_m and e & ~E_m have witnesses at `depth`.  Returns the half
/// containing `anchor`.  Throws when no index splits; raise depth then.
ClopenPtr split(const FeasibleSpace& space, const ClopenPtr& e, const FinSet& anchor,
                const FinSet& used, int depth);

/// Agreement of two sets on every point of the window {1..depth}.
bool equal_on_window(const FeasibleSpace& space, const ClopenPtr& a,
                     const ClopenPtr& b, int depth);

enum class InvariantVerdict { TrivialEmpty, TrivialFull, InvariantNontrivial, NotInvariant };

/// Ergodicity probe: checks invariance of e under each generator on the
/// window and classifies the invariant sets found.  With generators spanning
/// the window's group, only the trivial classes can survive.
InvariantVerdict invariant_clopen_audit(const FeasibleSpace& space,
                                        const std::vector<DyadicElem>& gens,
                                        const ClopenPtr& e, int depth);

/// Prefix serialization: empty | full | (E (l...) (L...)) | (not x) |
/// (and x y) | (or x y) | (img label x).
std::string serialize(const ClopenPtr& e);

}  // namespace stonework
