#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stonework {

/// Finite set of positive integers, kept strictly increasing.
///
/// These index both the coordinates of the product space {0,1}^N and the
/// generators of the acting group, so they show up everywhere: as points of
/// the countable dense orbit, as supports of group elements, and as the
/// (l, L) data of basic clopen sets.
class FinSet {
 public:
  FinSet() = default;
  /// Accepts elements in any order, deduplicates, sorts.
  explicit FinSet(std::vector<int> elems);

  static FinSet of(std::initializer_list<int> elems);

  /// Set whose members are the 1-based positions of set bits in `mask`.
  static FinSet from_mask(uint64_t mask);

  /// Bitmask form; requires max() <= 64.
  uint64_t mask() const;

  const std::vector<int>& elems() const { return elems_; }
  bool empty() const { return elems_.empty(); }
  size_t size() const { return elems_.size(); }
  bool contains(int x) const;
  /// Largest element, 0 when empty.
  int max() const { return elems_.empty() ? 0 : elems_.back(); }

  bool subset_of(const FinSet& other) const;

  FinSet with(int x) const;     // insert
  FinSet without(int x) const;  // erase

  bool operator==(const FinSet& o) const { return elems_ == o.elems_; }
  bool operator!=(const FinSet& o) const { return elems_ != o.elems_; }
  bool operator<(const FinSet& o) const { return elems_ < o.elems_; }

  std::string str() const;  // "(1 3)"

 private:
  std::vector<int> elems_;
};

/// Symmetric difference.
FinSet symdiff(const FinSet& a, const FinSet& b);

/// k-th finite set in the canonical enumeration: the 1-based positions of the
/// set bits in the binary expansion of k.  enum_finset(0) is empty,
/// enum_finset(5) = {1,3}, enum_finset(6) = {2,3}.
FinSet enum_finset(uint64_t k);

/// Inverse of enum_finset; requires max() <= 63.
uint64_t finset_index(const FinSet& k);

/// Element of the countable direct sum of Z/2, written by its support.
/// Every element is its own inverse and the group law is symmetric
/// difference of supports.
class DyadicElem {
 public:
  DyadicElem() = default;
  explicit DyadicElem(FinSet support) : supp_(std::move(support)) {}

  const FinSet& support() const { return supp_; }
  bool is_identity() const { return supp_.empty(); }

  DyadicElem operator*(const DyadicElem& o) const {
    return DyadicElem(symdiff(supp_, o.supp_));
  }
  bool operator==(const DyadicElem& o) const { return supp_ == o.supp_; }
  bool operator!=(const DyadicElem& o) const { return supp_ != o.supp_; }

  std::string str() const { return supp_.str(); }

 private:
  FinSet supp_;
};

/// Action of a group element on an enumerated point: toggle the coordinates
/// in the support.  dyadic_act(g, k) = supp(g) symdiff k.
FinSet dyadic_act(const DyadicElem& g, const FinSet& k);

}  // namespace stonework
