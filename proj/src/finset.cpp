#include "stonework/finset.hpp"

#include <algorithm>
#include <stdexcept>

namespace stonework {

FinSet::FinSet(std::vector<int> elems) : elems_(std::move(elems)) {
  for (int x : elems_) {
    if (x <= 0) throw std::invalid_argument("FinSet: elements must be positive");
  }
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

FinSet FinSet::of(std::initializer_list<int> elems) {
  return FinSet(std::vector<int>(elems));
}

FinSet FinSet::from_mask(uint64_t mask) {
  std::vector<int> v;
  for (int i = 0; i < 64; ++i) {
    if (mask & (1ULL << i)) v.push_back(i + 1);
  }
  FinSet s;
  s.elems_ = std::move(v);  // already sorted and unique
  return s;
}

uint64_t FinSet::mask() const {
  uint64_t m = 0;
  for (int x : elems_) {
    if (x > 64) throw std::domain_error("FinSet::mask: element beyond 64");
    m |= 1ULL << (x - 1);
  }
  return m;
}

bool FinSet::contains(int x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

bool FinSet::subset_of(const FinSet& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(),
                       elems_.begin(), elems_.end());
}

FinSet FinSet::with(int x) const {
  if (contains(x)) return *this;
  FinSet r = *this;
  r.elems_.insert(std::lower_bound(r.elems_.begin(), r.elems_.end(), x), x);
  return r;
}

FinSet FinSet::without(int x) const {
  FinSet r = *this;
  auto it = std::lower_bound(r.elems_.begin(), r.elems_.end(), x);
  if (it != r.elems_.end() && *it == x) r.elems_.erase(it);
  return r;
}

std::string FinSet::str() const {
  std::string s = "(";
  for (size_t i = 0; i < elems_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(elems_[i]);
  }
  s += ')';
  return s;
}

FinSet symdiff(const FinSet& a, const FinSet& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.elems().begin(), a.elems().end(),
                                b.elems().begin(), b.elems().end(),
                                std::back_inserter(out));
  return FinSet(std::move(out));
}

FinSet enum_finset(uint64_t k) { return FinSet::from_mask(k); }

uint64_t finset_index(const FinSet& k) {
  if (k.max() > 63) throw std::domain_error("finset_index: element beyond 63");
  return k.mask();
}

FinSet dyadic_act(const DyadicElem& g, const FinSet& k) {
  return symdiff(g.support(), k);
}

}  // namespace stonework
