#include "stonework/space.hpp"

#include <stdexcept>

namespace stonework {

namespace {

// n-th binary word in length-then-lex order, 1-based: strip the leading 1
// from the binary expansion of n.  1 -> "", 2 -> "0", 3 -> "1", 4 -> "00".
std::string nth_word(int n) {
  if (n < 1) throw std::out_of_range("nth_word: index is 1-based");
  std::string w;
  while (n > 1) {
    w += static_cast<char>('0' + (n & 1));
    n >>= 1;
  }
  return std::string(w.rbegin(), w.rend());
}

}  // namespace

bool BuiltinCantorSpace::in_o(int n, const TPoint& t) const {
  std::string w = nth_word(n);
  for (size_t i = 0; i < w.size(); ++i) {
    if (t.bit(static_cast<int>(i) + 1) != w[i] - '0') return false;
  }
  return true;
}

std::string BuiltinCantorSpace::o_descriptor(int n) const { return nth_word(n); }

bool BuiltinCantorSpace::in_r(const TPoint& t) const {
  // The pair predicate is eventually periodic in the pair index j with
  // period |period(t)| once 2j-1 clears the preperiod, so a finite scan
  // decides membership.
  int pre = static_cast<int>(t.preperiod().size());
  int per = static_cast<int>(t.period().size());
  int pairs = pre / 2 + per + 1;
  for (int j = 1; j <= pairs; ++j) {
    if (t.bit(2 * j - 1) != t.bit(2 * j)) return false;
  }
  return true;
}

TPoint BuiltinCantorSpace::r_witness(int n) const {
  // Extend the defining word by the alternating tail: any aligned pair that
  // falls fully inside the tail is unequal, so the point escapes R.
  return TPoint(nth_word(n), "01");
}

std::shared_ptr<const FeasibleSpace> make_space(const std::string& name) {
  if (name == "builtin-cantor") return std::make_shared<BuiltinCantorSpace>();
  throw std::invalid_argument("unknown space: " + name);
}

FinSet n_window(const FeasibleSpace& space, const TPoint& t, int bound) {
  std::vector<int> hits;
  for (int n = 1; n <= bound; ++n) {
    if (space.in_o(n, t)) hits.push_back(n);
  }
  return FinSet(std::move(hits));
}

std::optional<int> feasibility_audit(const FeasibleSpace& space,
                                     const std::vector<TPoint>& excluded,
                                     const TPoint& t, int m, int search_bound) {
  for (int n = m + 1; n <= search_bound; ++n) {
    if (!space.in_o(n, t)) continue;
    bool clean = true;
    for (const TPoint& s : excluded) {
      if (space.in_o(n, s)) {
        clean = false;
        break;
      }
    }
    if (clean) return n;
  }
  return std::nullopt;
}

TPoint admissibility_audit(const FeasibleSpace& space, int n, int search_bound) {
  (void)search_bound;  // the builtin witness is direct, no search needed
  TPoint t = space.r_witness(n);
  if (!space.in_o(n, t) || space.in_r(t)) {
    throw std::runtime_error("admissibility_audit: invalid witness from space '" +
                             space.name() + "' at index " + std::to_string(n));
  }
  return t;
}

int eval_point(const FeasibleSpace& space, const PointQuery& q) {
  for (const TPoint& t : q.L) {
    if (space.in_r(t)) {
      throw std::invalid_argument("eval_point: query point inside R: " + t.str());
    }
  }
  if (!q.l.subset_of(q.k)) return 0;
  FinSet residue = symdiff(q.k, q.l);  // = k minus l, since l is a subset of k
  for (const TPoint& t : q.L) {
    for (int n : residue.elems()) {
      if (space.in_o(n, t)) return 0;
    }
  }
  return 1;
}

std::string gamma_project(const FeasibleSpace& space, const FinSet& k, int bound) {
  std::string w;
  w.reserve(static_cast<size_t>(bound));
  for (int n = 1; n <= bound; ++n) {
    PointQuery q{k, FinSet::of({n}), {}};
    w += static_cast<char>('0' + eval_point(space, q));
  }
  return w;
}

}  // namespace stonework
