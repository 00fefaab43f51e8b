#include "stonework/tower.hpp"

#include <stdexcept>
#include <string>

namespace stonework {

const ClopenPtr& InvolutionTower::node(int p, uint32_t word) const {
  if (p < 1 || p > n_) throw std::out_of_range("tower node: level out of range");
  return nodes_.at(static_cast<size_t>(p) - 1).at(word);
}

FinSet InvolutionTower::transport(int p, uint32_t word, const FinSet& x) const {
  FinSet y = x;
  for (int j = p; j >= 1; --j) {
    if (word & (1u << (j - 1))) y = map(j).apply(y, scan_cap_);
  }
  return y;
}

std::vector<ClopenPtr> default_neighborhoods(int n) {
  std::vector<ClopenPtr> out;
  FinSet cut;  // least elements seen so far
  for (int p = 1; p <= n; ++p) {
    cut = cut.with(enum_finset(static_cast<uint64_t>(p)).elems().front());
    ClopenPtr d = ClopenExpr::full();
    for (int m : cut.elems()) {
      d = ClopenExpr::intersect(d, ClopenExpr::complement(ClopenExpr::en(m)));
    }
    out.push_back(d);
  }
  return out;
}

InvolutionTower build_tower(std::shared_ptr<const FeasibleSpace> space, int n,
                            const std::vector<ClopenPtr>& nbhd, int depth,
                            int scan_cap) {
  if (n < 1) throw std::invalid_argument("build_tower: n must be positive");
  if (nbhd.size() < static_cast<size_t>(n))
    throw std::invalid_argument("build_tower: not enough neighbourhoods");
  const FeasibleSpace& sp = *space;
  const FinSet s0;
  for (int p = 1; p <= n; ++p) {
    const ClopenPtr& d = nbhd[static_cast<size_t>(p) - 1];
    if (!member(sp, s0, d))
      throw std::invalid_argument("build_tower: base point outside D_" +
                                  std::to_string(p));
    if (member(sp, enum_finset(static_cast<uint64_t>(p)), d))
      throw std::invalid_argument("build_tower: point " + std::to_string(p) +
                                  " not excluded by D_" + std::to_string(p));
    if (p > 1) {
      ClopenPtr leak =
          ClopenExpr::difference(d, nbhd[static_cast<size_t>(p) - 2]);
      if (find_witness(sp, leak, depth))
        throw std::invalid_argument("build_tower: neighbourhoods not decreasing");
    }
  }

  InvolutionTower t;
  t.space_ = space;
  t.n_ = n;
  t.depth_ = depth;
  t.scan_cap_ = scan_cap;
  t.nbhd_.assign(nbhd.begin(), nbhd.begin() + n);

  // Level 1: exchange D_1 with its complement, sending the orbit start to
  // the first enumerated point.
  ClopenPtr d1 = t.nbhd_[0];
  ClopenPtr d1c = ClopenExpr::complement(d1);
  t.h_.push_back(build_swap(space, d1, d1c, s0, enum_finset(1), depth));
  t.nodes_.push_back({d1, d1c});

  for (int p = 1; p < n; ++p) {
    const FinSet sp1 = enum_finset(static_cast<uint64_t>(p) + 1);
    uint32_t level = 1u << p;

    // Locate the level-p node holding the next enumerated point.
    uint32_t alpha = level;
    for (uint32_t w = 0; w < level; ++w) {
      if (member(sp, sp1, t.nodes_.back()[w])) {
        alpha = w;
        break;
      }
    }
    if (alpha == level)
      throw std::runtime_error("build_tower: point escaped the level partition");

    FinSet c = t.transport(p, alpha, sp1);
    FinSet b = c;
    if (c == s0) {
      // The transported point collides with the orbit start; aim the new
      // exchange at the next available window point of the zero node.
      bool found = false;
      for (uint64_t i = 1; i < (1ULL << depth); ++i) {
        FinSet cand = enum_finset(i);
        if (member(sp, cand, t.nodes_.back()[0])) {
          b = cand;
          found = true;
          break;
        }
      }
      if (!found)
        throw std::runtime_error("build_tower: zero node has no spare point");
    }

    ClopenPtr A = ClopenExpr::intersect(t.nodes_.back()[0],
                                        t.nbhd_[static_cast<size_t>(p)]);
    while (member(sp, b, A)) A = split(sp, A, s0, FinSet(), depth);
    ClopenPtr B = ClopenExpr::difference(t.nodes_.back()[0], A);
    PiecewiseMap hswap = build_swap(space, A, B, s0, b, depth);

    // h_{p+1} acts on each level-p node as the exchange conjugated by the
    // transport word of that node.
    std::vector<PiecewiseMap> parts;
    std::vector<ClopenPtr> next_nodes(2 * static_cast<size_t>(level));
    for (uint32_t w = 0; w < level; ++w) {
      const ClopenPtr& nodew = t.nodes_.back()[w];
      if (w == 0) {
        parts.push_back(restrict_map(hswap, nodew, depth));
        next_nodes[0] = A;
        next_nodes[level] = B;
        continue;
      }
      PiecewiseMap word = identity_map(space);
      for (int j = 1; j <= p; ++j) {
        if (w & (1u << (j - 1))) word = compose(word, t.map(j), depth);
      }
      parts.push_back(restrict_map(
          compose(word, compose(hswap, word, depth), depth), nodew, depth));
      // Node images through the transport word; membership pulls the point
      // back through the same involutive word.
      InvolutionTower snapshot = t;
      int pp = p;
      uint32_t ww = w;
      auto pull = [snapshot, pp, ww](const FinSet& x) {
        return snapshot.transport(pp, ww, x);
      };
      std::string bits;
      for (int j = 1; j <= p; ++j) bits += (w & (1u << (j - 1))) ? '1' : '0';
      next_nodes[w] = ClopenExpr::transported(pull, "h" + bits, A);
      next_nodes[w + level] = ClopenExpr::transported(pull, "h" + bits, B);
    }
    t.h_.push_back(overlay(space, std::move(parts)));
    t.nodes_.push_back(std::move(next_nodes));
  }
  return t;
}

FinSet dyadic_action(const InvolutionTower& t, const DyadicElem& g, const FinSet& x) {
  if (g.support().max() > t.n())
    throw std::domain_error("dyadic_action: support exceeds tower depth");
  FinSet y = x;
  for (int j : g.support().elems()) y = t.map(j).apply(y, t.scan_cap());
  return y;
}

ZActionMap::ZActionMap(InvolutionTower t) : t_(std::move(t)) {
  int n = t_.n();
  // Forward legs: nodes (0), (1 0), (1 1 0), ...; backward legs mirror.
  for (int j = 1; j <= n; ++j) {
    uint32_t ones = (1u << (j - 1)) - 1;           // j-1 leading ones
    fwd_.push_back(Leg{t_.node(j, ones), j});      // (1,...,1,0)
    bwd_.push_back(Leg{t_.node(j, 1u << (j - 1)), j});  // (0,...,0,1)
  }
}

FinSet ZActionMap::run(const std::vector<Leg>& legs, const FinSet& x,
                       const char* dir) const {
  for (const Leg& leg : legs) {
    if (member(*t_.space(), x, leg.region)) {
      FinSet y = x;
      for (int j = leg.len; j >= 1; --j) y = t_.map(j).apply(y, t_.scan_cap());
      return y;
    }
  }
  throw std::runtime_error(std::string(dir) +
                           ": point outside covered stages, deepen the tower");
}

FinSet ZActionMap::forward(const FinSet& x) const { return run(fwd_, x, "forward"); }
FinSet ZActionMap::backward(const FinSet& x) const { return run(bwd_, x, "backward"); }

bool ZActionMap::forward_defined(const FinSet& x) const {
  for (const Leg& leg : fwd_)
    if (member(*t_.space(), x, leg.region)) return true;
  return false;
}

bool ZActionMap::backward_defined(const FinSet& x) const {
  for (const Leg& leg : bwd_)
    if (member(*t_.space(), x, leg.region)) return true;
  return false;
}

ZActionMap build_zaction(InvolutionTower t) { return ZActionMap(std::move(t)); }

}  // namespace stonework
