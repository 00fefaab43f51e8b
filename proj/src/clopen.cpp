#include "stonework/clopen.hpp"

#include <algorithm>
#include <stdexcept>

namespace stonework {

BasisSet::BasisSet(FinSet l_, std::vector<TPoint> L_) : l(std::move(l_)), L(std::move(L_)) {
  std::sort(L.begin(), L.end());
  L.erase(std::unique(L.begin(), L.end()), L.end());
}

ClopenPtr ClopenExpr::empty() {
  static ClopenPtr e(new ClopenExpr(Kind::Empty));
  return e;
}

ClopenPtr ClopenExpr::full() {
  static ClopenPtr f(new ClopenExpr(Kind::Full));
  return f;
}

ClopenPtr ClopenExpr::basis(FinSet l, std::vector<TPoint> L) {
  BasisSet b(std::move(l), std::move(L));
  if (b.l.empty() && b.L.empty()) return full();  // no constraint at all
  auto e = new ClopenExpr(Kind::Basis);
  e->basis_.emplace(std::move(b));
  return ClopenPtr(e);
}

ClopenPtr ClopenExpr::complement(ClopenPtr x) {
  if (x->kind() == Kind::Empty) return full();
  if (x->kind() == Kind::Full) return empty();
  auto e = new ClopenExpr(Kind::Complement);
  e->a_ = std::move(x);
  return ClopenPtr(e);
}

ClopenPtr ClopenExpr::intersect(ClopenPtr a, ClopenPtr b) {
  if (a->kind() == Kind::Empty || b->kind() == Kind::Empty) return empty();
  if (a->kind() == Kind::Full) return b;
  if (b->kind() == Kind::Full) return a;
  auto e = new ClopenExpr(Kind::Intersect);
  e->a_ = std::move(a);
  e->b_ = std::move(b);
  return ClopenPtr(e);
}

ClopenPtr ClopenExpr::unite(ClopenPtr a, ClopenPtr b) {
  if (a->kind() == Kind::Full || b->kind() == Kind::Full) return full();
  if (a->kind() == Kind::Empty) return b;
  if (b->kind() == Kind::Empty) return a;
  auto e = new ClopenExpr(Kind::Union);
  e->a_ = std::move(a);
  e->b_ = std::move(b);
  return ClopenPtr(e);
}

ClopenPtr ClopenExpr::difference(ClopenPtr a, ClopenPtr b) {
  return intersect(std::move(a), complement(std::move(b)));
}

ClopenPtr ClopenExpr::transported(std::function<FinSet(const FinSet&)> map,
                                  std::string label, ClopenPtr child) {
  if (child->kind() == Kind::Empty) return empty();
  if (child->kind() == Kind::Full) return full();
  auto e = new ClopenExpr(Kind::Transport);
  e->map_ = std::move(map);
  e->label_ = std::move(label);
  e->a_ = std::move(child);
  return ClopenPtr(e);
}

ClopenPtr ClopenExpr::en(int n) { return basis(FinSet::of({n}), {}); }

int member(const FeasibleSpace& space, const FinSet& k, const ClopenPtr& e) {
  uint64_t mask = 0;
  bool cacheable = k.max() <= 8 && e->kind() != ClopenExpr::Kind::Empty &&
                   e->kind() != ClopenExpr::Kind::Full;
  if (cacheable) {
    mask = k.mask();
    if (e->cache_ && ((e->cache_->seen[mask >> 6] >> (mask & 63)) & 1))
      return static_cast<int>((e->cache_->val[mask >> 6] >> (mask & 63)) & 1);
  }
  int v = 0;
  switch (e->kind()) {
    case ClopenExpr::Kind::Empty:
      return 0;
    case ClopenExpr::Kind::Full:
      return 1;
    case ClopenExpr::Kind::Basis:
      v = eval_point(space, PointQuery{k, e->basis().l, e->basis().L});
      break;
    case ClopenExpr::Kind::Complement:
      v = 1 - member(space, k, e->left());
      break;
    case ClopenExpr::Kind::Intersect:
      v = member(space, k, e->left()) && member(space, k, e->right());
      break;
    case ClopenExpr::Kind::Union:
      v = member(space, k, e->left()) || member(space, k, e->right());
      break;
    case ClopenExpr::Kind::Transport:
      // x is in m[A] iff m(x) is in A, m being self-inverse.
      v = member(space, e->transport()(k), e->left());
      break;
  }
  if (cacheable) {
    if (!e->cache_) e->cache_ = std::make_unique<ClopenExpr::EvalCache>();
    e->cache_->seen[mask >> 6] |= 1ULL << (mask & 63);
    if (v) e->cache_->val[mask >> 6] |= 1ULL << (mask & 63);
  }
  return v;
}

ClopenPtr sigma_image(const FeasibleSpace& space, int n, const ClopenPtr& e,
                      SigmaStats* stats) {
  using K = ClopenExpr::Kind;
  switch (e->kind()) {
    case K::Empty:
      return ClopenExpr::empty();
    case K::Full:
      return ClopenExpr::full();
    case K::Complement:
      return ClopenExpr::complement(sigma_image(space, n, e->left(), stats));
    case K::Intersect:
      return ClopenExpr::intersect(sigma_image(space, n, e->left(), stats),
                                   sigma_image(space, n, e->right(), stats));
    case K::Union:
      return ClopenExpr::unite(sigma_image(space, n, e->left(), stats),
                               sigma_image(space, n, e->right(), stats));
    case K::Transport: {
      // No exchange rule with a general point map; take the image of the
      // whole node instead.  The toggle is its own inverse.
      auto toggle = [n](const FinSet& k) {
        return k.contains(n) ? k.without(n) : k.with(n);
      };
      return ClopenExpr::transported(toggle, "s" + std::to_string(n), e);
    }
    case K::Basis:
      break;
  }

  const BasisSet& b = e->basis();
  if (b.l.contains(n)) {
    // Members all contain n, so images all lack it: drop n from l and cut
    // away E_n.
    if (stats) stats->removed++;
    return ClopenExpr::intersect(
        ClopenExpr::complement(ClopenExpr::en(n)),
        ClopenExpr::basis(b.l.without(n), b.L));
  }
  bool seen = false;  // does any query point see index n?
  for (const TPoint& t : b.L) {
    if (space.in_o(n, t)) {
      seen = true;
      break;
    }
  }
  if (seen) {
    // Members cannot contain n (it would land in k minus l and be seen), so
    // every image gains n.
    if (stats) stats->guarded_add++;
    return ClopenExpr::basis(b.l.with(n), b.L);
  }
  // Members split into those with and without n; images swap the halves.
  if (stats) stats->plain_add++;
  return ClopenExpr::unite(
      ClopenExpr::basis(b.l.with(n), b.L),
      ClopenExpr::intersect(ClopenExpr::basis(b.l, b.L),
                            ClopenExpr::complement(ClopenExpr::en(n))));
}

ClopenPtr epsilon_image(const FeasibleSpace& space, const DyadicElem& g,
                        const ClopenPtr& e, SigmaStats* stats) {
  ClopenPtr out = e;
  for (int n : g.support().elems()) out = sigma_image(space, n, out, stats);
  return out;
}

std::optional<FinSet> find_witness(const FeasibleSpace& space, const ClopenPtr& e,
                                   int depth) {
  if (depth < 0 || depth > 30) throw std::domain_error("find_witness: bad depth");
  uint64_t limit = 1ULL << depth;
  for (uint64_t i = 0; i < limit; ++i) {
    FinSet k = enum_finset(i);
    if (member(space, k, e)) return k;
  }
  return std::nullopt;
}

ClopenPtr split(const FeasibleSpace& space, const ClopenPtr& e, const FinSet& anchor,
                const FinSet& used, int depth) {
  for (int m = 1; m <= depth; ++m) {
    if (used.contains(m)) continue;
    ClopenPtr inside = ClopenExpr::intersect(e, ClopenExpr::en(m));
    ClopenPtr outside = ClopenExpr::difference(e, ClopenExpr::en(m));
    if (!find_witness(space, inside, depth) || !find_witness(space, outside, depth))
      continue;
    return anchor.contains(m) ? inside : outside;
  }
  throw std::runtime_error("split: no splitting index within depth " +
                           std::to_string(depth));
}

bool equal_on_window(const FeasibleSpace& space, const ClopenPtr& a,
                     const ClopenPtr& b, int depth) {
  uint64_t limit = 1ULL << depth;
  for (uint64_t i = 0; i < limit; ++i) {
    FinSet k = enum_finset(i);
    if (member(space, k, a) != member(space, k, b)) return false;
  }
  return true;
}

InvariantVerdict invariant_clopen_audit(const FeasibleSpace& space,
                                        const std::vector<DyadicElem>& gens,
                                        const ClopenPtr& e, int depth) {
  for (const DyadicElem& g : gens) {
    if (!equal_on_window(space, epsilon_image(space, g, e), e, depth))
      return InvariantVerdict::NotInvariant;
  }
  if (equal_on_window(space, e, ClopenExpr::empty(), depth))
    return InvariantVerdict::TrivialEmpty;
  if (equal_on_window(space, e, ClopenExpr::full(), depth))
    return InvariantVerdict::TrivialFull;
  return InvariantVerdict::InvariantNontrivial;
}

std::string serialize(const ClopenPtr& e) {
  using K = ClopenExpr::Kind;
  switch (e->kind()) {
    case K::Empty:
      return "empty";
    case K::Full:
      return "full";
    case K::Basis: {
      std::string s = "(E " + e->basis().l.str() + " (";
      for (size_t i = 0; i < e->basis().L.size(); ++i) {
        if (i) s += ' ';
        s += e->basis().L[i].str();
      }
      return s + "))";
    }
    case K::Complement:
      return "(not " + serialize(e->left()) + ")";
    case K::Intersect:
      return "(and " + serialize(e->left()) + " " + serialize(e->right()) + ")";
    case K::Union:
      return "(or " + serialize(e->left()) + " " + serialize(e->right()) + ")";
    case K::Transport:
      return "(img " + e->transport_label() + " " + serialize(e->left()) + ")";
  }
  throw std::logic_error("serialize: unreachable");
}

}  // namespace stonework
