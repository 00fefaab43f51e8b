#include "stonework/piecewise.hpp"

#include <array>
#include <deque>

namespace stonework {

struct PiecewiseMap::State {
  std::shared_ptr<const FeasibleSpace> space;
  std::deque<Piece> pieces;
  Producer more;  // empty function once exhausted or finite
  bool exhausted = false;
  std::unordered_map<uint64_t, uint64_t> memo;
};

PiecewiseMap PiecewiseMap::finite(std::shared_ptr<const FeasibleSpace> space,
                                  std::vector<Piece> pieces) {
  PiecewiseMap m;
  m.st_ = std::make_shared<State>();
  m.st_->space = std::move(space);
  m.st_->pieces.assign(std::make_move_iterator(pieces.begin()),
                       std::make_move_iterator(pieces.end()));
  m.st_->exhausted = true;
  return m;
}

PiecewiseMap PiecewiseMap::lazy(std::shared_ptr<const FeasibleSpace> space,
                                Producer more) {
  PiecewiseMap m;
  m.st_ = std::make_shared<State>();
  m.st_->space = std::move(space);
  m.st_->more = std::move(more);
  return m;
}

const Piece* PiecewiseMap::piece(size_t idx) const {
  State& st = *st_;
  while (st.pieces.size() <= idx && !st.exhausted) {
    auto p = st.more();
    if (!p) {
      st.exhausted = true;
      st.more = nullptr;
      break;
    }
    st.pieces.push_back(std::move(*p));
  }
  return idx < st.pieces.size() ? &st.pieces[idx] : nullptr;
}

const std::deque<Piece>& PiecewiseMap::forced_pieces() const { return st_->pieces; }
bool PiecewiseMap::exhausted() const { return st_->exhausted; }
const std::shared_ptr<const FeasibleSpace>& PiecewiseMap::space() const {
  return st_->space;
}

FinSet PiecewiseMap::apply(const FinSet& k, int scan_cap) const {
  State& st = *st_;
  bool cacheable = k.max() <= 64;
  uint64_t key = cacheable ? k.mask() : 0;
  if (cacheable) {
    auto it = st.memo.find(key);
    if (it != st.memo.end()) return FinSet::from_mask(it->second);
  }
  for (int idx = 0; idx < scan_cap; ++idx) {
    const Piece* p = piece(static_cast<size_t>(idx));
    if (!p) {
      throw std::runtime_error("apply: point " + k.str() +
                               " not covered by any piece");
    }
    if (member(*st.space, k, p->region)) {
      FinSet out = dyadic_act(p->move, k);
      if (cacheable && out.max() <= 64) st.memo.emplace(key, out.mask());
      return out;
    }
  }
  throw ScanCapError("apply: scan cap exhausted at point " + k.str());
}

std::function<FinSet(const FinSet&)> PiecewiseMap::as_function(int scan_cap) const {
  PiecewiseMap self = *this;
  return [self, scan_cap](const FinSet& k) { return self.apply(k, scan_cap); };
}

PiecewiseMap identity_map(std::shared_ptr<const FeasibleSpace> space) {
  return PiecewiseMap::finite(std::move(space),
                              {Piece{ClopenExpr::full(), DyadicElem()}});
}

PiecewiseMap odometer_map(std::shared_ptr<const FeasibleSpace> space) {
  auto j = std::make_shared<int>(0);
  auto producer = [j]() -> std::optional<Piece> {
    ++*j;
    std::vector<int> low;
    for (int i = 1; i < *j; ++i) low.push_back(i);
    ClopenPtr region = ClopenExpr::intersect(
        ClopenExpr::basis(FinSet(low), {}),
        ClopenExpr::complement(ClopenExpr::en(*j)));
    low.push_back(*j);
    return Piece{region, DyadicElem(FinSet(low))};
  };
  return PiecewiseMap::lazy(std::move(space), producer);
}

namespace {

/// Window truth table of a region: bit m is set when the point enumerated by
/// mask m lies in it.  Sized for depths up to 10.
struct WindowBits {
  std::array<uint64_t, 16> w{};
  bool filled = false;
};

void fill_window_bits(WindowBits& bm, const FeasibleSpace& space,
                      const ClopenPtr& region, int depth) {
  uint64_t count = uint64_t{1} << depth;
  for (uint64_t m = 0; m < count; ++m)
    if (member(space, FinSet::from_mask(m), region))
      bm.w[m >> 6] |= uint64_t{1} << (m & 63);
  bm.filled = true;
}

/// Image of a region under a group element, as a transport node.  The
/// element acts involutively by symmetric difference, so image and preimage
/// coincide; one node suffices where the rewritten form would clone the
/// whole tree, and the child keeps its evaluation cache.
ClopenPtr group_preimage(const DyadicElem& g, const ClopenPtr& region) {
  if (g.support().empty()) return region;
  FinSet s = g.support();
  auto mover = [s](const FinSet& k) { return symdiff(s, k); };
  return ClopenExpr::transported(mover, "e" + s.str(), region);
}

}  // namespace

PiecewiseMap compose(const PiecewiseMap& a, const PiecewiseMap& b,
                     int prune_depth) {
  auto space = b.space();
  struct Walk {
    PiecewiseMap a, b;
    const FeasibleSpace* space;
    int prune;
    long diag = 0;
    long i = -1;  // index into b along the current diagonal
    std::vector<WindowBits> abits, bbits;
  };
  auto w = std::make_shared<Walk>();
  w->a = a;
  w->b = b;
  w->space = space.get();
  w->prune = prune_depth;
  auto table = [w](std::vector<WindowBits>& store, long idx,
                   const ClopenPtr& region) -> const WindowBits& {
    if (store.size() <= static_cast<size_t>(idx))
      store.resize(static_cast<size_t>(idx) + 1);
    WindowBits& bm = store[static_cast<size_t>(idx)];
    if (!bm.filled) fill_window_bits(bm, *w->space, region, w->prune);
    return bm;
  };
  auto producer = [w, table]() -> std::optional<Piece> {
    while (true) {
      ++w->i;
      if (w->i > w->diag) {
        ++w->diag;
        w->i = 0;
        // Once both streams end, diagonals beyond their combined length are
        // empty and the composite is complete.
        if (w->a.exhausted() && w->b.exhausted()) {
          long na = static_cast<long>(w->a.forced_pieces().size());
          long nb = static_cast<long>(w->b.forced_pieces().size());
          if (w->diag > na + nb) return std::nullopt;
        }
      }
      long bi = w->i, aj = w->diag - w->i;
      // Copy the piece values: forcing one stream can recursively extend the
      // other when they share inner maps.
      std::optional<Piece> pb, pa;
      if (const Piece* q = w->b.piece(static_cast<size_t>(bi))) pb = *q;
      if (const Piece* q = w->a.piece(static_cast<size_t>(aj))) pa = *q;
      if (!pb || !pa) continue;
      uint64_t gm = pb->move.support().mask();
      if (w->prune > 0 && w->prune <= 10 &&
          gm < (uint64_t{1} << w->prune)) {
        // The b-move permutes the window by xor with its support mask, so
        // the pair contributes a window point exactly when some set bit of
        // the b table lands on a set bit of the a table under that xor.
        // Tables are filled once per piece; rejected pairs never build a
        // region expression.
        const WindowBits& bt = table(w->bbits, bi, pb->region);
        const WindowBits& at = table(w->abits, aj, pa->region);
        uint64_t count = uint64_t{1} << w->prune;
        bool hit = false;
        for (uint64_t m = 0; m < count && !hit; ++m) {
          if (!((bt.w[m >> 6] >> (m & 63)) & 1)) continue;
          uint64_t t = m ^ gm;
          hit = ((at.w[t >> 6] >> (t & 63)) & 1) != 0;
        }
        if (!hit) continue;
        ClopenPtr pre = group_preimage(pb->move, pa->region);
        ClopenPtr region = ClopenExpr::intersect(pb->region, pre);
        return Piece{region, pb->move * pa->move};
      }
      ClopenPtr pre = group_preimage(pb->move, pa->region);
      ClopenPtr region = ClopenExpr::intersect(pb->region, pre);
      if (region->kind() == ClopenExpr::Kind::Empty) continue;
      if (w->prune > 0 && !find_witness(*w->space, region, w->prune)) continue;
      return Piece{region, pb->move * pa->move};
    }
  };
  return PiecewiseMap::lazy(space, producer);
}

PiecewiseMap restrict_map(const PiecewiseMap& m, const ClopenPtr& where,
                          int prune_depth) {
  auto st = std::make_shared<std::pair<PiecewiseMap, size_t>>(m, 0);
  ClopenPtr w = where;
  auto space = m.space();
  auto producer = [st, w, space, prune_depth]() -> std::optional<Piece> {
    while (true) {
      const Piece* p = st->first.piece(st->second);
      if (!p) return std::nullopt;
      ++st->second;
      ClopenPtr region = ClopenExpr::intersect(p->region, w);
      if (region->kind() == ClopenExpr::Kind::Empty) continue;
      if (prune_depth > 0 && !find_witness(*space, region, prune_depth))
        continue;
      return Piece{region, p->move};
    }
  };
  return PiecewiseMap::lazy(m.space(), producer);
}

PiecewiseMap overlay(std::shared_ptr<const FeasibleSpace> space,
                     std::vector<PiecewiseMap> parts) {
  struct RR {
    std::vector<PiecewiseMap> parts;
    std::vector<size_t> cursor;
    size_t turn = 0;
  };
  auto rr = std::make_shared<RR>();
  rr->parts = std::move(parts);
  rr->cursor.assign(rr->parts.size(), 0);
  auto producer = [rr]() -> std::optional<Piece> {
    size_t n = rr->parts.size();
    size_t dead = 0;
    while (dead < n) {
      size_t t = rr->turn;
      rr->turn = (rr->turn + 1) % n;
      const Piece* p = rr->parts[t].piece(rr->cursor[t]);
      if (!p) {
        ++dead;
        continue;
      }
      ++rr->cursor[t];
      return *p;
    }
    return std::nullopt;
  };
  return PiecewiseMap::lazy(std::move(space), producer);
}

PiecewiseMap build_swap(std::shared_ptr<const FeasibleSpace> space,
                        const ClopenPtr& A, const ClopenPtr& B,
                        const FinSet& a, const FinSet& b, int depth) {
  const FeasibleSpace& sp = *space;
  if (!member(sp, a, A)) throw std::invalid_argument("build_swap: a outside A");
  if (!member(sp, b, B)) throw std::invalid_argument("build_swap: b outside B");
  if (find_witness(sp, ClopenExpr::intersect(A, B), depth))
    throw std::invalid_argument("build_swap: A and B overlap on the window");

  struct Swap {
    std::shared_ptr<const FeasibleSpace> space;
    ClopenPtr A, B, acov, bcov;
    FinSet a0, b0;
    int depth;
    bool started = false;
    bool done = false;
    std::deque<Piece> pending;
  };
  auto s = std::make_shared<Swap>();
  s->space = space;
  s->A = A;
  s->B = B;
  s->acov = ClopenExpr::empty();
  s->bcov = ClopenExpr::empty();
  s->a0 = a;
  s->b0 = b;
  s->depth = depth;
  // Off the union the exchange does nothing; emit that piece first so
  // outside points resolve immediately.
  s->pending.push_back(
      Piece{ClopenExpr::complement(ClopenExpr::unite(A, B)), DyadicElem()});

  auto producer = [s]() -> std::optional<Piece> {
    if (!s->pending.empty()) {
      Piece p = s->pending.front();
      s->pending.pop_front();
      return p;
    }
    if (s->done) return std::nullopt;
    const FeasibleSpace& sp = *s->space;
    ClopenPtr arest = ClopenExpr::difference(s->A, s->acov);
    ClopenPtr brest = ClopenExpr::difference(s->B, s->bcov);
    FinSet an, bn;
    if (!s->started) {
      s->started = true;
      an = s->a0;
      bn = s->b0;
    } else {
      auto wa = find_witness(sp, arest, s->depth);
      auto wb = find_witness(sp, brest, s->depth);
      if (!wa && !wb) {
        s->done = true;
        return std::nullopt;
      }
      if (!wa || !wb) {
        throw std::runtime_error(
            "build_swap: sides exhausted unevenly at depth " +
            std::to_string(s->depth));
      }
      an = *wa;
      bn = *wb;
    }
    DyadicElem g(symdiff(an, bn));
    // Neighbourhood of the A-side witness whose translate stays inside the
    // uncovered part of B.
    ClopenPtr piece_a =
        ClopenExpr::intersect(arest, epsilon_image(sp, g, brest));
    // Shrink while the piece would swallow either remainder whole, to keep
    // both sides alive for the next round.  When no index splits any more
    // the remainder is invisible at this depth and the piece stands.
    while (true) {
      ClopenPtr piece_b = epsilon_image(sp, g, piece_a);
      bool a_left = find_witness(sp, ClopenExpr::difference(arest, piece_a),
                                 s->depth).has_value();
      bool b_left = find_witness(sp, ClopenExpr::difference(brest, piece_b),
                                 s->depth).has_value();
      if (a_left && b_left) break;
      ClopenPtr shrunk;
      try {
        shrunk = split(sp, piece_a, an, FinSet(), s->depth);
      } catch (const std::runtime_error&) {
        break;
      }
      piece_a = shrunk;
    }
    ClopenPtr piece_b = epsilon_image(sp, g, piece_a);
    s->acov = ClopenExpr::unite(s->acov, piece_a);
    s->bcov = ClopenExpr::unite(s->bcov, piece_b);
    s->pending.push_back(Piece{piece_b, g});
    return Piece{piece_a, g};
  };
  return PiecewiseMap::lazy(space, producer);
}

}  // namespace stonework
