#include "stonework/audit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stonework/clopen.hpp"
#include "stonework/fermion.hpp"

namespace stonework {

namespace {

const double kTau = 6.283185307179586476925286766559;

std::string dstr(int d) { return std::to_string(d); }

/// Pool of eventually periodic points outside the reference set R of the
/// builtin space; image audits draw query points from here.
std::vector<TPoint> query_pool(const FeasibleSpace& space) {
  std::vector<TPoint> pool;
  for (const char* s : {":01", "0:01", "1:10", ":011", ":001"}) {
    TPoint t = TPoint::parse(s);
    if (!space.in_r(t)) pool.push_back(t);
  }
  return pool;
}

ClopenPtr random_basis(const FeasibleSpace& space, Rng& rng,
                       const std::vector<TPoint>& pool) {
  uint64_t lmask = rng.below(32);  // l inside {1..5}
  std::vector<TPoint> L;
  int picks = static_cast<int>(rng.below(3));
  for (int i = 0; i < picks; ++i)
    L.push_back(pool[rng.below(pool.size())]);
  (void)space;
  return ClopenExpr::basis(FinSet::from_mask(lmask), std::move(L));
}

ClopenPtr random_expr(const FeasibleSpace& space, Rng& rng,
                      const std::vector<TPoint>& pool, int depth) {
  if (depth == 0) return random_basis(space, rng, pool);
  switch (rng.below(4)) {
    case 0:
      return random_basis(space, rng, pool);
    case 1:
      return ClopenExpr::complement(random_expr(space, rng, pool, depth - 1));
    case 2:
      return ClopenExpr::intersect(random_expr(space, rng, pool, depth - 1),
                                   random_expr(space, rng, pool, depth - 1));
    default:
      return ClopenExpr::unite(random_expr(space, rng, pool, depth - 1),
                               random_expr(space, rng, pool, depth - 1));
  }
}

}  // namespace

std::vector<Check> audit_core(int depth) {
  std::vector<Check> out;
  uint64_t m = 1ULL << depth;

  bool ok = true;
  for (uint64_t g = 0; g < m && ok; ++g) {
    DyadicElem eg(enum_finset(g));
    if ((eg * DyadicElem()) != eg) ok = false;
    if (!(eg * eg).is_identity()) ok = false;
  }
  out.push_back(Check::of(ok, "group-unit-inverse",
                          "identity element and self-inverse law",
                          "all elements with support in {1.." + dstr(depth) + "}"));

  ok = true;
  for (uint64_t g = 0; g < m && ok; ++g)
    for (uint64_t h = 0; h < m; ++h) {
      DyadicElem a(enum_finset(g)), b(enum_finset(h));
      if ((a * b) != (b * a)) {
        ok = false;
        break;
      }
    }
  out.push_back(Check::of(ok, "group-commutative", "the group law commutes",
                          "all pairs, support in {1.." + dstr(depth) + "}"));

  ok = true;
  for (uint64_t g = 0; g < m && ok; ++g) {
    DyadicElem eg(enum_finset(g));
    for (uint64_t k = 0; k < m; ++k) {
      FinSet p = enum_finset(k);
      FinSet q = dyadic_act(eg, dyadic_act(eg, p));
      if (q != p) {
        ok = false;
        break;
      }
      if (!eg.is_identity() && dyadic_act(eg, p) == p) {
        ok = false;  // freeness: nontrivial elements move every point
        break;
      }
    }
  }
  out.push_back(Check::of(ok, "action-involutive-free",
                          "acting twice returns the point; nontrivial elements fix nothing",
                          "all pairs, window {1.." + dstr(depth) + "}"));

  ok = true;
  std::vector<FinSet> probes = {FinSet(), enum_finset(0b101), enum_finset(m - 1)};
  for (uint64_t g = 0; g < m && ok; ++g)
    for (uint64_t h = 0; h < m && ok; ++h) {
      DyadicElem a(enum_finset(g)), b(enum_finset(h));
      for (const FinSet& k : probes)
        if (dyadic_act(a * b, k) != dyadic_act(a, dyadic_act(b, k))) {
          ok = false;
          break;
        }
    }
  out.push_back(Check::of(ok, "action-homomorphism",
                          "acting by a product equals acting twice",
                          "all pairs on 3 probe points, window {1.." + dstr(depth) + "}"));

  ok = true;
  for (uint64_t i = 0; i < (1ULL << 16) && ok; ++i) {
    if (finset_index(enum_finset(i)) != i) ok = false;
  }
  out.push_back(Check::of(ok, "enumeration-bijective",
                          "set enumeration round-trips through its index",
                          "indices below 2^16"));

  std::set<uint64_t> orbit;
  for (uint64_t g = 0; g < m; ++g)
    orbit.insert(dyadic_act(DyadicElem(enum_finset(g)), FinSet()).mask());
  out.push_back(Check::of(orbit.size() == m, "orbit-transitive",
                          "the orbit of the empty set is the whole window",
                          "window {1.." + dstr(depth) + "}"));
  return out;
}

std::vector<Check> audit_space(const FeasibleSpace& space, int audits,
                               int feas_bound, int admis_top, Rng rng) {
  std::vector<Check> out;

  // Index window against the raw descriptors.
  bool ok = true;
  std::vector<TPoint> pts = {TPoint::zeros(), TPoint::ones(), TPoint::alternating(),
                             TPoint::parse("10:0"), TPoint::parse("0:10")};
  for (const TPoint& t : pts) {
    FinSet w = n_window(space, t, 64);
    for (int n = 1; n <= 64; ++n) {
      std::string d = space.o_descriptor(n);
      bool prefix = true;
      for (size_t i = 0; i < d.size(); ++i)
        if (t.bit(static_cast<int>(i) + 1) != d[i] - '0') {
          prefix = false;
          break;
        }
      if (prefix != w.contains(n)) ok = false;
    }
  }
  out.push_back(Check::of(ok, "index-window-descriptors",
                          "index window membership matches the set descriptors",
                          "5 points, indices up to 64"));

  // Feasibility audits with minimality verified by rescan.
  int passed = 0;
  for (int a = 0; a < audits; ++a) {
    auto sample_point = [&rng]() {
      std::string pre, per;
      int plen = static_cast<int>(rng.below(3));
      for (int i = 0; i < plen; ++i) pre += rng.coin() ? '1' : '0';
      int qlen = 1 + static_cast<int>(rng.below(3));
      for (int i = 0; i < qlen; ++i) per += rng.coin() ? '1' : '0';
      return TPoint(pre, per);
    };
    TPoint t = sample_point();
    std::vector<TPoint> M;
    int mcount = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < mcount; ++i) {
      TPoint s = sample_point();
      if (s != t) M.push_back(s);
    }
    int m0 = static_cast<int>(rng.below(8));
    auto n = feasibility_audit(space, M, t, m0, feas_bound);
    if (!n) continue;
    bool good = space.in_o(*n, t);
    for (const TPoint& s : M) good = good && !space.in_o(*n, s);
    for (int k = m0 + 1; k < *n && good; ++k) {
      if (!space.in_o(k, t)) continue;
      bool clean = true;
      for (const TPoint& s : M) clean = clean && !space.in_o(k, s);
      if (clean) good = false;  // found an earlier admissible index
    }
    if (good) ++passed;
  }
  out.push_back(Check::of(passed == audits, "feasibility-audit",
                          "separating indices exist beyond any bound and are minimal",
                          dstr(passed) + "/" + dstr(audits) + " audits, bound " +
                              dstr(feas_bound)));

  ok = true;
  for (int n = 1; n <= admis_top; ++n) {
    TPoint t = admissibility_audit(space, n, feas_bound);
    if (!space.in_o(n, t) || space.in_r(t)) ok = false;
  }
  out.push_back(Check::of(ok, "admissibility-audit",
                          "every indexed set keeps a point outside the reference half",
                          "indices 1.." + dstr(admis_top)));

  // Distinctness of the indexed family on sampled pairs, separated by an
  // explicitly constructed point.
  ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    int a = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(admis_top)));
    int b = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(admis_top)));
    if (a == b) continue;
    std::string u = space.o_descriptor(a), v = space.o_descriptor(b);
    if (u.size() > v.size()) {
      std::swap(a, b);
      std::swap(u, v);
    }
    TPoint sep = TPoint("", "0");
    if (v.compare(0, u.size(), u) == 0) {
      std::string w = v;
      w[u.size()] = (w[u.size()] == '0') ? '1' : '0';
      sep = TPoint(w, "01");  // extends u, leaves v at the first free slot
    } else {
      sep = TPoint(u, "01");
    }
    if (space.in_o(a, sep) == space.in_o(b, sep)) ok = false;
  }
  out.push_back(Check::of(ok, "indexed-family-distinct",
                          "distinct indices give distinct sets, shown by a separating point",
                          "200 sampled pairs under " + dstr(admis_top)));

  ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    FinSet k = FinSet::from_mask(rng.below(1ULL << 10));
    std::string w = gamma_project(space, k, 12);
    for (int n = 1; n <= 12; ++n)
      if ((w[static_cast<size_t>(n) - 1] == '1') != k.contains(n)) ok = false;
  }
  out.push_back(Check::of(ok, "projection-faithful",
                          "singleton queries read back the address bits",
                          "50 random addresses, 12 coordinates"));
  return out;
}

ImageAuditResult audit_images(const FeasibleSpace& space, long samples, Rng rng) {
  ImageAuditResult res;
  std::vector<TPoint> pool = query_pool(space);
  SigmaStats stats;
  long bad_pointwise = 0, bad_involution = 0, bad_group = 0;

  for (long i = 0; i < samples; ++i) {
    int n = 1 + static_cast<int>(rng.below(6));
    ClopenPtr e = random_basis(space, rng, pool);
    FinSet k = FinSet::from_mask(rng.below(64));
    ClopenPtr img = sigma_image(space, n, e, &stats);
    DyadicElem tog(FinSet::of({n}));
    if (member(space, k, img) != member(space, dyadic_act(tog, k), e))
      ++bad_pointwise;
    ClopenPtr img2 = sigma_image(space, n, img);
    if (member(space, k, img2) != member(space, k, e)) ++bad_involution;
  }
  res.samples = samples;
  res.guarded_hits = stats.guarded_add;
  res.checks.push_back(Check::of(
      bad_pointwise == 0, "image-pointwise",
      "symbolic toggle image agrees with moving the point",
      dstr(static_cast<int>(samples)) + " samples, guarded branch " +
          dstr(static_cast<int>(stats.guarded_add)) + " times"));
  res.checks.push_back(Check::of(bad_involution == 0, "image-involutive",
                                 "applying the same toggle twice restores the set",
                                 dstr(static_cast<int>(samples)) + " samples"));

  for (long i = 0; i < samples / 10; ++i) {
    ClopenPtr e = random_expr(space, rng, pool, 2);
    DyadicElem g(FinSet::from_mask(rng.below(64)));
    FinSet k = FinSet::from_mask(rng.below(64));
    if (member(space, k, epsilon_image(space, g, e)) !=
        member(space, dyadic_act(g, k), e))
      ++bad_group;
  }
  res.checks.push_back(Check::of(
      bad_group == 0, "image-group-action",
      "composite images realize the group action on expressions",
      dstr(static_cast<int>(samples / 10)) + " random expressions"));
  return res;
}

std::vector<Check> audit_ergodicity(const FeasibleSpace& space, int exprs,
                                    int depth, Rng rng) {
  std::vector<Check> out;
  std::vector<TPoint> pool = query_pool(space);
  std::vector<DyadicElem> gens;
  for (int j = 1; j <= depth; ++j) gens.push_back(DyadicElem(FinSet::of({j})));

  bool fixed_ok =
      invariant_clopen_audit(space, gens, ClopenExpr::empty(), depth) ==
          InvariantVerdict::TrivialEmpty &&
      invariant_clopen_audit(space, gens, ClopenExpr::full(), depth) ==
          InvariantVerdict::TrivialFull &&
      invariant_clopen_audit(space, gens, ClopenExpr::en(1), depth) ==
          InvariantVerdict::NotInvariant;
  out.push_back(Check::of(fixed_ok, "invariant-audit-anchors",
                          "empty and full sets are invariant, a half-space is not",
                          "window depth " + dstr(depth)));

  int nontrivial = 0;
  for (int i = 0; i < exprs; ++i) {
    ClopenPtr e = random_expr(space, rng, pool, 3);
    if (invariant_clopen_audit(space, gens, e, depth) ==
        InvariantVerdict::InvariantNontrivial)
      ++nontrivial;
  }
  out.push_back(Check::of(nontrivial == 0, "invariant-audit-generated",
                          "no generated expression is invariant without being trivial",
                          dstr(exprs) + " expressions at depth " + dstr(depth)));
  return out;
}

std::vector<Check> audit_tower(const InvolutionTower& t) {
  std::vector<Check> out;
  const FeasibleSpace& sp = *t.space();
  int n = t.n();
  uint32_t m = 1u << n;
  const FinSet s0;

  auto window_point = [](uint32_t x) { return FinSet::from_mask(x); };

  bool ok = true;
  for (int j = 1; j <= n && ok; ++j) {
    bool moves = false;
    for (uint32_t x = 0; x < m; ++x) {
      FinSet p = window_point(x);
      FinSet q = t.map(j).apply(p, t.scan_cap());
      if (t.map(j).apply(q, t.scan_cap()) != p) {
        ok = false;
        break;
      }
      if (q != p) moves = true;
    }
    ok = ok && moves;
  }
  out.push_back(Check::of(ok, "tower-involutions",
                          "each level map is a nontrivial involution",
                          "all " + dstr(static_cast<int>(m)) + " window points"));

  ok = true;
  for (int i = 1; i <= n && ok; ++i)
    for (int j = i + 1; j <= n && ok; ++j)
      for (uint32_t x = 0; x < m; ++x) {
        FinSet p = window_point(x);
        FinSet a = t.map(i).apply(t.map(j).apply(p, t.scan_cap()), t.scan_cap());
        FinSet b = t.map(j).apply(t.map(i).apply(p, t.scan_cap()), t.scan_cap());
        if (a != b) {
          ok = false;
          break;
        }
      }
  out.push_back(Check::of(ok, "tower-commuting", "the level maps commute pairwise",
                          "all pairs on the window"));

  ok = true;
  for (int p = 1; p <= n && ok; ++p) {
    for (uint32_t x = 0; x < m; ++x) {
      int hits = 0;
      for (uint32_t w = 0; w < (1u << p); ++w)
        hits += member(sp, window_point(x), t.node(p, w));
      if (hits != 1) {
        ok = false;
        break;
      }
    }
  }
  out.push_back(Check::of(ok, "tower-partition",
                          "every level splits the window into disjoint covering nodes",
                          "levels 1.." + dstr(n)));

  ok = true;
  for (int p = 1; p < n && ok; ++p)
    for (uint32_t w = 0; w < (1u << p) && ok; ++w)
      for (uint32_t x = 0; x < m; ++x) {
        int parent = member(sp, window_point(x), t.node(p, w));
        int child0 = member(sp, window_point(x), t.node(p + 1, w));
        int child1 = member(sp, window_point(x), t.node(p + 1, w | (1u << p)));
        if (parent != (child0 | child1) || (child0 & child1)) {
          ok = false;
          break;
        }
      }
  out.push_back(Check::of(ok, "tower-refinement",
                          "each node is the disjoint union of its two children",
                          "levels 1.." + dstr(n)));

  ok = true;
  for (int p = 1; p <= n; ++p) {
    if (!member(sp, s0, t.node(p, 0))) ok = false;
    ClopenPtr leak = ClopenExpr::difference(
        t.node(p, 0), t.neighborhoods()[static_cast<size_t>(p) - 1]);
    if (find_witness(sp, leak, t.depth())) ok = false;
  }
  out.push_back(Check::of(ok, "tower-zero-spine",
                          "the all-zero node stays inside its neighbourhood and holds the base point",
                          "levels 1.." + dstr(n) + ", witness depth " + dstr(t.depth())));

  // Addresses: locate each window point in the level-n partition once.
  std::vector<uint32_t> addr(m, 0);
  for (uint32_t x = 0; x < m; ++x)
    for (uint32_t w = 0; w < m; ++w)
      if (member(sp, window_point(x), t.node(n, w))) {
        addr[x] = w;
        break;
      }

  ok = true;
  for (uint32_t a = 0; a < m && ok; ++a)
    for (uint32_t x = 0; x < m; ++x) {
      FinSet y = t.transport(n, a, window_point(x));
      uint32_t want = a ^ addr[x];
      if (!member(sp, y, t.node(n, want))) {
        ok = false;
        break;
      }
    }
  out.push_back(Check::of(ok, "tower-transport",
                          "transport words translate node addresses",
                          "all words against all window points"));

  std::set<uint64_t> orbit;
  bool contains_enum = true;
  for (uint32_t a = 0; a < m; ++a) orbit.insert(t.transport(n, a, s0).mask());
  for (int i = 0; i <= n; ++i)
    if (!orbit.count(enum_finset(static_cast<uint64_t>(i)).mask()))
      contains_enum = false;
  bool free_orbit = orbit.size() == m;
  bool equals_window = true;
  for (uint64_t x : orbit)
    if (x >= m) equals_window = false;
  out.push_back(Check::of(free_orbit && contains_enum && equals_window,
                          "tower-orbit",
                          "the orbit of the base point is free and fills the window, "
                          "reaching the first enumerated points",
                          dstr(static_cast<int>(orbit.size())) + " distinct images"));

  ok = true;
  for (int p = 1; p < n && ok; ++p)
    for (uint32_t x = 0; x < m; ++x) {
      FinSet y = t.map(p + 1).apply(window_point(x), t.scan_cap());
      bool same_node = true;
      for (uint32_t w = 0; w < (1u << p); ++w) {
        int a = member(sp, window_point(x), t.node(p, w));
        int b = member(sp, y, t.node(p, w));
        if (a != b) same_node = false;
      }
      if (!same_node) {
        ok = false;
        break;
      }
    }
  out.push_back(Check::of(ok, "tower-level-preserving",
                          "each new map moves points only within their current node",
                          "levels 2.." + dstr(n)));
  return out;
}

std::vector<Check> audit_zaction(const ZActionMap& z) {
  std::vector<Check> out;
  const InvolutionTower& t = z.tower();
  const FeasibleSpace& sp = *t.space();
  int n = t.n();
  uint32_t m = 1u << n;

  bool ok = true;
  for (uint32_t x = 0; x < m; ++x) {
    FinSet p = FinSet::from_mask(x);
    bool top = member(sp, p, t.node(n, m - 1)) != 0;
    bool bottom = member(sp, p, t.node(n, 0)) != 0;
    if (z.forward_defined(p) != !top) ok = false;
    if (z.backward_defined(p) != !bottom) ok = false;
  }
  out.push_back(Check::of(ok, "zaction-coverage",
                          "successor legs cover all but the top node, predecessor legs all but the bottom",
                          "stage " + dstr(n)));

  ok = true;
  FinSet x;
  for (uint32_t j = 1; j < m; ++j) {
    x = z.forward(x);
    if (x != enum_finset(j)) {
      ok = false;
      break;
    }
  }
  out.push_back(Check::of(ok, "zaction-orbit",
                          "iterating the successor from the empty set walks the canonical enumeration",
                          dstr(static_cast<int>(m - 1)) + " consecutive steps"));

  ok = member(sp, z.forward(FinSet()), t.node(1, 1)) != 0;
  out.push_back(Check::of(ok, "zaction-first-step",
                          "the first successor lands in the level-1 swap image",
                          "single step"));

  ok = true;
  for (uint32_t i = 0; i < m; ++i) {
    FinSet p = FinSet::from_mask(i);
    if (!z.forward_defined(p)) continue;
    if (z.backward(z.forward(p)) != p) {
      ok = false;
      break;
    }
  }
  out.push_back(Check::of(ok, "zaction-inverse",
                          "predecessor undoes successor wherever defined",
                          "all covered window points"));

  ok = true;
  PiecewiseMap odo = odometer_map(t.space());
  for (uint32_t i = 0; i < m; ++i) {
    FinSet p = FinSet::from_mask(i);
    if (!z.forward_defined(p)) continue;
    if (z.forward(p) != odo.apply(p, t.scan_cap())) {
      ok = false;
      break;
    }
  }
  out.push_back(Check::of(ok, "zaction-odometer",
                          "the successor agrees with the increment map on its domain",
                          "all covered window points"));
  return out;
}

Kernel<GaussRat> random_gauss_kernel(OrbitWindow win, Rng& rng) {
  Kernel<GaussRat> f(win);
  for (auto& v : f.a)
    v = GaussRat(Rational(rng.range(-9, 9), rng.range(1, 9)),
                 Rational(rng.range(-9, 9), rng.range(1, 9)));
  return f;
}

Kernel<std::complex<double>> random_float_kernel(OrbitWindow win, Rng& rng) {
  Kernel<std::complex<double>> f(win);
  for (auto& v : f.a) v = {rng.unit() * 2 - 1, rng.unit() * 2 - 1};
  return f;
}

namespace {

template <class S>
Kernel<S> random_kernel(OrbitWindow win, Rng& rng);

template <>
Kernel<GaussRat> random_kernel<GaussRat>(OrbitWindow win, Rng& rng) {
  return random_gauss_kernel(win, rng);
}

template <>
Kernel<std::complex<double>> random_kernel<std::complex<double>>(OrbitWindow win,
                                                                 Rng& rng) {
  return random_float_kernel(win, rng);
}

template <class S>
bool kmatch(const Kernel<S>& a, const Kernel<S>& b, double tol) {
  return tol == 0.0 ? kernel_equal(a, b) : kernels_close(a, b, tol);
}

}  // namespace

template <class S>
std::vector<Check> audit_groupoid_laws(OrbitWindow win, int matrices, double tol,
                                       Rng rng) {
  std::vector<Check> out;
  uint32_t m = win.size();
  std::string scope = "window n=" + dstr(win.n) + ", " + dstr(matrices) +
                      " random kernels" + (tol == 0 ? ", exact" : ", float");

  bool assoc = true, adj = true, unit_ok = true, suite_ok = true;
  bool trunc_ok = true, vanish_ok = true, conj_ok = true;
  Kernel<S> one = unit_kernel<S>(win);

  for (int it = 0; it < matrices; ++it) {
    Kernel<S> f = random_kernel<S>(win, rng);
    Kernel<S> h = random_kernel<S>(win, rng);
    Kernel<S> z = random_kernel<S>(win, rng);

    if (!kmatch(conv(conv(f, h), z), conv(f, conv(h, z)), tol)) assoc = false;
    if (!kmatch(adjoint(conv(f, h)), conv(adjoint(h), adjoint(f)), tol)) adj = false;
    if (!kmatch(adjoint(adjoint(f)), f, tol)) adj = false;
    if (!kmatch(conv(f, one), f, tol) || !kmatch(conv(one, f), f, tol))
      unit_ok = false;

    std::vector<uint32_t> gs, F;
    for (uint32_t g = 0; g < m; ++g) gs.push_back(g);
    for (uint32_t g = 0; g < m; ++g)
      if (rng.coin()) F.push_back(g);
    SuiteReport srep = identity_suite(f, gs, F, tol);
    if (!srep.ok()) suite_ok = false;

    // Truncation along a shuffled maximal chain: residuals must shrink
    // entrywise and die at the full group.
    std::vector<uint32_t> order;
    for (uint32_t p : rng.permutation(m)) order.push_back(p);
    std::vector<std::vector<uint32_t>> chain;
    std::vector<uint32_t> acc;
    for (uint32_t g : order) {
      acc.push_back(g);
      chain.push_back(acc);
    }
    auto rs = truncation_approx(f, chain);
    for (size_t j = 0; j + 1 < rs.size(); ++j)
      for (uint32_t x = 0; x < m; ++x) {
        double a = ScalarTraits<S>::to_double(ScalarTraits<S>::abs2(rs[j].d[x]));
        double b =
            ScalarTraits<S>::to_double(ScalarTraits<S>::abs2(rs[j + 1].d[x]));
        if (std::sqrt(b) > std::sqrt(a) + tol + 1e-12) trunc_ok = false;
      }
    for (uint32_t x = 0; x < m; ++x) {
      double last =
          ScalarTraits<S>::to_double(ScalarTraits<S>::abs2(rs.back().d[x]));
      if (tol == 0.0 ? last != 0.0 : std::sqrt(last) > tol) trunc_ok = false;
    }

    bool nonzero = false;
    for (const S& v : f.a) nonzero = nonzero || !ScalarTraits<S>::is_zero(v);
    if (vanishing_test(f) == nonzero) vanish_ok = false;
    if (!kmatch(truncation_term(f, gs), f, tol)) vanish_ok = false;

    uint32_t g = static_cast<uint32_t>(rng.below(m));
    Kernel<S> cf = conjugation(f, g);
    Kernel<S> want(win);
    for (uint32_t x = 0; x < m; ++x)
      for (uint32_t y = 0; y < m; ++y)
        want.at(x, y) = f.at(win.act(g, x), win.act(g, y));
    if (!kmatch(cf, want, tol)) conj_ok = false;
  }
  if (!vanishing_test(Kernel<S>(win))) vanish_ok = false;

  bool uhom = true;
  for (uint32_t g = 0; g < m; ++g)
    for (uint32_t h = 0; h < m; ++h)
      if (!kmatch(conv(u_of<S>(win, g), u_of<S>(win, h)),
                  u_of<S>(win, win.act(g, h)), tol))
        uhom = false;

  out.push_back(Check::of(assoc, "algebra-associative", "convolution associates", scope));
  out.push_back(Check::of(adj, "algebra-adjoint",
                          "the star reverses products and is involutive", scope));
  out.push_back(Check::of(unit_ok, "algebra-unit",
                          "the diagonal indicator is a two-sided unit", scope));
  out.push_back(Check::of(uhom, "translation-homomorphism",
                          "translation kernels multiply like the group", scope));
  out.push_back(Check::of(suite_ok, "compression-identities",
                          "shift, graph restriction, square-sum and tail identities",
                          scope));
  out.push_back(Check::of(trunc_ok, "truncation-monotone",
                          "residuals decrease along increasing truncation sets and vanish at the full group",
                          scope));
  out.push_back(Check::of(vanish_ok, "compression-faithful",
                          "all compressions vanish exactly for the zero kernel",
                          scope));
  out.push_back(Check::of(conj_ok, "conjugation-relabel",
                          "conjugating by a translation relabels both arguments",
                          scope));

  MasaReport mrep = masa_check(win);
  out.push_back(Check::of(mrep.diagonal_commutant && mrep.free_action,
                          "diagonal-maximal",
                          "the diagonal subalgebra is its own commutant over a free window",
                          "commutant dimension " + dstr(static_cast<int>(mrep.commutant_dim)) +
                              " of expected " + dstr(static_cast<int>(mrep.expected_dim))));
  return out;
}

template std::vector<Check> audit_groupoid_laws<GaussRat>(OrbitWindow, int, double, Rng);
template std::vector<Check> audit_groupoid_laws<std::complex<double>>(OrbitWindow, int,
                                                                      double, Rng);

std::vector<Check> audit_normalizer(OrbitWindow win, int samples, double tol,
                                    Rng rng) {
  std::vector<Check> out;
  using C = std::complex<double>;
  uint32_t m = win.size();
  bool ok = true;
  double worst = 0;

  for (int it = 0; it < samples && ok; ++it) {
    std::vector<uint32_t> perm;
    if (it == 0) {
      for (uint32_t x = 0; x < m; ++x) perm.push_back(x);  // pure phases
    } else {
      perm = rng.permutation(m);
    }
    Kernel<C> w(win);
    for (uint32_t x = 0; x < m; ++x) {
      double theta = rng.unit() * kTau;
      w.at(x, perm[x]) = std::polar(1.0, theta);
    }
    NormalizerParts parts = normalizer_decompose(w, tol);
    Kernel<C> recon = conv(parts.d, parts.v);
    double resid = std::sqrt(ScalarTraits<C>::to_double(frobenius2(sub(w, recon))));
    worst = std::max(worst, resid);
    if (resid > tol) ok = false;
    for (uint32_t x = 0; x < m; ++x) {
      int count = 0;
      for (uint32_t g = 0; g < m; ++g) count += parts.p[g][x];
      if (count != 1) ok = false;
    }
  }
  out.push_back(Check::of(
      ok, "normalizer-factorization",
      "diagonal-normalizing unitaries split into diagonal phase times translation mix",
      dstr(samples) + " samples, worst residual " + std::to_string(worst)));
  return out;
}

std::vector<Check> audit_saturation(std::shared_ptr<const FeasibleSpace> space,
                                    int stages, int window_depth) {
  std::vector<Check> out;
  const FeasibleSpace& sp = *space;
  uint32_t wsize = 1u << window_depth;

  std::vector<ClopenPtr> gens;
  std::vector<std::vector<DyadicElem>> subs;
  for (int p = 1; p <= stages; ++p) {
    gens.push_back(ClopenExpr::en(p));
    std::vector<DyadicElem> sg;
    for (uint32_t g = 0; g < (1u << p); ++g)
      sg.push_back(DyadicElem(FinSet::from_mask(g)));
    subs.push_back(std::move(sg));
  }
  BooleanSaturation sat = saturate_boolean(space, gens, subs, window_depth);

  // Atom index of every window point at every stage.
  std::vector<std::vector<int>> where(sat.stages.size(),
                                      std::vector<int>(wsize, -1));
  bool part_ok = true;
  for (size_t p = 0; p < sat.stages.size(); ++p)
    for (uint32_t x = 0; x < wsize; ++x) {
      int hits = 0;
      for (size_t a = 0; a < sat.stages[p].atoms.size(); ++a)
        if (member(sp, FinSet::from_mask(x), sat.stages[p].atoms[a])) {
          ++hits;
          where[p][x] = static_cast<int>(a);
        }
      if (hits != 1) part_ok = false;
    }
  out.push_back(Check::of(part_ok, "saturation-partition",
                          "stage atoms cover every window point exactly once",
                          dstr(stages) + " stages at window depth " + dstr(window_depth)));

  bool incr_ok = true;
  for (size_t p = 1; p < sat.stages.size(); ++p)
    for (uint32_t x = 0; x < wsize; ++x)
      for (uint32_t y = 0; y < wsize; ++y)
        if (where[p][x] == where[p][y] && where[p - 1][x] != where[p - 1][y])
          incr_ok = false;
  out.push_back(Check::of(incr_ok, "saturation-increasing",
                          "each stage refines the one before it",
                          "pointwise on the window"));

  bool gen_ok = true;
  for (size_t p = 0; p < sat.stages.size(); ++p)
    for (size_t j = 0; j <= p; ++j)
      for (uint32_t x = 0; x < wsize; ++x)
        for (uint32_t y = 0; y < wsize; ++y)
          if (where[p][x] == where[p][y] &&
              member(sp, FinSet::from_mask(x), gens[j]) !=
                  member(sp, FinSet::from_mask(y), gens[j]))
            gen_ok = false;
  out.push_back(Check::of(gen_ok, "saturation-generators",
                          "every earlier generator is a union of stage atoms",
                          "pointwise on the window"));

  bool inv_ok = true;
  for (size_t p = 0; p < sat.stages.size(); ++p)
    for (const DyadicElem& g : sat.subgroups[p])
      for (const ClopenPtr& a : sat.stages[p].atoms) {
        ClopenPtr img = epsilon_image(sp, g, a);
        bool matched = false;
        for (const ClopenPtr& b : sat.stages[p].atoms)
          if (equal_on_window(sp, img, b, window_depth)) matched = true;
        if (!matched) inv_ok = false;
      }
  out.push_back(Check::of(inv_ok, "saturation-invariant",
                          "subgroup images permute the atom list",
                          "all subgroup elements at every stage"));

  bool dim_ok = true;
  std::string dims = "dimensions (";
  uint64_t prev = 0;
  for (int p = 1; p <= stages; ++p) {
    FinDimAlgebra fd = findim_algebra(sat, p);
    if (!fd.free_on_atoms) dim_ok = false;
    if (fd.dimension != fd.atom_count * fd.group_order) dim_ok = false;
    if (fd.dimension < prev) dim_ok = false;
    prev = fd.dimension;
    dims += (p > 1 ? "," : "") + std::to_string(fd.dimension);
  }
  dims += ")";
  out.push_back(Check::of(dim_ok, "saturation-dimensions",
                          "stage algebra dimensions are exact span ranks, increasing",
                          dims));
  return out;
}

}  // namespace stonework
