#include "stonework/fermion.hpp"

#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "stonework/rng.hpp"

namespace stonework {

TowerStage::TowerStage(int n_) : n(n_) {
  if (n < 1 || n > 12) throw std::domain_error("TowerStage: n out of range");
  for (int j = 1; j <= n; ++j) flip.push_back(1u << (j - 1));
}

TowerStage stage(int n) { return TowerStage(n); }

std::vector<int> TowerStage::e_diag(int j) const {
  std::vector<int> d(dim());
  for (uint32_t x = 0; x < dim(); ++x)
    d[x] = (x & flip.at(static_cast<size_t>(j) - 1)) == 0 ? 1 : 0;
  return d;
}

std::vector<uint32_t> TowerStage::u_perm(int j) const {
  std::vector<uint32_t> p(dim());
  for (uint32_t x = 0; x < dim(); ++x) p[x] = x ^ flip.at(static_cast<size_t>(j) - 1);
  return p;
}

std::vector<long long> TowerStage::e_dense(int j) const {
  uint32_t m = dim();
  std::vector<long long> a(static_cast<size_t>(m) * m, 0);
  std::vector<int> d = e_diag(j);
  for (uint32_t x = 0; x < m; ++x) a[static_cast<size_t>(x) * m + x] = d[x];
  return a;
}

std::vector<long long> TowerStage::u_dense(int j) const {
  uint32_t m = dim();
  std::vector<long long> a(static_cast<size_t>(m) * m, 0);
  std::vector<uint32_t> p = u_perm(j);
  for (uint32_t x = 0; x < m; ++x) a[static_cast<size_t>(x) * m + p[x]] = 1;
  return a;
}

namespace {

using Mat = std::vector<long long>;

Mat mat_mul(const Mat& a, const Mat& b, uint32_t m) {
  Mat c(static_cast<size_t>(m) * m, 0);
  for (uint32_t i = 0; i < m; ++i)
    for (uint32_t k = 0; k < m; ++k) {
      long long aik = a[static_cast<size_t>(i) * m + k];
      if (aik == 0) continue;
      for (uint32_t j = 0; j < m; ++j)
        c[static_cast<size_t>(i) * m + j] += aik * b[static_cast<size_t>(k) * m + j];
    }
  return c;
}

Mat mat_id(uint32_t m) {
  Mat c(static_cast<size_t>(m) * m, 0);
  for (uint32_t i = 0; i < m; ++i) c[static_cast<size_t>(i) * m + i] = 1;
  return c;
}

Mat mat_sub(const Mat& a, const Mat& b) {
  Mat c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

bool mat_zero(const Mat& a) {
  for (long long v : a)
    if (v != 0) return false;
  return true;
}

}  // namespace

bool relations_check(const TowerStage& st) {
  uint32_t m = st.dim();
  // Pointwise form first, for every n.
  for (int j = 1; j <= st.n; ++j) {
    std::vector<int> ej = st.e_diag(j);
    std::vector<uint32_t> uj = st.u_perm(j);
    for (uint32_t x = 0; x < m; ++x) {
      if (uj[uj[x]] != x) return false;
      if (ej[uj[x]] != 1 - ej[x]) return false;  // u_j e_j u_j = 1 - e_j
    }
    for (int k = 1; k <= st.n; ++k) {
      if (k == j) continue;
      std::vector<int> ek = st.e_diag(k);
      for (uint32_t x = 0; x < m; ++x)
        if (ek[uj[x]] != ek[x]) return false;  // u_j e_k u_j = e_k
    }
  }
  if (st.n > 6) return true;  // dense confirmation below is for small stages

  Mat one = mat_id(m);
  for (int j = 1; j <= st.n; ++j) {
    Mat e = st.e_dense(j), u = st.u_dense(j);
    if (!mat_zero(mat_sub(mat_mul(u, u, m), one))) return false;
    if (!mat_zero(mat_sub(mat_mul(mat_mul(u, e, m), u, m), mat_sub(one, e))))
      return false;
    if (!mat_zero(mat_sub(mat_mul(e, e, m), e))) return false;
    for (int k = 1; k <= st.n; ++k) {
      Mat uk = st.u_dense(k);
      if (!mat_zero(mat_sub(mat_mul(u, uk, m), mat_mul(uk, u, m)))) return false;
      if (k == j) continue;
      Mat ek = st.e_dense(k);
      if (!mat_zero(mat_sub(mat_mul(mat_mul(u, ek, m), u, m), ek))) return false;
    }
  }
  return true;
}

IndependenceReport independence_check(const TowerStage& st) {
  IndependenceReport rep;
  uint32_t m = st.dim();
  rep.all_rank_one = true;
  for (uint32_t alpha = 0; alpha < m; ++alpha) {
    // Signed product: factor j is e_j when bit j of alpha is clear,
    // 1 - e_j when set.  All factors are diagonal, so take the pointwise
    // product of diagonals and count its support.
    uint64_t rank = 0;
    bool is_identity = true;
    for (uint32_t x = 0; x < m; ++x) {
      int v = 1;
      for (int j = 1; j <= st.n; ++j) {
        int ej = (x & st.flip[static_cast<size_t>(j) - 1]) == 0 ? 1 : 0;
        int factor = (alpha & st.flip[static_cast<size_t>(j) - 1]) ? 1 - ej : ej;
        v *= factor;
      }
      if (v != 0) ++rank;
      else is_identity = false;
    }
    rep.ranks.push_back(rank);
    if (rank != 1 || (is_identity && m > 1)) rep.all_rank_one = false;
  }
  return rep;
}

SpanReport full_matrix_check(const TowerStage& st) {
  if (st.n > 4)
    throw std::domain_error("full_matrix_check: exact closure limited to n <= 4");
  uint32_t m = st.dim();

  // Every word in the generators is a masked translation: a diagonal 0/1
  // cut followed by a bit flip.  Code a word as (flip mask g, diagonal
  // support mask d) over the 2^n basis indices; multiplication stays in
  // that shape, so closure is a walk over a finite set of codes.
  auto shift = [m](uint64_t d, uint32_t g) {
    uint64_t out = 0;
    for (uint32_t x = 0; x < m; ++x)
      if (d & (1ULL << (x ^ g))) out |= 1ULL << x;
    return out;
  };
  uint64_t full = (m == 64) ? ~0ULL : ((1ULL << m) - 1);

  std::vector<std::pair<uint32_t, uint64_t>> gens;
  gens.emplace_back(0, full);  // the unit
  for (int j = 1; j <= st.n; ++j) {
    uint64_t ed = 0;
    std::vector<int> dj = st.e_diag(j);
    for (uint32_t x = 0; x < m; ++x)
      if (dj[x]) ed |= 1ULL << x;
    gens.emplace_back(0, ed);                                    // e_j
    gens.emplace_back(st.flip[static_cast<size_t>(j) - 1], full);  // u_j
  }

  std::set<std::pair<uint32_t, uint64_t>> seen(gens.begin(), gens.end());
  std::deque<std::pair<uint32_t, uint64_t>> queue(gens.begin(), gens.end());
  const size_t budget = 1u << 20;
  while (!queue.empty()) {
    auto [g2, d2] = queue.front();
    queue.pop_front();
    for (const auto& [g1, d1] : gens) {
      // (g1, d1) * (g2, d2): cut by d1, flip by g1, then the rest.
      std::pair<uint32_t, uint64_t> w{g1 ^ g2, d1 & shift(d2, g1)};
      if (w.second == 0) continue;
      if (seen.insert(w).second) queue.push_back(w);
      if (seen.size() > budget)
        throw std::runtime_error("full_matrix_check: closure budget exceeded");
    }
  }

  // Rank sector by sector: words with different flip masks have disjoint
  // matrix support, so the span dimension adds up.
  std::map<uint32_t, std::vector<uint64_t>> sectors;
  for (const auto& [g, d] : seen) sectors[g].push_back(d);
  SpanReport rep;
  rep.expected = static_cast<uint64_t>(m) * m;
  for (const auto& [g, ds] : sectors) {
    (void)g;
    std::vector<std::vector<Rational>> rows;
    for (uint64_t d : ds) {
      std::vector<Rational> row(m);
      for (uint32_t x = 0; x < m; ++x) row[x] = (d >> x) & 1 ? 1 : 0;
      rows.push_back(std::move(row));
    }
    rep.dimension += rational_rank(std::move(rows));
  }
  rep.full_matrix_algebra = (rep.dimension == rep.expected);
  return rep;
}

BooleanSaturation saturate_boolean(std::shared_ptr<const FeasibleSpace> space,
                                   std::vector<ClopenPtr> gens,
                                   std::vector<std::vector<DyadicElem>> subgroups,
                                   int window_depth) {
  if (gens.empty() || gens.size() != subgroups.size())
    throw std::invalid_argument("saturate_boolean: generators and subgroups must pair up");
  for (const auto& sg : subgroups) {
    bool has_id = false;
    for (const DyadicElem& g : sg) has_id = has_id || g.is_identity();
    if (!has_id)
      throw std::invalid_argument("saturate_boolean: subgroup missing the identity");
  }

  BooleanSaturation sat;
  sat.space = space;
  sat.gens = gens;
  sat.subgroups = subgroups;
  sat.window_depth = window_depth;
  const FeasibleSpace& sp = *space;

  std::vector<ClopenPtr> prev_atoms;
  for (size_t p = 0; p < gens.size(); ++p) {
    std::vector<ClopenPtr> family = prev_atoms;
    family.push_back(gens[p]);

    // Saturate under the p-th subgroup, then drop window duplicates.
    std::vector<ClopenPtr> sets;
    for (const ClopenPtr& f : family)
      for (const DyadicElem& g : subgroups[p]) {
        ClopenPtr img = epsilon_image(sp, g, f);
        bool dup = false;
        for (const ClopenPtr& s : sets)
          if (equal_on_window(sp, s, img, window_depth)) {
            dup = true;
            break;
          }
        if (!dup) sets.push_back(img);
      }
    if (sets.size() > 16)
      throw std::runtime_error("saturate_boolean: saturation budget exceeded");

    SaturationStage stg;
    for (uint64_t pattern = 0; pattern < (1ULL << sets.size()); ++pattern) {
      ClopenPtr atom = ClopenExpr::full();
      for (size_t i = 0; i < sets.size(); ++i) {
        atom = ClopenExpr::intersect(
            atom, (pattern >> i) & 1 ? sets[i] : ClopenExpr::complement(sets[i]));
      }
      if (find_witness(sp, atom, window_depth))
        stg.atoms.push_back(atom);
      else
        ++stg.dropped_empty;
    }
    prev_atoms = stg.atoms;
    sat.stages.push_back(std::move(stg));
  }
  return sat;
}

FinDimAlgebra findim_algebra(const BooleanSaturation& sat, int p) {
  if (p < 1 || static_cast<size_t>(p) > sat.stages.size())
    throw std::out_of_range("findim_algebra: stage out of range");
  const FeasibleSpace& sp = *sat.space;
  const auto& atoms = sat.stages[static_cast<size_t>(p) - 1].atoms;
  const auto& gamma = sat.subgroups[static_cast<size_t>(p) - 1];
  int w = sat.window_depth;
  for (const DyadicElem& g : gamma)
    if (g.support().max() > w)
      throw std::invalid_argument("findim_algebra: subgroup outgrows the window");

  FinDimAlgebra out;
  out.stage = p;
  out.atom_count = atoms.size();
  out.group_order = gamma.size();

  // Freeness on atoms: no nontrivial subgroup element maps an atom onto
  // itself within the window.
  out.free_on_atoms = true;
  for (const DyadicElem& g : gamma) {
    if (g.is_identity()) continue;
    for (const ClopenPtr& a : atoms)
      if (equal_on_window(sp, epsilon_image(sp, g, a), a, w))
        out.free_on_atoms = false;
  }

  // Span rank on the window representation.  Sectors indexed by the
  // subgroup element are support-disjoint, and each holds the atom
  // indicator vectors, so rank once and scale by the group order.
  std::vector<std::vector<Rational>> rows;
  uint64_t pts = 1ULL << w;
  for (const ClopenPtr& a : atoms) {
    std::vector<Rational> row(pts);
    for (uint64_t x = 0; x < pts; ++x)
      row[x] = member(sp, enum_finset(x), a) ? 1 : 0;
    rows.push_back(std::move(row));
  }
  out.dimension = out.group_order * rational_rank(std::move(rows));
  return out;
}

std::vector<Check> afd_audit(int max_n, uint64_t seed) {
  if (max_n < 1 || max_n > 6)
    throw std::domain_error("afd_audit: max_n out of range");
  std::vector<Check> out;

  // Stage inclusions: the (n+1)-stage generators restricted to the doubled
  // index set are two diagonal copies of the n-stage ones.
  bool incl_ok = true;
  for (int n = 1; n < max_n; ++n) {
    TowerStage a = stage(n), b = stage(n + 1);
    uint32_t ma = a.dim(), mb = b.dim();
    for (int j = 1; j <= n && incl_ok; ++j) {
      Mat ea = a.e_dense(j), eb = b.e_dense(j);
      Mat ua = a.u_dense(j), ub = b.u_dense(j);
      for (uint32_t x = 0; x < mb && incl_ok; ++x)
        for (uint32_t y = 0; y < mb; ++y) {
          long long we = (x / ma == y / ma)
                             ? ea[static_cast<size_t>(x % ma) * ma + (y % ma)]
                             : 0;
          long long wu = (x / ma == y / ma)
                             ? ua[static_cast<size_t>(x % ma) * ma + (y % ma)]
                             : 0;
          if (eb[static_cast<size_t>(x) * mb + y] != we ||
              ub[static_cast<size_t>(x) * mb + y] != wu) {
            incl_ok = false;
            break;
          }
        }
    }
  }
  out.push_back(Check::of(incl_ok, "stage-inclusion",
                          "each stage embeds in the next as two diagonal blocks",
                          "dense identity up to n=" + std::to_string(max_n)));

  bool rel_ok = true;
  for (int n = 1; n <= max_n; ++n) rel_ok = rel_ok && relations_check(stage(n));
  out.push_back(Check::of(rel_ok, "stage-relations",
                          "flip relations hold exactly at every stage",
                          "n=1.." + std::to_string(max_n)));

  int span_top = std::min(max_n, 4);
  bool span_ok = true;
  for (int n = 1; n <= span_top; ++n) {
    SpanReport sr = full_matrix_check(stage(n));
    span_ok = span_ok && sr.full_matrix_algebra;
  }
  out.push_back(Check::of(span_ok, "stage-span",
                          "generators span the full matrix algebra",
                          "exact closure, n=1.." + std::to_string(span_top)));

  // Window truncation: residuals fall monotonically to zero along a
  // maximal chain.
  {
    OrbitWindow w(3);
    Rng rng = Rng(seed).fork("afd-truncation");
    Kernel<GaussRat> z(w);
    for (auto& v : z.a)
      v = GaussRat(Rational(rng.range(-4, 4), rng.range(1, 4)),
                   Rational(rng.range(-4, 4), rng.range(1, 4)));
    std::vector<std::vector<uint32_t>> chain;
    std::vector<uint32_t> acc;
    for (uint32_t g = 0; g < w.size(); ++g) {
      acc.push_back(g);
      chain.push_back(acc);
    }
    auto rs = truncation_approx(z, chain);
    bool mono = true;
    for (size_t j = 0; j + 1 < rs.size(); ++j)
      for (uint32_t x = 0; x < w.size(); ++x)
        if (rs[j].d[x].re < rs[j + 1].d[x].re) mono = false;
    bool final_zero = true;
    for (uint32_t x = 0; x < w.size(); ++x)
      if (!ScalarTraits<GaussRat>::is_zero(rs.back().d[x])) final_zero = false;
    out.push_back(Check::of(mono && final_zero, "window-truncation",
                            "truncation residuals decrease and vanish at the full group",
                            "window n=3, exact scalars"));
  }

  out.push_back(Check::open(
      "limit-afd",
      "finite stages exhaust the limit algebra only in the limit",
      "verified stagewise up to n=" + std::to_string(max_n) +
          "; the infinite statement is outside finite checking"));
  out.push_back(Check::open(
      "strong-hyperfiniteness-gap",
      "uniform-window finite approximation beyond stagewise evidence",
      "no finite counterexample; question left open"));
  return out;
}

}  // namespace stonework
