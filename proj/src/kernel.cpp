#include "stonework/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace stonework {

namespace {

template <class S>
bool scalar_close(const S& a, const S& b, double tol) {
  if (tol == 0.0) return ScalarTraits<S>::is_zero(a - b);
  return ScalarTraits<S>::to_double(ScalarTraits<S>::abs2(a - b)) <= tol * tol;
}

template <class S>
S embed_real(const typename ScalarTraits<S>::Real& r);

template <>
GaussRat embed_real<GaussRat>(const Rational& r) {
  return GaussRat(r, Rational(0));
}

template <>
std::complex<double> embed_real<std::complex<double>>(const double& r) {
  return {r, 0.0};
}

}  // namespace

template <class S>
Kernel<S> truncation_term(const Kernel<S>& z, const std::vector<uint32_t>& F) {
  Kernel<S> acc(z.win);
  for (uint32_t g : F) {
    Diagonal<S> dg = diag_of(conv(z, u_of<S>(z.win, g)));
    acc = add(acc, conv(embed_diag(dg), u_of<S>(z.win, g)));
  }
  return acc;
}

template <class S>
SuiteReport identity_suite(const Kernel<S>& f, const std::vector<uint32_t>& gs,
                           const std::vector<uint32_t>& F, double tol) {
  SuiteReport rep;
  uint32_t m = f.win.size();

  for (uint32_t g : gs) {
    // (1) f * u_g shifts the second argument by g.
    Kernel<S> fu = conv(f, u_of<S>(f.win, g));
    ++rep.checks;
    for (uint32_t x = 0; x < m && rep.failures == 0; ++x)
      for (uint32_t y = 0; y < m; ++y)
        if (!scalar_close(fu.at(x, y), f.at(x, f.win.act(g, y)), tol)) {
          rep.fail("shift identity at g=" + std::to_string(g));
          break;
        }

    // (2) compress then translate back: f cut to the graph of g.
    Kernel<S> back = conv(embed_diag(diag_of(fu)), u_of<S>(f.win, g));
    ++rep.checks;
    for (uint32_t x = 0; x < m && rep.failures == 0; ++x)
      for (uint32_t y = 0; y < m; ++y) {
        S want = (y == f.win.act(g, x)) ? f.at(x, y) : ScalarTraits<S>::zero();
        if (!scalar_close(back.at(x, y), want, tol)) {
          rep.fail("graph restriction at g=" + std::to_string(g));
          break;
        }
      }
  }

  // (3) diagonal of f f* = sum over the whole group of squared compressions.
  // The left side is real nonnegative, so compare scalars directly.
  Diagonal<S> lhs = diag_of(conv(f, adjoint(f)));
  ++rep.checks;
  for (uint32_t x = 0; x < m; ++x) {
    typename ScalarTraits<S>::Real rhs{};
    for (uint32_t g = 0; g < m; ++g)
      rhs = rhs + ScalarTraits<S>::abs2(f.at(x, f.win.act(g, x)));
    if (!scalar_close(lhs.d[x], embed_real<S>(rhs), tol)) {
      rep.fail("square sum identity at x=" + std::to_string(x));
      break;
    }
  }

  // (4) the residual after truncating over F carries exactly the tail sums.
  Kernel<S> fF = truncation_term(f, F);
  Kernel<S> r = sub(f, fF);
  Diagonal<S> rd = diag_of(conv(r, adjoint(r)));
  ++rep.checks;
  for (uint32_t x = 0; x < m; ++x) {
    typename ScalarTraits<S>::Real tail{};
    for (uint32_t g = 0; g < m; ++g) {
      if (std::find(F.begin(), F.end(), g) != F.end()) continue;
      tail = tail + ScalarTraits<S>::abs2(f.at(x, f.win.act(g, x)));
    }
    if (!scalar_close(rd.d[x], embed_real<S>(tail), tol)) {
      rep.fail("tail identity at x=" + std::to_string(x));
      break;
    }
  }
  return rep;
}

template <class S>
std::vector<Diagonal<S>> truncation_approx(
    const Kernel<S>& z, const std::vector<std::vector<uint32_t>>& chain) {
  for (size_t j = 0; j + 1 < chain.size(); ++j) {
    std::vector<uint32_t> a = chain[j], b = chain[j + 1];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    bool subset = std::includes(b.begin(), b.end(), a.begin(), a.end());
    if (!subset || a.size() >= b.size())
      throw std::invalid_argument("truncation_approx: chain not strictly increasing");
  }
  std::vector<Diagonal<S>> out;
  for (const auto& F : chain) {
    Kernel<S> r = sub(z, truncation_term(z, F));
    out.push_back(diag_of(conv(r, adjoint(r))));
  }
  return out;
}

template <class S>
bool vanishing_test(const Kernel<S>& z) {
  uint32_t m = z.win.size();
  for (uint32_t g = 0; g < m; ++g) {
    Diagonal<S> d = diag_of(conv(z, u_of<S>(z.win, g)));
    for (const S& v : d.d)
      if (!ScalarTraits<S>::is_zero(v)) return false;
  }
  return true;
}

template <class S>
Kernel<S> conjugation(const Kernel<S>& f, uint32_t g) {
  Kernel<S> u = u_of<S>(f.win, g);
  return conv(adjoint(u), conv(f, u));
}

MasaReport masa_check(OrbitWindow w) {
  MasaReport rep;
  uint64_t m = w.size();
  rep.expected_dim = m;

  // Solve [X, d_i] = 0 for every diagonal matrix unit d_i.  Each constraint
  // row touches a single unknown X_ab with coefficient (delta_bi - delta_ai),
  // but the rank is computed generically rather than read off.
  std::vector<std::vector<Rational>> rows;
  for (uint64_t i = 0; i < m; ++i) {
    for (uint64_t a = 0; a < m; ++a) {
      for (uint64_t b = 0; b < m; ++b) {
        int coef = (b == i ? 1 : 0) - (a == i ? 1 : 0);
        if (coef == 0) continue;
        std::vector<Rational> row(m * m, Rational(0));
        row[a * m + b] = coef;
        rows.push_back(std::move(row));
      }
    }
  }
  uint64_t rank = rational_rank(std::move(rows));
  rep.commutant_dim = m * m - rank;
  rep.diagonal_commutant = (rep.commutant_dim == m);

  rep.free_action = true;
  for (uint32_t g = 1; g < m; ++g)
    for (uint32_t x = 0; x < m; ++x)
      if (w.act(g, x) == x) rep.free_action = false;
  return rep;
}

NormalizerParts normalizer_decompose(const Kernel<std::complex<double>>& w,
                                     double tol) {
  using C = std::complex<double>;
  OrbitWindow win = w.win;
  uint32_t m = win.size();

  Kernel<C> one = unit_kernel<C>(win);
  if (!kernels_close(conv(w, adjoint(w)), one, tol) ||
      !kernels_close(conv(adjoint(w), w), one, tol))
    throw std::invalid_argument("normalizer_decompose: not unitary");

  // w e_ii w* has entries w(x,i) conj(w(y,i)); off-diagonal mass means the
  // conjugated diagonal leaks outside the diagonal.
  for (uint32_t i = 0; i < m; ++i)
    for (uint32_t x = 0; x < m; ++x)
      for (uint32_t y = 0; y < m; ++y) {
        if (x == y) continue;
        if (std::abs(w.at(x, i) * std::conj(w.at(y, i))) > tol)
          throw std::invalid_argument("normalizer_decompose: not normalizing");
      }

  NormalizerParts parts(win);
  parts.p.assign(m, std::vector<int>(m, 0));
  for (uint32_t g = 0; g < m; ++g) {
    Diagonal<C> dg = diag_of(conv(w, u_of<C>(win, g)));
    for (uint32_t x = 0; x < m; ++x)
      parts.p[g][x] = std::norm(dg.d[x]) > tol * tol ? 1 : 0;
  }
  for (uint32_t x = 0; x < m; ++x) {
    int count = 0;
    for (uint32_t g = 0; g < m; ++g) count += parts.p[g][x];
    if (count != 1)
      throw std::runtime_error(
          "normalizer_decompose: projections do not resolve the identity "
          "(adjust tol)");
  }

  // v places each point on its displacement graph; d = w v* is then the
  // diagonal phase left over.
  for (uint32_t g = 0; g < m; ++g) {
    Diagonal<C> pg(win);
    for (uint32_t x = 0; x < m; ++x) pg.d[x] = parts.p[g][x] ? 1.0 : 0.0;
    parts.v = add(parts.v, conv(embed_diag(pg), u_of<C>(win, g)));
  }
  parts.d = conv(w, adjoint(parts.v));
  for (uint32_t x = 0; x < m; ++x)
    for (uint32_t y = 0; y < m; ++y) {
      if (x == y) continue;
      if (std::abs(parts.d.at(x, y)) > tol)
        throw std::runtime_error("normalizer_decompose: residual factor not diagonal");
    }
  for (uint32_t x = 0; x < m; ++x)
    if (std::abs(std::abs(parts.d.at(x, x)) - 1.0) > tol)
      throw std::runtime_error("normalizer_decompose: diagonal factor not unimodular");
  return parts;
}

uint64_t rational_rank(std::vector<std::vector<Rational>> rows) {
  uint64_t rank = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  size_t pivot_row = 0;
  for (size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    size_t sel = pivot_row;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[pivot_row]);
    const Rational p = rows[pivot_row][c];
    for (size_t r = pivot_row + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      Rational f = rows[r][c] / p;
      for (size_t cc = c; cc < cols; ++cc) rows[r][cc] -= f * rows[pivot_row][cc];
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

uint64_t gauss_rank(std::vector<std::vector<GaussRat>> rows) {
  uint64_t rank = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  size_t pivot_row = 0;
  for (size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    size_t sel = pivot_row;
    while (sel < rows.size() && ScalarTraits<GaussRat>::is_zero(rows[sel][c])) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[pivot_row]);
    const GaussRat p = rows[pivot_row][c];
    for (size_t r = pivot_row + 1; r < rows.size(); ++r) {
      if (ScalarTraits<GaussRat>::is_zero(rows[r][c])) continue;
      GaussRat f = rows[r][c] / p;
      for (size_t cc = c; cc < cols; ++cc)
        rows[r][cc] = rows[r][cc] - f * rows[pivot_row][cc];
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

template Kernel<GaussRat> truncation_term(const Kernel<GaussRat>&,
                                          const std::vector<uint32_t>&);
template Kernel<std::complex<double>> truncation_term(
    const Kernel<std::complex<double>>&, const std::vector<uint32_t>&);
template SuiteReport identity_suite(const Kernel<GaussRat>&,
                                    const std::vector<uint32_t>&,
                                    const std::vector<uint32_t>&, double);
template SuiteReport identity_suite(const Kernel<std::complex<double>>&,
                                    const std::vector<uint32_t>&,
                                    const std::vector<uint32_t>&, double);
template std::vector<Diagonal<GaussRat>> truncation_approx(
    const Kernel<GaussRat>&, const std::vector<std::vector<uint32_t>>&);
template std::vector<Diagonal<std::complex<double>>> truncation_approx(
    const Kernel<std::complex<double>>&, const std::vector<std::vector<uint32_t>>&);
template bool vanishing_test(const Kernel<GaussRat>&);
template bool vanishing_test(const Kernel<std::complex<double>>&);
template Kernel<GaussRat> conjugation(const Kernel<GaussRat>&, uint32_t);
template Kernel<std::complex<double>> conjugation(const Kernel<std::complex<double>>&,
                                                  uint32_t);

}  // namespace stonework
