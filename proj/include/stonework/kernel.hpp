#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stonework/scalars.hpp"

namespace stonework {

/// Finite window on the dense orbit: the 2^n points addressed by subsets of
/// {1..n}, acted on by the 2^n group elements supported there.  Points and
/// elements are both coded as bitmasks; the action is xor.
struct OrbitWindow {
  int n;

  explicit OrbitWindow(int n_) : n(n_) {
    if (n < 0 || n > 12) throw std::domain_error("OrbitWindow: n out of range");
  }
  uint32_t size() const { return 1u << n; }
  uint32_t act(uint32_t g, uint32_t x) const { return g ^ x; }
  bool operator==(const OrbitWindow& o) const { return n == o.n; }
};

/// Function on window pairs (x, y); equivalently a size x size matrix.
/// Products, adjoints and the diagonal expectation realize the finite slice
/// of the orbit-pair convolution algebra.
template <class S>
struct Kernel {
  OrbitWindow win;
  std::vector<S> a;  // row-major, a[x * size + y]

  explicit Kernel(OrbitWindow w)
      : win(w), a(static_cast<size_t>(w.size()) * w.size(), ScalarTraits<S>::zero()) {}

  S& at(uint32_t x, uint32_t y) { return a[static_cast<size_t>(x) * win.size() + y]; }
  const S& at(uint32_t x, uint32_t y) const {
    return a[static_cast<size_t>(x) * win.size() + y];
  }
};

/// Diagonal element: one scalar per window point.
template <class S>
struct Diagonal {
  OrbitWindow win;
  std::vector<S> d;

  explicit Diagonal(OrbitWindow w) : win(w), d(w.size(), ScalarTraits<S>::zero()) {}
};

template <class S>
void check_same_window(const Kernel<S>& f, const Kernel<S>& h) {
  if (!(f.win == h.win)) throw std::invalid_argument("kernel: window mismatch");
}

/// Convolution over the orbit window: sum over the middle point.  Identical
/// to the matrix product in this coding.
template <class S>
Kernel<S> conv(const Kernel<S>& f, const Kernel<S>& h) {
  check_same_window(f, h);
  uint32_t m = f.win.size();
  Kernel<S> out(f.win);
  for (uint32_t x = 0; x < m; ++x) {
    for (uint32_t y = 0; y < m; ++y) {
      const S& fxy = f.at(x, y);
      if (ScalarTraits<S>::is_zero(fxy)) continue;
      for (uint32_t z = 0; z < m; ++z) {
        out.at(x, z) = out.at(x, z) + fxy * h.at(y, z);
      }
    }
  }
  return out;
}

template <class S>
Kernel<S> adjoint(const Kernel<S>& f) {
  uint32_t m = f.win.size();
  Kernel<S> out(f.win);
  for (uint32_t x = 0; x < m; ++x)
    for (uint32_t y = 0; y < m; ++y)
      out.at(x, y) = ScalarTraits<S>::conj(f.at(y, x));
  return out;
}

template <class S>
Kernel<S> add(const Kernel<S>& f, const Kernel<S>& h) {
  check_same_window(f, h);
  Kernel<S> out(f.win);
  for (size_t i = 0; i < f.a.size(); ++i) out.a[i] = f.a[i] + h.a[i];
  return out;
}

template <class S>
Kernel<S> sub(const Kernel<S>& f, const Kernel<S>& h) {
  check_same_window(f, h);
  Kernel<S> out(f.win);
  for (size_t i = 0; i < f.a.size(); ++i) out.a[i] = f.a[i] - h.a[i];
  return out;
}

/// Diagonal expectation: keep (x, x), drop the rest.
template <class S>
Diagonal<S> diag_of(const Kernel<S>& f) {
  Diagonal<S> out(f.win);
  for (uint32_t x = 0; x < f.win.size(); ++x) out.d[x] = f.at(x, x);
  return out;
}

/// Embed a diagonal back as a kernel supported on the unit.
template <class S>
Kernel<S> embed_diag(const Diagonal<S>& d) {
  Kernel<S> out(d.win);
  for (uint32_t x = 0; x < d.win.size(); ++x) out.at(x, x) = d.d[x];
  return out;
}

/// Unit: indicator of the diagonal.
template <class S>
Kernel<S> unit_kernel(OrbitWindow w) {
  Kernel<S> out(w);
  for (uint32_t x = 0; x < w.size(); ++x) out.at(x, x) = ScalarTraits<S>::one();
  return out;
}

/// Translation unitary of the group element g: supported on the pairs
/// (x, gx).
template <class S>
Kernel<S> u_of(OrbitWindow w, uint32_t g) {
  Kernel<S> out(w);
  for (uint32_t x = 0; x < w.size(); ++x)
    out.at(x, w.act(g, x)) = ScalarTraits<S>::one();
  return out;
}

template <class S>
typename ScalarTraits<S>::Real frobenius2(const Kernel<S>& f) {
  typename ScalarTraits<S>::Real s{};
  for (const S& v : f.a) s = s + ScalarTraits<S>::abs2(v);
  return s;
}

template <class S>
bool kernels_close(const Kernel<S>& f, const Kernel<S>& h, double tol) {
  Kernel<S> d = sub(f, h);
  return ScalarTraits<S>::to_double(frobenius2(d)) <= tol * tol;
}

template <class S>
bool kernel_equal(const Kernel<S>& f, const Kernel<S>& h) {
  check_same_window(f, h);
  for (size_t i = 0; i < f.a.size(); ++i)
    if (!(ScalarTraits<S>::is_zero(f.a[i] - h.a[i]))) return false;
  return true;
}

/// Outcome of the compression identity suite.
struct SuiteReport {
  long checks = 0;
  long failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
  void fail(const std::string& what) {
    ++failures;
    if (first_failure.empty()) first_failure = what;
  }
};

/// The four compression identities for a kernel f:
///  (1) multiplying by a translation unitary shifts the second argument;
///  (2) compressing against u_g and translating back restricts f to the
///      graph of g;
///  (3) the diagonal of f f* is the sum over g of the squared compressions;
///  (4) subtracting the partial sum over a finite F leaves exactly the tail
///      of that sum.
/// Comparisons use `tol` (0 means exact).
template <class S>
SuiteReport identity_suite(const Kernel<S>& f, const std::vector<uint32_t>& gs,
                           const std::vector<uint32_t>& F, double tol);

/// Residual diagonals of the truncation scheme along an increasing chain of
/// finite sets of group elements: r_j is the diagonal of
/// (z - z_j)(z - z_j)* where z_j collects the compressions over chain[j].
/// Throws if the chain is not strictly increasing.
template <class S>
std::vector<Diagonal<S>> truncation_approx(const Kernel<S>& z,
                                           const std::vector<std::vector<uint32_t>>& chain);

/// Partial sum of compressions over the set F.
template <class S>
Kernel<S> truncation_term(const Kernel<S>& z, const std::vector<uint32_t>& F);

/// True iff every compression diagonal of z vanishes; in that case z itself
/// is zero, which the reconstruction identity certifies.
template <class S>
bool vanishing_test(const Kernel<S>& z);

/// u_g* f u_g; matches relabelling both arguments by g.
template <class S>
Kernel<S> conjugation(const Kernel<S>& f, uint32_t g);

/// Commutant of the diagonal subalgebra inside the full window matrix
/// algebra, computed by solving the commutation constraints exactly.
struct MasaReport {
  uint64_t commutant_dim = 0;
  uint64_t expected_dim = 0;
  bool diagonal_commutant = false;  // commutant no bigger than the diagonal
  bool free_action = false;         // no nontrivial g fixes a window point
};
MasaReport masa_check(OrbitWindow w);

/// Diagonal-times-translation factorization of a unitary w that conjugates
/// the diagonal subalgebra into itself.  p[g] marks the points where w
/// moves mass along g; v collects the translations, d = w v* is diagonal
/// unimodular, and w = d v up to tol.
struct NormalizerParts {
  OrbitWindow win;
  std::vector<std::vector<int>> p;  // p[g][x] in {0,1}
  Kernel<std::complex<double>> v;
  Kernel<std::complex<double>> d;

  NormalizerParts(OrbitWindow w)
      : win(w), v(Kernel<std::complex<double>>(w)), d(Kernel<std::complex<double>>(w)) {}
};
NormalizerParts normalizer_decompose(const Kernel<std::complex<double>>& w, double tol);

/// Exact rank of a list of rational row vectors.
uint64_t rational_rank(std::vector<std::vector<Rational>> rows);

/// Exact rank over the Gaussian rationals.
uint64_t gauss_rank(std::vector<std::vector<GaussRat>> rows);

}  // namespace stonework
