#include <complex>
#include <stdexcept>

#include "doctest.h"
#include "stonework/audit.hpp"
#include "stonework/kernel.hpp"

using namespace stonework;
using C = std::complex<double>;

TEST_CASE("convolution over the window is the matrix product") {
  OrbitWindow w(1);
  Kernel<GaussRat> f(w), h(w);
  f.at(0, 0) = 1; f.at(0, 1) = 2; f.at(1, 0) = 3; f.at(1, 1) = 4;
  h.at(0, 0) = 5; h.at(0, 1) = 6; h.at(1, 0) = 7; h.at(1, 1) = 8;
  Kernel<GaussRat> p = conv(f, h);
  CHECK(p.at(0, 0) == GaussRat(19));
  CHECK(p.at(0, 1) == GaussRat(22));
  CHECK(p.at(1, 0) == GaussRat(43));
  CHECK(p.at(1, 1) == GaussRat(50));
  CHECK_THROWS_AS(conv(f, Kernel<GaussRat>(OrbitWindow(2))), std::invalid_argument);
}

TEST_CASE("adjoint conjugates and transposes") {
  OrbitWindow w(1);
  Kernel<GaussRat> f(w);
  f.at(0, 1) = GaussRat::i();
  Kernel<GaussRat> a = adjoint(f);
  CHECK(a.at(1, 0) == GaussRat(Rational(0), Rational(-1)));
  CHECK(ScalarTraits<GaussRat>::is_zero(a.at(0, 1)));
}

TEST_CASE("translation unitaries permute the window") {
  OrbitWindow w(1);
  Kernel<GaussRat> u = u_of<GaussRat>(w, 1);
  CHECK(u.at(0, 1) == GaussRat(1));
  CHECK(u.at(1, 0) == GaussRat(1));
  CHECK(ScalarTraits<GaussRat>::is_zero(u.at(0, 0)));
  CHECK(kernel_equal(conv(u, u), unit_kernel<GaussRat>(w)));
}

TEST_CASE("compression identity suite on exact kernels") {
  OrbitWindow w(2);
  Rng rng(11);
  Kernel<GaussRat> f = random_gauss_kernel(w, rng);
  std::vector<uint32_t> gs{0, 1, 2, 3}, F{0, 2};
  SuiteReport rep = identity_suite(f, gs, F, 0.0);
  CHECK(rep.ok());
  CHECK(rep.checks == 2 * 4 + 2);
}

TEST_CASE("truncation residuals along a chain") {
  OrbitWindow w(1);
  Kernel<GaussRat> z = u_of<GaussRat>(w, 1);
  std::vector<std::vector<uint32_t>> chain{{}, {0}, {0, 1}};
  auto res = truncation_approx(z, chain);
  REQUIRE(res.size() == 3);
  // the translation carries no diagonal mass, so nothing is removed until
  // its own group element enters the chain
  CHECK(res[0].d[0] == GaussRat(1));
  CHECK(res[1].d[0] == GaussRat(1));
  CHECK(ScalarTraits<GaussRat>::is_zero(res[2].d[0]));
  CHECK(ScalarTraits<GaussRat>::is_zero(res[2].d[1]));

  CHECK_THROWS_AS(truncation_approx(z, {{0}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(truncation_approx(z, {{0}, {1}}), std::invalid_argument);

  SUBCASE("vanishing certificate") {
    CHECK(!vanishing_test(z));
    CHECK(vanishing_test(Kernel<GaussRat>(w)));
    CHECK(kernel_equal(truncation_term(z, {0, 1}), z));
  }
}

TEST_CASE("diagonal subalgebra is its own commutant") {
  for (int n = 1; n <= 3; ++n) {
    MasaReport rep = masa_check(OrbitWindow(n));
    CHECK(rep.commutant_dim == (1u << n));
    CHECK(rep.expected_dim == (1u << n));
    CHECK(rep.diagonal_commutant);
    CHECK(rep.free_action);
  }
}

TEST_CASE("normalizer factorization of a phased translation") {
  OrbitWindow w(1);
  Kernel<C> u(w);
  u.at(0, 1) = C(0, 1);  // i
  u.at(1, 0) = C(1, 0);
  NormalizerParts parts = normalizer_decompose(u, 1e-12);
  CHECK(parts.p[0] == std::vector<int>{0, 0});
  CHECK(parts.p[1] == std::vector<int>{1, 1});
  CHECK(std::abs(parts.v.at(0, 1) - C(1, 0)) < 1e-12);
  CHECK(std::abs(parts.d.at(0, 0) - C(0, 1)) < 1e-12);
  CHECK(std::abs(parts.d.at(1, 1) - C(1, 0)) < 1e-12);
  // the residual of the factorization itself
  Kernel<C> back = conv(parts.d, parts.v);
  CHECK(ScalarTraits<C>::to_double(frobenius2(sub(u, back))) < 1e-18);
}

TEST_CASE("normalizer factorization rejects bad input") {
  OrbitWindow w(1);
  SUBCASE("not unitary") {
    Kernel<C> z(w);
    z.at(0, 0) = C(0.5, 0);
    CHECK_THROWS_AS(normalizer_decompose(z, 1e-9), std::invalid_argument);
  }
  SUBCASE("unitary but moving the diagonal off itself") {
    const double r = 1.0 / std::sqrt(2.0);
    Kernel<C> had(w);
    had.at(0, 0) = r; had.at(0, 1) = r; had.at(1, 0) = r; had.at(1, 1) = -r;
    CHECK_THROWS_AS(normalizer_decompose(had, 1e-9), std::invalid_argument);
  }
  SUBCASE("tolerance so loose the projections all vanish") {
    CHECK_THROWS_AS(normalizer_decompose(unit_kernel<C>(w), 2.0),
                    std::runtime_error);
  }
}

TEST_CASE("conjugation relabels both arguments") {
  OrbitWindow w(2);
  Rng rng(5);
  Kernel<GaussRat> f = random_gauss_kernel(w, rng);
  for (uint32_t g = 0; g < w.size(); ++g) {
    Kernel<GaussRat> c = conjugation(f, g);
    for (uint32_t x = 0; x < w.size(); ++x)
      for (uint32_t y = 0; y < w.size(); ++y)
        CHECK(c.at(x, y) == f.at(w.act(g, x), w.act(g, y)));
  }
}

TEST_CASE("exact rank over the rationals") {
  std::vector<std::vector<Rational>> rows{
      {Rational(1), Rational(2)}, {Rational(2), Rational(4)}, {Rational(0), Rational(1)}};
  CHECK(rational_rank(rows) == 2);
  std::vector<std::vector<GaussRat>> grows{
      {GaussRat(1), GaussRat::i()}, {GaussRat::i(), GaussRat(-1)}};
  CHECK(gauss_rank(grows) == 1);  // second row is i times the first
}
