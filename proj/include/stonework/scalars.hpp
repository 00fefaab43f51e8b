#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <string>

namespace stonework {

using Rational = boost::multiprecision::cpp_rational;

/// Complex number with rational real and imaginary parts.  Closed under the
/// ring operations and conjugation, so every law checked in exact mode is
/// checked with no rounding at all.
struct GaussRat {
  Rational re{0}, im{0};

  GaussRat() = default;
  GaussRat(int r) : re(r) {}  // NOLINT: intentional implicit lift
  GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return GaussRat(Rational(0), Rational(1)); }

  GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
  GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
  GaussRat operator-() const { return {-re, -im}; }
  GaussRat operator*(const GaussRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussRat operator/(const GaussRat& o) const {
    Rational d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussRat& o) const { return !(*this == o); }

  std::string str() const { return re.str() + (im >= 0 ? "+" : "") + im.str() + "i"; }
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussRat> {
  using Real = Rational;
  static GaussRat zero() { return GaussRat(); }
  static GaussRat one() { return GaussRat(1); }
  static GaussRat conj(const GaussRat& x) { return {x.re, -x.im}; }
  static Real abs2(const GaussRat& x) { return x.re * x.re + x.im * x.im; }
  static bool is_zero(const GaussRat& x) { return x.re == 0 && x.im == 0; }
  static double to_double(const Real& r) { return static_cast<double>(r); }
};

template <>
struct ScalarTraits<std::complex<double>> {
  using Real = double;
  static std::complex<double> zero() { return {0.0, 0.0}; }
  static std::complex<double> one() { return {1.0, 0.0}; }
  static std::complex<double> conj(const std::complex<double>& x) {
    return std::conj(x);
  }
  static Real abs2(const std::complex<double>& x) { return std::norm(x); }
  static bool is_zero(const std::complex<double>& x) {
    return x.real() == 0.0 && x.imag() == 0.0;
  }
  static double to_double(Real r) { return r; }
};

}  // namespace stonework
