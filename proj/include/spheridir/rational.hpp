// Exact scalars for the rational path.
#pragma once

#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace spheridir {

using Rational = mpq_class;

/// Parses "p/q", "p", or a finite decimal such as "-0.125" exactly.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers are written as "p/1".
std::string format_rational(const Rational& q);

/// n/d in canonical form.
Rational ratio(const mpz_class& n, const mpz_class& d);

/// sqrt(q) when q is the square of a rational, otherwise empty.
std::optional<Rational> exact_sqrt(const Rational& q);

/// Gaussian rational re + i*im. Field arithmetic is exact.
class ComplexRational {
 public:
  ComplexRational() = default;
  ComplexRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  ComplexRational(int re) : re_(re) {}                   // NOLINT
  ComplexRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  ComplexRational conj() const { return {re_, -im_}; }
  /// |z|^2, always a non-negative rational.
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  ComplexRational operator-() const { return {-re_, -im_}; }
  ComplexRational& operator+=(const ComplexRational& o);
  ComplexRational& operator-=(const ComplexRational& o);
  ComplexRational& operator*=(const ComplexRational& o);
  ComplexRational& operator/=(const ComplexRational& o);

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Exact conversion of a finite double (every double is a dyadic rational).
ComplexRational exact_from(std::complex<double> z);

std::ostream& operator<<(std::ostream& os, const ComplexRational& z);

}  // namespace spheridir
