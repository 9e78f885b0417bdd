// Exact calculus of polynomials in z and conj(z):
//   h(z) = sum_{alpha,beta} c_{alpha beta} z^alpha conj(z)^beta.
// Holomorphic polynomials are the special case beta = 0.
#pragma once

#include <complex>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "spheridir/multiindex.hpp"
#include "spheridir/rational.hpp"

namespace spheridir {

class HermitianPolynomial {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;
  using Terms = std::map<Key, ComplexRational>;

  explicit HermitianPolynomial(int dim);

  static HermitianPolynomial constant(int dim, const ComplexRational& c);
  /// c * z^alpha conj(z)^beta.
  static HermitianPolynomial monomial(const MultiIndex& alpha, const MultiIndex& beta,
                                      const ComplexRational& c = 1);
  /// c * z^alpha (holomorphic monomial).
  static HermitianPolynomial holomorphic(const MultiIndex& alpha, const ComplexRational& c = 1);
  /// The coordinate z_j (0-based).
  static HermitianPolynomial coordinate(int dim, int j);
  /// ||z||^2 = sum_j z_j conj(z_j).
  static HermitianPolynomial norm_squared(int dim);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest |alpha| + |beta| over the support; -1 for the zero polynomial.
  int degree() const;

  /// Adds c to the coefficient of z^alpha conj(z)^beta.
  void add_term(const MultiIndex& alpha, const MultiIndex& beta, const ComplexRational& c);
  ComplexRational coefficient(const MultiIndex& alpha, const MultiIndex& beta) const;

  bool is_holomorphic() const;
  /// h is real-valued iff c_{alpha beta} = conj(c_{beta alpha}).
  bool is_real_valued() const;
  /// True when h depends only on |z_1|^2, ..., |z_d|^2 (every key has alpha = beta).
  bool is_torus_invariant() const;

  /// Pointwise complex conjugate: swaps alpha and beta and conjugates coefficients.
  HermitianPolynomial conj() const;
  /// d/dz_j and d/dconj(z_j).
  HermitianPolynomial dz(int j) const;
  HermitianPolynomial dzbar(int j) const;
  /// h(R z) for a rational R.
  HermitianPolynomial dilate(const Rational& radius) const;

  std::complex<double> evaluate(std::span<const std::complex<double>> z) const;
  /// Exact evaluation at a point with Gaussian-rational coordinates.
  ComplexRational evaluate(std::span<const ComplexRational> z) const;

  HermitianPolynomial& operator+=(const HermitianPolynomial& o);
  HermitianPolynomial& operator-=(const HermitianPolynomial& o);
  HermitianPolynomial& operator*=(const ComplexRational& s);
  friend HermitianPolynomial operator+(HermitianPolynomial a, const HermitianPolynomial& b) {
    return a += b;
  }
  friend HermitianPolynomial operator-(HermitianPolynomial a, const HermitianPolynomial& b) {
    return a -= b;
  }
  friend HermitianPolynomial operator*(HermitianPolynomial a, const ComplexRational& s) {
    return a *= s;
  }
  friend HermitianPolynomial operator*(const HermitianPolynomial& a, const HermitianPolynomial& b);
  friend bool operator==(const HermitianPolynomial& a, const HermitianPolynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

 private:
  void check_dim(const HermitianPolynomial& o) const;
  int dim_;
  Terms terms_;  // canonical: no zero coefficients
};

/// Complex Laplacian sum_j d^2/(dz_j dconj(z_j)).
HermitianPolynomial laplacian(const HermitianPolynomial& h);

/// <grad f, grad g> = sum_j (df/dz_j) conj(dg/dz_j) for holomorphic f, g.
HermitianPolynomial gradient_pairing(const HermitianPolynomial& f, const HermitianPolynomial& g);

/// f * conj(g) for holomorphic f, g.
HermitianPolynomial times_conj(const HermitianPolynomial& f, const HermitianPolynomial& g);

/// int over the unit sphere of z^alpha conj(z)^beta against normalized surface
/// measure: delta_{alpha beta} alpha! (d-1)! / (|alpha| + d - 1)!.
Rational sphere_monomial(const MultiIndex& alpha, const MultiIndex& beta);
/// Same against normalized volume measure on the ball:
/// delta_{alpha beta} alpha! d! / (|alpha| + d)!.
Rational ball_monomial(const MultiIndex& alpha, const MultiIndex& beta);

ComplexRational sphere_integral(const HermitianPolynomial& h);
ComplexRational ball_integral(const HermitianPolynomial& h);

}  // namespace spheridir
