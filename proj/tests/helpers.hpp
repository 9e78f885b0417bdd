// Small builders shared by the unit tests.
#pragma once

#include <random>

#include "spheridir/dirichlet.hpp"
#include "spheridir/measures.hpp"
#include "spheridir/multiindex.hpp"

namespace th {

using namespace spheridir;

inline Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline HermitianPolynomial random_holomorphic(int d, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-4, 4);
  HermitianPolynomial p(d);
  for (const auto& a : enumerate_upto(d, degree))
    p.add_term(a, MultiIndex(d), ComplexRational(q(c(rng), 3), q(c(rng), 5)));
  return p;
}

inline VectorPolynomial mono(std::initializer_list<int> a) {
  return VectorPolynomial::monomial(MultiIndex(a));
}

inline bool within(const Value& v, std::complex<double> target, double sigmas = 3.0) {
  return std::abs(v.value - target) <= sigmas * v.std_error;
}

}  // namespace th
