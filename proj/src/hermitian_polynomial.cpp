#include "spheridir/hermitian_polynomial.hpp"

#include <stdexcept>

namespace spheridir {

HermitianPolynomial::HermitianPolynomial(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
}

HermitianPolynomial HermitianPolynomial::constant(int dim, const ComplexRational& c) {
  HermitianPolynomial h(dim);
  h.add_term(MultiIndex(dim), MultiIndex(dim), c);
  return h;
}

HermitianPolynomial HermitianPolynomial::monomial(const MultiIndex& alpha, const MultiIndex& beta,
                                                  const ComplexRational& c) {
  HermitianPolynomial h(alpha.dim());
  h.add_term(alpha, beta, c);
  return h;
}

HermitianPolynomial HermitianPolynomial::holomorphic(const MultiIndex& alpha,
                                                     const ComplexRational& c) {
  return monomial(alpha, MultiIndex(alpha.dim()), c);
}

HermitianPolynomial HermitianPolynomial::coordinate(int dim, int j) {
  return holomorphic(MultiIndex::unit(dim, j));
}

HermitianPolynomial HermitianPolynomial::norm_squared(int dim) {
  HermitianPolynomial h(dim);
  for (int j = 0; j < dim; ++j) {
    auto e = MultiIndex::unit(dim, j);
    h.add_term(e, e, 1);
  }
  return h;
}

int HermitianPolynomial::degree() const {
  int deg = -1;
  for (const auto& [key, c] : terms_) deg = std::max(deg, key.first.order() + key.second.order());
  return deg;
}

void HermitianPolynomial::add_term(const MultiIndex& alpha, const MultiIndex& beta,
                                   const ComplexRational& c) {
  if (alpha.dim() != dim_ || beta.dim() != dim_)
    throw std::invalid_argument("term dimension does not match polynomial dimension");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key{alpha, beta}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ComplexRational HermitianPolynomial::coefficient(const MultiIndex& alpha,
                                                 const MultiIndex& beta) const {
  auto it = terms_.find(Key{alpha, beta});
  return it == terms_.end() ? ComplexRational{} : it->second;
}

bool HermitianPolynomial::is_holomorphic() const {
  for (const auto& [key, c] : terms_)
    if (key.second.order() != 0) return false;
  return true;
}

bool HermitianPolynomial::is_real_valued() const {
  for (const auto& [key, c] : terms_)
    if (!(coefficient(key.second, key.first) == c.conj())) return false;
  return true;
}

bool HermitianPolynomial::is_torus_invariant() const {
  for (const auto& [key, c] : terms_)
    if (!(key.first == key.second)) return false;
  return true;
}

HermitianPolynomial HermitianPolynomial::conj() const {
  HermitianPolynomial out(dim_);
  for (const auto& [key, c] : terms_) out.terms_.emplace(Key{key.second, key.first}, c.conj());
  return out;
}

HermitianPolynomial HermitianPolynomial::dz(int j) const {
  HermitianPolynomial out(dim_);
  const auto e = MultiIndex::unit(dim_, j);
  for (const auto& [key, c] : terms_) {
    auto lowered = key.first.sub(e);
    if (!lowered) continue;
    out.add_term(*lowered, key.second, c * ComplexRational(key.first[j]));
  }
  return out;
}

HermitianPolynomial HermitianPolynomial::dzbar(int j) const {
  HermitianPolynomial out(dim_);
  const auto e = MultiIndex::unit(dim_, j);
  for (const auto& [key, c] : terms_) {
    auto lowered = key.second.sub(e);
    if (!lowered) continue;
    out.add_term(key.first, *lowered, c * ComplexRational(key.second[j]));
  }
  return out;
}

HermitianPolynomial HermitianPolynomial::dilate(const Rational& radius) const {
  HermitianPolynomial out(dim_);
  for (const auto& [key, c] : terms_) {
    Rational scale = 1;
    for (int k = 0; k < key.first.order() + key.second.order(); ++k) scale *= radius;
    out.add_term(key.first, key.second, c * ComplexRational(scale));
  }
  return out;
}

std::complex<double> HermitianPolynomial::evaluate(std::span<const std::complex<double>> z) const {
  if (static_cast<int>(z.size()) != dim_) throw std::invalid_argument("evaluation point dimension");
  std::complex<double> sum = 0.0;
  for (const auto& [key, c] : terms_) {
    std::complex<double> term = c.to_complex();
    for (int j = 0; j < dim_; ++j) {
      const auto zj = z[static_cast<std::size_t>(j)];
      for (int k = 0; k < key.first[j]; ++k) term *= zj;
      for (int k = 0; k < key.second[j]; ++k) term *= std::conj(zj);
    }
    sum += term;
  }
  return sum;
}

ComplexRational HermitianPolynomial::evaluate(std::span<const ComplexRational> z) const {
  if (static_cast<int>(z.size()) != dim_) throw std::invalid_argument("evaluation point dimension");
  ComplexRational sum;
  for (const auto& [key, c] : terms_) {
    ComplexRational term = c;
    for (int j = 0; j < dim_; ++j) {
      const auto& zj = z[static_cast<std::size_t>(j)];
      for (int k = 0; k < key.first[j]; ++k) term *= zj;
      for (int k = 0; k < key.second[j]; ++k) term *= zj.conj();
    }
    sum += term;
  }
  return sum;
}

void HermitianPolynomial::check_dim(const HermitianPolynomial& o) const {
  if (o.dim_ != dim_) throw std::invalid_argument("polynomial dimension mismatch");
}

HermitianPolynomial& HermitianPolynomial::operator+=(const HermitianPolynomial& o) {
  check_dim(o);
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
  return *this;
}

HermitianPolynomial& HermitianPolynomial::operator-=(const HermitianPolynomial& o) {
  check_dim(o);
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
  return *this;
}

HermitianPolynomial& HermitianPolynomial::operator*=(const ComplexRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= s;
  return *this;
}

HermitianPolynomial operator*(const HermitianPolynomial& a, const HermitianPolynomial& b) {
  a.check_dim(b);
  HermitianPolynomial out(a.dim_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return out;
}

HermitianPolynomial laplacian(const HermitianPolynomial& h) {
  HermitianPolynomial out(h.dim());
  for (int j = 0; j < h.dim(); ++j) out += h.dzbar(j).dz(j);
  return out;
}

HermitianPolynomial times_conj(const HermitianPolynomial& f, const HermitianPolynomial& g) {
  if (!f.is_holomorphic() || !g.is_holomorphic())
    throw std::invalid_argument("f * conj(g) expects holomorphic f and g");
  return f * g.conj();
}

HermitianPolynomial gradient_pairing(const HermitianPolynomial& f, const HermitianPolynomial& g) {
  if (!f.is_holomorphic() || !g.is_holomorphic())
    throw std::invalid_argument("gradient pairing expects holomorphic polynomials");
  HermitianPolynomial out(f.dim());
  for (int j = 0; j < f.dim(); ++j) out += f.dz(j) * g.dz(j).conj();
  return out;
}

Rational sphere_monomial(const MultiIndex& alpha, const MultiIndex& beta) {
  if (!(alpha == beta)) return 0;
  const int d = alpha.dim();
  return ratio(alpha.factorial() * factorial(d - 1), factorial(alpha.order() + d - 1));
}

Rational ball_monomial(const MultiIndex& alpha, const MultiIndex& beta) {
  if (!(alpha == beta)) return 0;
  const int d = alpha.dim();
  return ratio(alpha.factorial() * factorial(d), factorial(alpha.order() + d));
}

ComplexRational sphere_integral(const HermitianPolynomial& h) {
  ComplexRational sum;
  for (const auto& [key, c] : h.terms())
    if (key.first == key.second) sum += c * ComplexRational(sphere_monomial(key.first, key.second));
  return sum;
}

ComplexRational ball_integral(const HermitianPolynomial& h) {
  ComplexRational sum;
  for (const auto& [key, c] : h.terms())
    if (key.first == key.second) sum += c * ComplexRational(ball_monomial(key.first, key.second));
  return sum;
}

}  // namespace spheridir
