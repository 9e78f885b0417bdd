#include "spheridir/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace spheridir {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed rational \"" + s + "\"");
  };
  if (s.empty()) return fail();
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) return fail();
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac = s.size() - dot - 1;
    if (frac == 0 || digits.empty() || digits == "-" || digits == "+") return fail();
    mpz_class num;
    if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0) return fail();
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) return fail();
  if (sgn(q.get_den()) == 0) return fail();
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational ratio(const mpz_class& n, const mpz_class& d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
    return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return Rational(n, d);
}

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ComplexRational& ComplexRational::operator/=(const ComplexRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero in complex rational");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.norm2();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

ComplexRational exact_from(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::domain_error("non-finite value cannot be made exact");
  }
  return {Rational(z.real()), Rational(z.imag())};
}

std::ostream& operator<<(std::ostream& os, const ComplexRational& z) {
  os << format_rational(z.re());
  if (!z.is_real()) os << (sgn(z.im()) < 0 ? " - " : " + ") << format_rational(abs(z.im())) << "i";
  return os;
}

}  // namespace spheridir
