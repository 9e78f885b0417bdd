#include <doctest.h>

#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "spheridir/dirichlet.hpp"
#include "spheridir/spaces.hpp"

using namespace spheridir;
using th::mono;
using th::q;
using cd = std::complex<double>;

namespace {

ComplexRational D(const VectorPolynomial& f, const VectorPolynomial& g, const Measure& mu) {
  return dirichlet_inner_exact(f, g, mu);
}

std::vector<Measure> harmonic_fixtures() {
  return {Measure::surface(2), make_lambda_c(q(3), {1, -1}), make_lambda_c(q(2), {1, -1}),
          make_b_lambda(q(1), {ComplexRational(q(1, 4)), ComplexRational()}),
          make_b_lambda(q(2), {ComplexRational(q(1, 2)), ComplexRational(0, q(1, 3))}),
          make_lambda_c(q(5, 2), {1, 1, -2})};
}

}  // namespace

TEST_SUITE("dirichlet") {
  TEST_CASE("monomial norms in D(mu_{lambda,c}) match the closed form") {
    // Independent oracle: Hardy norm times (1 + lambda |a| + K_c(a)).
    for (const auto& [lambda, c] : std::vector<std::pair<Rational, std::vector<Rational>>>{
             {q(3), {1, -1}}, {q(1), {0, 0}}, {q(5, 2), {1, 1, -2}}}) {
      const auto mu = make_lambda_c(lambda, c);
      const int d = static_cast<int>(c.size());
      for (const auto& a : enumerate_upto(d, 4)) {
        Rational ck = 0;
        for (int k = 0; k < d; ++k) ck += c[static_cast<std::size_t>(k)] * a[k];
        const Rational hardy = Rational(a.factorial() * factorial(d - 1)) /
                               Rational(factorial(a.order() + d - 1));
        const Rational expected =
            hardy * (1 + lambda * a.order() + ratio(a.order() - 1, a.order() + d) * ck);
        CHECK(D(VectorPolynomial::monomial(a), VectorPolynomial::monomial(a), mu) ==
              ComplexRational(expected));
      }
    }
  }

  TEST_CASE("disc Dirichlet norms of z^k") {
    for (int k = 0; k <= 8; ++k)
      CHECK(D(mono({k}), mono({k}), Measure::surface(1)) == ComplexRational(1 + k));
  }

  TEST_CASE("pairing with constants evaluates at the origin") {
    std::mt19937_64 rng(31);
    const ComplexRational x(q(2, 3), q(-1, 7));
    for (const auto& mu : harmonic_fixtures()) {
      const auto f = VectorPolynomial::from_scalar(th::random_holomorphic(mu.dim(), 3, rng));
      VectorPolynomial cst(mu.dim());
      cst.add_term(MultiIndex(mu.dim()), 0, x);
      CHECK(D(f, cst, mu) == f.at_origin()[0] * x.conj());
    }
  }

  TEST_CASE("Hermitian symmetry and positivity") {
    std::mt19937_64 rng(32);
    for (const auto& mu : harmonic_fixtures())
      for (int i = 0; i < 3; ++i) {
        const auto f = VectorPolynomial::from_scalar(th::random_holomorphic(mu.dim(), 3, rng));
        const auto g = VectorPolynomial::from_scalar(th::random_holomorphic(mu.dim(), 3, rng));
        CHECK(D(f, g, mu) == D(g, f, mu).conj());
        const auto n = D(f, f, mu);
        CHECK(n.is_real());
        CHECK(sgn(n.re()) > 0);
      }
  }

  TEST_CASE("circle pairing examples") {
    const auto one = mono({0, 0});
    const auto mu = make_b_lambda(q(1), {ComplexRational(q(1, 4)), ComplexRational()});
    CHECK(circ_inner_exact(one, one, mu) == ComplexRational(1));
    for (const auto& m : harmonic_fixtures()) {
      const int d = m.dim();
      ComplexRational total;
      for (int k = 0; k < d; ++k) {
        const auto zk = VectorPolynomial::monomial(MultiIndex::unit(d, k));
        total += circ_inner_exact(zk, zk, m);
      }
      // Each ||z_k||^2 is (1/d) int P[mu] dV = mu(sphere)/d, so the sum is the full mass.
      CHECK(total == ComplexRational(total_mass(m)(0, 0).re()));
    }
    CHECK(circ_inner_exact(mono({1, 0}), mono({2, 0}), mu) == ComplexRational(q(1, 12)));
    // The off-diagonal entry has no Hardy part, so the D(mu) value agrees.
    CHECK(D(mono({1, 0}), mono({2, 0}), mu) == ComplexRational(q(1, 12)));
  }

  TEST_CASE("b_lambda band entries follow the closed form") {
    const std::vector<ComplexRational> b = {ComplexRational(q(1, 2)), ComplexRational(q(-1, 3))};
    const auto mu = make_b_lambda(q(2), b);
    for (const auto& a : enumerate_upto(2, 3))
      for (int l = 0; l < 2; ++l) {
        const auto next = a + MultiIndex::unit(2, l);
        const Rational expected = Rational(a.order() * next.factorial()) /
                                  Rational(factorial(a.order() + 2)) * b[static_cast<std::size_t>(l)].re();
        CHECK(circ_inner_exact(VectorPolynomial::monomial(a), VectorPolynomial::monomial(next), mu) ==
              ComplexRational(expected));
      }
  }

  TEST_CASE("Richter identity trivial case") {
    for (int d = 1; d <= 3; ++d) {
      const auto one = VectorPolynomial::monomial(MultiIndex(d));
      const auto r = verify_richter(one, one, Measure::surface(d), 1);
      CHECK(r.mode == VerifyMode::exact);
      CHECK(*r.lhs.exact == ComplexRational(d));
      CHECK(*r.rhs.exact == ComplexRational(d));
      CHECK(r.residual.exact->is_zero());
    }
  }

  TEST_CASE("Richter identity for random polynomials in one variable") {
    std::mt19937_64 rng(33);
    const auto mu = make_b_lambda(q(1), {ComplexRational(q(1, 4), q(1, 8))});
    for (int k = 0; k <= 4; ++k) {
      const auto p = VectorPolynomial::from_scalar(th::random_holomorphic(1, 4, rng));
      const auto g = VectorPolynomial::from_scalar(th::random_holomorphic(1, 4, rng));
      CHECK(verify_richter(p, g, mu, k).consistent_with_zero());
    }
  }

  TEST_CASE("reduction from k = 1 to higher k") {
    for (const auto& mu : harmonic_fixtures()) {
      if (mu.dim() != 2) continue;
      std::vector<RichterCase> first, higher;
      for (const auto& a : enumerate_upto(2, 4))
        for (const auto& b : enumerate_upto(2, 4)) {
          first.push_back({VectorPolynomial::monomial(a), VectorPolynomial::monomial(b), 1, ""});
          for (int k = 2; k <= 4; ++k)
            higher.push_back({VectorPolynomial::monomial(a), VectorPolynomial::monomial(b), k, ""});
        }
      bool base = true;
      for (const auto& r : verify_richter_batch(first, mu)) base = base && r.residual.exact->is_zero();
      REQUIRE(base);
      for (const auto& r : verify_richter_batch(higher, mu)) CHECK(r.residual.exact->is_zero());
    }
  }

  TEST_CASE("weighted shift sums are affine in k") {
    std::mt19937_64 rng(34);
    for (const auto& mu : harmonic_fixtures()) {
      const int d = mu.dim();
      const auto p = VectorPolynomial::from_scalar(th::random_holomorphic(d, 2, rng));
      std::vector<ComplexRational> s;
      for (int k = 0; k <= 4; ++k) {
        ComplexRational total;
        for (const auto& g : enumerate_exact(d, k)) {
          const auto zp = p.shifted(g);
          total += D(zp, zp, mu) * ComplexRational(Rational(multinomial_weight(g)));
        }
        s.push_back(total);
      }
      for (std::size_t k = 2; k < s.size(); ++k)
        CHECK((s[k] - s[k - 1] * ComplexRational(2) + s[k - 2]).is_zero());
    }
  }

  TEST_CASE("Dirac measure on the sampled path") {
    const ExactPoint zeta = {ComplexRational(q(3, 5)), ComplexRational(0, q(4, 5))};
    const auto mu = Measure::atomic(2, {zeta}, {q(1)});
    McConfig cfg;
    cfg.sample_count = 1'000'000;
    const auto r = verify_richter(mono({1, 0}), mono({1, 0}), mu, 1, cfg);
    CHECK(r.mode == VerifyMode::monte_carlo);
    CHECK(r.residual.std_error > 0);
    CHECK(r.consistent_with_zero(3.0));
    const auto f = falsify_invariant_kernel(mono({1, 0}), mono({1, 0}), mu, 1, cfg);
    CHECK(f.kernel == PoissonKind::invariant);
    CHECK(f.significant(10.0));
  }

  TEST_CASE("invariant kernel agrees for sigma and is rejected on the disc") {
    McConfig cfg;
    cfg.sample_count = 200'000;
    const auto r = falsify_invariant_kernel(mono({1, 0}), mono({1, 1}), Measure::surface(2), 1, cfg);
    CHECK(r.consistent_with_zero(3.0));
    CHECK_THROWS_AS(falsify_invariant_kernel(mono({1}), mono({1}), Measure::surface(1), 1, cfg),
                    std::invalid_argument);
  }

  TEST_CASE("local Dirichlet integral at an atom in one variable") {
    // D(delta_1): ||z^k||^2 = 1 + k, compared with the sampled pairing.
    const auto mu = Measure::atomic(1, {{ComplexRational(1)}}, {q(1)});
    McConfig cfg;
    cfg.sample_count = 400'000;
    const auto v = dirichlet_inner(mono({2}), mono({2}), mu, cfg);
    CHECK(std::abs(v.value - 3.0) <= 3.0 * v.std_error);
  }

  TEST_CASE("matrix-valued measure in one variable") {
    // f = (z^2, z), F = W delta_1: ||f||^2 = 2 + sum_ab W_ba D_1(f_a, f_b) = 2 + 4 + 1 - i + i = 7.
    ExactMatrix w(2, 2);
    w(0, 0) = 2;
    w(0, 1) = ComplexRational(0, 1);
    w(1, 0) = ComplexRational(0, -1);
    w(1, 1) = 1;
    const auto F = Measure::atomic_matrix(1, {{ComplexRational(1)}}, {w});
    VectorPolynomial f(1, 2);
    f.add_term(MultiIndex{2}, 0, 1);
    f.add_term(MultiIndex{1}, 1, 1);
    McConfig cfg;
    cfg.sample_count = 400'000;
    const auto v = dirichlet_inner(f, f, F, cfg);
    CHECK(std::abs(v.value - 7.0) <= 3.0 * v.std_error);
    const auto r = verify_richter(f, f, F, 2, cfg);
    CHECK(r.consistent_with_zero(3.0));
  }

  TEST_CASE("radius identity") {
    const auto R = q(1, 2);
    const auto one = mono({0, 0});
    for (const auto& mu : harmonic_fixtures()) {
      if (mu.dim() != 2) continue;
      CHECK(verify_radius_identity(one, one, mu, R).residual.exact->is_zero());
      CHECK(verify_radius_identity(mono({1, 1}), mono({2, 0}), mu, q(2, 3)).residual.exact->is_zero());
    }
    CHECK(verify_radius_identity(mono({1}), mono({1}), Measure::surface(1), R).residual.exact->is_zero());
    CHECK_THROWS(verify_radius_identity(one, one, Measure::surface(2), q(1)));
  }

  TEST_CASE("radius gap shrinks towards the sphere") {
    const auto mu = make_lambda_c(q(3), {1, -1});
    for (const auto& f : {mono({1, 0}), mono({1, 2})}) {
      Rational prev = -1;
      for (int k = 1; k <= 6; ++k) {
        const Rational R = 1 - ratio(1, mpz_class(1) << k);
        const auto gap = radius_limit_gap(f, f, mu, R);
        const Rational size = gap.norm2();
        if (k > 1) CHECK(size < prev);
        prev = size;
      }
    }
  }

  TEST_CASE("monomial estimate") {
    for (const auto& mu : harmonic_fixtures())
      for (const auto& a : enumerate_upto(mu.dim(), 3)) {
        const auto e = mono_estimate(mu, a);
        CHECK(e.holds());
        CHECK(sgn(e.lhs) > 0);
      }
  }

  TEST_CASE("monomial estimate fails at the origin for large mass") {
    // sum_k ||z_k||^2 = mu(sphere) against max{2(1+d), mu(sphere)/d} ||1||^2.
    const auto heavy = make_lambda_c(q(7), {0, 0});
    const auto e = mono_estimate(heavy, MultiIndex{0, 0});
    CHECK(e.lhs == 7);
    CHECK(e.bound == 6);
    CHECK_FALSE(e.holds());
    CHECK(mono_estimate(heavy, MultiIndex{1, 0}).holds());
  }

  TEST_CASE("report JSON carries exact values") {
    const auto r = verify_richter(mono({1, 0}), mono({1, 0}), Measure::surface(2), 2);
    const auto j = report_to_json(r);
    CHECK(j["mode"] == "exact");
    CHECK(j["residual"]["exact"]["re"] == "0/1");
  }
}
