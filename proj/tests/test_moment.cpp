#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "spheridir/gramian.hpp"
#include "spheridir/moment.hpp"
#include "spheridir/spaces.hpp"

using namespace spheridir;
using th::q;

namespace {

const ExactPoint kZeta = {ComplexRational(q(3, 5)), ComplexRational(0, q(4, 5))};
const ExactPoint kEta = {ComplexRational(q(-5, 13)), ComplexRational(q(12, 13))};

ComplexRational power(const ExactPoint& z, const MultiIndex& a) {
  ComplexRational out(1);
  for (int j = 0; j < a.dim(); ++j)
    for (int e = 0; e < a[j]; ++e) out *= z[static_cast<std::size_t>(j)];
  return out;
}

Measure random_atomic(int d, int atoms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> w(1, 9);
  std::vector<ExactPoint> pts;
  std::vector<Rational> ws;
  for (int i = 0; i < atoms; ++i) {
    pts.push_back(random_sphere_point(d, rng));
    ws.push_back(q(w(rng), 4));
  }
  return Measure::atomic(d, pts, ws);
}

}  // namespace

TEST_SUITE("moment") {
  TEST_CASE("moments of sigma, an atom and a matrix atom") {
    const auto s = forward_moments(Measure::surface(2), 3);
    CHECK(s.kind() == "moment");
    for (const auto& a : s.labels())
      for (const auto& b : s.labels()) {
        const Rational expected =
            a == b ? Rational(a.factorial()) / Rational(factorial(a.order() + 1)) : Rational(0);
        CHECK(s.entry(a, b) == ComplexRational(expected));
      }

    const auto dz = forward_moments(Measure::atomic(2, {kZeta}, {q(1)}), 2);
    for (const auto& a : dz.labels())
      for (const auto& b : dz.labels()) CHECK(dz.entry(a, b) == power(kZeta, a) * power(kZeta, b).conj());

    ExactMatrix w(2, 2);
    w(0, 0) = 2;
    w(0, 1) = ComplexRational(q(1, 2), 1);
    w(1, 0) = ComplexRational(q(1, 2), -1);
    w(1, 1) = 3;
    const auto mm = forward_moments(Measure::atomic_matrix(2, {kZeta}, {w}), 2);
    CHECK(mm.block() == 2);
    for (const auto& a : mm.labels())
      for (const auto& b : mm.labels())
        CHECK(mm.at(a, b) == w * (power(kZeta, a) * power(kZeta, b).conj()));
    CHECK(check_conditions(mm).passes());
  }

  TEST_CASE("conditions on constructible measures") {
    std::mt19937_64 rng(51);
    const std::vector<Measure> all = {
        Measure::surface(2), Measure::atomic(2, {kZeta}, {q(1)}), make_lambda_c(q(3), {1, -1}),
        make_b_lambda(q(1), {ComplexRational(q(1, 4)), ComplexRational()}), random_atomic(3, 3, rng)};
    for (const auto& mu : all) {
      const auto c = check_conditions(forward_moments(mu, 3));
      CHECK(c.psd);
      CHECK(c.toeplitz);
      CHECK(c.toeplitz_residual == 0.0);
    }
  }

  TEST_CASE("a table concentrated at the origin is not Toeplitz") {
    GramTable phi(2, 2, 1, "moment");
    phi.set_entry(MultiIndex{0, 0}, MultiIndex{0, 0}, 2);
    const auto c = check_conditions(phi);
    CHECK(c.psd);
    CHECK_FALSE(c.toeplitz);
    CHECK(c.toeplitz_residual == doctest::Approx(2.0));
  }

  TEST_CASE("GNS quotients") {
    const auto s = gns(forward_moments(Measure::surface(2), 3));
    CHECK(s.quotient_dim() == 10);
    CHECK(classify(s.tuple, 1).kind == TupleClass::isometry);

    const auto a = gns(forward_moments(Measure::atomic(2, {kZeta}, {q(1)}), 3));
    REQUIRE(a.quotient_dim() == 1);
    CHECK(a.basis[0] == MultiIndex{0, 0});
    CHECK(a.tuple.ops()[0](0, 0) == kZeta[0]);
    CHECK(a.tuple.ops()[1](0, 0) == kZeta[1]);
    CHECK(classify(a.tuple, 1).kind == TupleClass::isometry);

    for (int N = 1; N <= 3; ++N) {
      const auto two = gns(forward_moments(Measure::atomic(2, {kZeta, kEta}, {q(1), q(2)}), N));
      CHECK(two.quotient_dim() == 2);
      CHECK(classify(two.tuple, 1).kind == TupleClass::isometry);
    }

    GramTable bad(1, 1);
    bad.set_entry(MultiIndex{0}, MultiIndex{0}, -1);
    CHECK_THROWS_AS(gns(bad), std::invalid_argument);
  }

  TEST_CASE("GNS of random atomic measures has Vandermonde rank") {
    std::mt19937_64 rng(52);
    for (int i = 0; i < 5; ++i) {
      const int atoms = 1 + i % 3;
      const auto g = gns(forward_moments(random_atomic(2, atoms, rng), 3));
      CHECK(g.quotient_dim() == static_cast<std::size_t>(atoms));
      CHECK(classify(g.tuple, 1).kind == TupleClass::isometry);
    }
  }

  TEST_CASE("moment kernels of isometries and 2-isometries") {
    const auto sz = multiplication_tuple(gram(HpSpace{q(2), 2}, 4));
    CHECK(miso_kernel(sz, 1) == forward_moments(Measure::surface(2), 4));

    const auto t = multiplication_tuple(gram(BLambdaSpace{q(2), {ComplexRational(q(1, 2)), ComplexRational(0, q(1, 3))}}, 5));
    const auto k = miso_kernel(t, 2);
    const auto q1 = qt_form(t, 1);
    const auto& g = t.gram();
    for (const auto& a : k.labels())
      for (const auto& b : k.labels())
        CHECK(k.entry(a, b) == q1.form(g.index(b), g.index(a)) - g.flat()(g.index(b), g.index(a)));
  }

  TEST_CASE("direct and Gramian kernels agree") {
    const std::vector<TruncatedTuple> all = {
        multiplication_tuple(gram(LambdaCSpace{q(3), {1, -1}}, 5)),
        multiplication_tuple(gram(BLambdaSpace{q(1), {ComplexRational(q(1, 4)), ComplexRational()}}, 5)),
        scaled_pair(multiplication_tuple(one_d_dirichlet(Measure::surface(1), 5)), 2),
        multiplication_tuple(gram(HpSpace{q(1), 2}, 5))};
    for (const auto& t : all) {
      CHECK(miso_kernel_direct(t, 2) == miso_kernel(t, 2));
      CHECK(check_conditions(miso_kernel(t, 2)).passes());
    }
  }

  TEST_CASE("extraction recovers the boundary measure") {
    for (const SpaceSpec& s : std::vector<SpaceSpec>{
             LambdaCSpace{q(3), {1, -1}}, LambdaCSpace{q(5, 2), {1, 1, -2}},
             BLambdaSpace{q(1), {ComplexRational(q(1, 4)), ComplexRational()}}}) {
      const auto t = multiplication_tuple(gram(s, 4));
      CHECK(miso_kernel(t, 2) == forward_moments(space_measure(s), 3));
    }
  }

  TEST_CASE("model identity residuals") {
    const LambdaCSpace lc{q(3), {1, -1}};
    const auto tl = multiplication_tuple(gram(lc, 7));
    const auto ml = space_measure(lc);
    for (int k = 0; k <= 3; ++k)
      for (const auto& a : enumerate_upto(2, 2))
        for (const auto& b : enumerate_upto(2, 2)) CHECK(verify_model(tl, ml, k, a, b).is_zero());

    const BLambdaSpace bl{q(2), {ComplexRational(q(1, 2)), ComplexRational(0, q(1, 3))}};
    const auto tb = multiplication_tuple(gram(bl, 5));
    for (const auto& a : enumerate_upto(2, 2))
      for (const auto& b : enumerate_upto(2, 2))
        CHECK(verify_model(tb, space_measure(bl), 1, a, b).is_zero());
    CHECK_THROWS_AS(verify_model(tb, space_measure(bl), 5, MultiIndex{2, 0}, MultiIndex{0, 0}),
                    std::invalid_argument);
  }

  TEST_CASE("distinct small atomic measures have distinct tables") {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 20; ++i) {
      const auto a = random_atomic(2, 1 + i % 3, rng);
      const auto b = random_atomic(2, 1 + (i / 3) % 3, rng);
      CHECK_FALSE(forward_moments(a, 3) == forward_moments(b, 3));
    }
  }

  TEST_CASE("circle recovery") {
    const ExactPoint one = {ComplexRational(1)};
    const ExactPoint i = {ComplexRational(0, 1)};
    auto phi = forward_moments(Measure::atomic(1, {one, i}, {q(1), q(1, 2)}), 4);
    phi.flat() += forward_moments(Measure::surface(1, q(1, 2)), 4).flat();
    const auto r = recover_circle(phi);
    CHECK(r.surface == doctest::Approx(0.5));
    REQUIRE(r.atoms.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
      const bool at_one = std::abs(r.atoms[k][0] - 1.0) < 1e-8;
      const bool at_i = std::abs(r.atoms[k][0] - std::complex<double>(0, 1)) < 1e-8;
      CHECK((at_one || at_i));
      CHECK(r.weights[k] == doctest::Approx(at_one ? 1.0 : 0.5));
    }
  }

  TEST_CASE("atomic recovery") {
    const auto phi = forward_moments(Measure::atomic(2, {kZeta, kEta}, {q(1, 3), q(5, 3)}), 3);
    const auto r = recover_atomic(phi, 2);
    REQUIRE(r.atoms.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& p = r.atoms[k];
      const bool is_zeta = std::abs(p[0] - kZeta[0].to_complex()) < 1e-8 &&
                           std::abs(p[1] - kZeta[1].to_complex()) < 1e-8;
      const bool is_eta = std::abs(p[0] - kEta[0].to_complex()) < 1e-8 &&
                          std::abs(p[1] - kEta[1].to_complex()) < 1e-8;
      CHECK((is_zeta || is_eta));
      CHECK(r.weights[k] == doctest::Approx(is_zeta ? 1.0 / 3.0 : 5.0 / 3.0));
    }
    CHECK_THROWS_AS(recover_atomic(phi, 3), std::invalid_argument);
  }
}
