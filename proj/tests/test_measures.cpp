#include <doctest.h>

#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "spheridir/measures.hpp"

using namespace spheridir;
using th::q;
using cd = std::complex<double>;

TEST_SUITE("measures") {
  TEST_CASE("lambda_c construction") {
    const auto sigma = make_lambda_c(q(1), {0, 0});
    CHECK(sigma.density() == HermitianPolynomial::constant(2, 1));
    CHECK_NOTHROW(make_lambda_c(q(3), {1, -1}));
    CHECK_THROWS_AS(make_lambda_c(q(1), {2, -2}), std::invalid_argument);
    CHECK_THROWS_AS(make_lambda_c(q(3), {1, 1}), std::invalid_argument);
  }

  TEST_CASE("b_lambda construction") {
    CHECK_NOTHROW(make_b_lambda(q(1), {ComplexRational(q(1, 4)), ComplexRational()}));
    CHECK(make_b_lambda(q(2), {ComplexRational(), ComplexRational()}).density() ==
          HermitianPolynomial::constant(2, 2));
    CHECK_THROWS_AS(make_b_lambda(q(1), {ComplexRational(1), ComplexRational()}),
                    std::invalid_argument);
  }

  TEST_CASE("atomic construction errors") {
    const ExactPoint on = {ComplexRational(q(3, 5)), ComplexRational(0, q(4, 5))};
    const ExactPoint off = {ComplexRational(q(1, 2)), ComplexRational()};
    CHECK_NOTHROW(Measure::atomic(2, {on}, {q(1)}));
    CHECK_THROWS_AS(Measure::atomic(2, {off}, {q(1)}), std::invalid_argument);
    CHECK_THROWS_AS(Measure::atomic(2, {on}, {q(-1)}), std::invalid_argument);
    CHECK_THROWS_AS(Measure::atomic(2, {on}, {q(1), q(1)}), std::invalid_argument);
    ExactMatrix w(2, 2);
    w(0, 0) = 1;
    w(1, 1) = -1;
    CHECK_THROWS_AS(Measure::atomic_matrix(2, {on}, {w}), std::invalid_argument);
  }

  TEST_CASE("total mass") {
    CHECK(total_mass(Measure::surface(3))(0, 0) == ComplexRational(1));
    CHECK(total_mass(make_lambda_c(q(3), {1, -1}))(0, 0) == ComplexRational(3));
    CHECK(total_mass(make_b_lambda(q(2), {ComplexRational(q(1, 3)), ComplexRational()}))(0, 0) ==
          ComplexRational(2));
    const ExactPoint a = {ComplexRational(1)};
    const ExactPoint b = {ComplexRational(-1)};
    CHECK(total_mass(Measure::atomic(1, {a, b}, {q(1, 2), q(1, 3)}))(0, 0) ==
          ComplexRational(q(5, 6)));
  }

  TEST_CASE("Poisson integrals of harmonic densities are the densities") {
    const auto mu = make_lambda_c(q(3), {1, -1});
    const BallPoint z({cd(0.3, 0.1), cd(-0.2, 0.4)});
    const auto v = poisson_integral(mu, z);
    CHECK(v.exact_path);
    CHECK(v.value(0, 0).real() ==
          doctest::Approx(3 + std::norm(z[0]) - std::norm(z[1])).epsilon(1e-14));
    CHECK(poisson_integral(Measure::surface(2), z).value(0, 0).real() == doctest::Approx(1.0));
  }

  TEST_CASE("Poisson integral at the origin is the total mass") {
    const BallPoint origin({cd(0.0), cd(0.0)});
    std::mt19937_64 rng(4);
    std::vector<ExactPoint> pts = {random_sphere_point(2, rng), random_sphere_point(2, rng)};
    const auto mu = Measure::atomic(2, pts, {q(1, 4), q(2)});
    CHECK(poisson_integral(mu, origin).value(0, 0).real() == doctest::Approx(2.25));
    const auto b = make_b_lambda(q(2), {ComplexRational(q(1, 3)), ComplexRational(0, q(1, 5))});
    CHECK(poisson_integral(b, origin).value(0, 0).real() == doctest::Approx(2.0));
  }

  TEST_CASE("atomic Poisson integral is the weighted kernel sum") {
    const ExactPoint a = {ComplexRational(q(3, 5)), ComplexRational(0, q(4, 5))};
    const auto mu = Measure::atomic(2, {a}, {q(2)});
    const BallPoint z({cd(0.1, 0.2), cd(0.3, 0.0)});
    CHECK(poisson_integral(mu, z).value(0, 0).real() ==
          doctest::Approx(2.0 * poisson_kernel(z, to_ball_point(a))).epsilon(1e-14));
  }

  TEST_CASE("non-harmonic density takes the sampled path") {
    // The harmonic extension of |z_1|^2 from the sphere of C^2 is (1 + |z_1|^2 - |z_2|^2)/2.
    const auto w = HermitianPolynomial::monomial(MultiIndex{1, 0}, MultiIndex{1, 0});
    const auto mu = Measure::weighted(w);
    CHECK_FALSE(mu.is_harmonic());
    McConfig cfg;
    cfg.sample_count = 200'000;
    const BallPoint z({cd(0.2, 0.3), cd(0.0, -0.4)});
    const auto v = poisson_integral(mu, z, cfg);
    CHECK_FALSE(v.exact_path);
    const double expected = (1 + std::norm(z[0]) - std::norm(z[1])) / 2;
    CHECK(std::abs(v.value(0, 0) - expected) <= 3.0 * v.std_error);
  }

  TEST_CASE("matrix atoms give matrix Poisson integrals") {
    const ExactPoint a = {ComplexRational(1)};
    ExactMatrix w(2, 2);
    w(0, 0) = 2;
    w(0, 1) = ComplexRational(0, 1);
    w(1, 0) = ComplexRational(0, -1);
    w(1, 1) = 1;
    const auto mu = Measure::atomic_matrix(1, {a}, {w});
    CHECK(mu.block() == 2);
    const auto v = poisson_integral(mu, BallPoint({cd(0.5)}));
    CHECK(v.value(0, 1).imag() == doctest::Approx(3.0));
    CHECK(v.value(1, 1).real() == doctest::Approx(3.0));
  }

  TEST_CASE("harmonicity and torus invariance of the families") {
    const auto lc = make_lambda_c(q(3), {1, -1});
    const auto bl = make_b_lambda(q(1), {ComplexRational(q(1, 4)), ComplexRational()});
    CHECK(laplacian(lc.density()).is_zero());
    CHECK(laplacian(bl.density()).is_zero());
    CHECK(lc.is_harmonic());
    CHECK(bl.is_harmonic());
    CHECK(lc.is_torus_invariant());
    CHECK_FALSE(bl.is_torus_invariant());
    CHECK(Measure::surface(2).is_torus_invariant());
  }

  TEST_CASE("moments of sigma and of an atom") {
    const auto s = moment(Measure::surface(2), MultiIndex{1, 1}, MultiIndex{1, 1});
    CHECK(s(0, 0) == ComplexRational(q(1, 6)));
    CHECK(moment(Measure::surface(2), MultiIndex{1, 0}, MultiIndex{0, 1})(0, 0).is_zero());
    const ExactPoint a = {ComplexRational(q(3, 5)), ComplexRational(0, q(4, 5))};
    const auto m = moment(Measure::atomic(2, {a}, {q(1)}), MultiIndex{1, 0}, MultiIndex{0, 1});
    CHECK(m(0, 0) == ComplexRational(q(3, 5)) * ComplexRational(0, q(-4, 5)));
  }

  TEST_CASE("random exact sphere points lie on the sphere") {
    std::mt19937_64 rng(12);
    for (int d = 1; d <= 4; ++d)
      for (int i = 0; i < 10; ++i) CHECK(on_unit_sphere(random_sphere_point(d, rng)));
  }

  TEST_CASE("JSON round trip") {
    std::mt19937_64 rng(6);
    const std::vector<Measure> all = {
        Measure::surface(2, q(3, 2)), make_lambda_c(q(3), {1, -1}),
        make_b_lambda(q(1), {ComplexRational(q(1, 4)), ComplexRational(0, q(1, 8))}),
        Measure::atomic(2, {random_sphere_point(2, rng)}, {q(2, 3)})};
    for (const auto& mu : all) {
      const auto j = measure_to_json(mu);
      CHECK(measure_to_json(measure_from_json(j)) == j);
    }
    CHECK(measure_from_json(nlohmann::json::parse(R"({"type":"lambda_c","lambda":"3","c":["1","-1"]})"))
              .dim() == 2);
    CHECK_THROWS_AS(measure_from_json(nlohmann::json::parse(R"({"type":"nope","d":2})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(measure_from_json(nlohmann::json::parse(R"({"type":"surface"})")),
                    std::invalid_argument);
  }
}
