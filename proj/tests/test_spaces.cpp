#include <doctest.h>

#include <stdexcept>

#include "helpers.hpp"
#include "spheridir/spaces.hpp"

using namespace spheridir;
using th::q;

namespace {

Rational hardy(const MultiIndex& a) {
  const int d = a.dim();
  return Rational(a.factorial() * factorial(d - 1)) / Rational(factorial(a.order() + d - 1));
}

ComplexRational cr(const Rational& x) { return ComplexRational(x); }

}  // namespace

TEST_SUITE("spaces") {
  TEST_CASE("H_p diagonal norms") {
    for (int d = 1; d <= 3; ++d) {
      const auto da = gram(HpSpace{q(1), d}, 5);
      const auto hd = gram(HpSpace{q(d), d}, 5);
      for (const auto& a : da.labels()) {
        CHECK(da.entry(a, a) == cr(Rational(a.factorial()) / Rational(factorial(a.order()))));
        CHECK(hd.entry(a, a) == cr(hardy(a)));
      }
      CHECK(da.is_diagonal());
    }
  }

  TEST_CASE("H_p is dominated by H_{p+1}") {
    for (int p = 1; p <= 3; ++p) {
      const auto a = gram(HpSpace{q(p), 3}, 4);
      const auto b = gram(HpSpace{q(p + 1), 3}, 4);
      for (const auto& x : a.labels()) CHECK(a.entry(x, x).re() >= b.entry(x, x).re());
    }
    // Non-integer p stays exact.
    CHECK(hp_norm2(q(1, 2), MultiIndex{1, 1}) == q(4, 3));
  }

  TEST_CASE("lambda_c gram agrees with the Dirichlet pairing") {
    const LambdaCSpace s{q(3), {1, -1}};
    const auto closed = gram(s, 4);
    const auto direct = dirichlet_gram(space_measure(s), 4);
    CHECK(closed == direct);
    CHECK(closed.is_diagonal());
  }

  TEST_CASE("b_lambda gram has the band entry and is not diagonal") {
    const BLambdaSpace s{q(1), {ComplexRational(q(1, 4)), ComplexRational()}};
    const auto g = gram(s, 3);
    CHECK_FALSE(g.is_diagonal());
    CHECK(g.entry(MultiIndex{1, 0}, MultiIndex{2, 0}) == cr(q(1, 12)));
    CHECK(g.entry(MultiIndex{2, 0}, MultiIndex{1, 0}) == cr(q(1, 12)));
    // Diagonal: Hardy norm plus the circle norm (1 + lambda |a|) * hardy(a) for this weight.
    for (const auto& a : g.labels())
      CHECK(g.entry(a, a) == cr(hardy(a) * (1 + a.order())));
    CHECK(g.psd().psd);
  }

  TEST_CASE("multishift weights") {
    const LambdaCSpace da{q(1), {0, 0}};
    for (const auto& a : enumerate_upto(2, 5))
      for (int j = 0; j < 2; ++j)
        CHECK(multishift_weights(da, a, j) == ratio(a[j] + 1, a.order() + 1));
    const LambdaCSpace s{q(3), {1, -1}};
    CHECK(multishift_weights(s, MultiIndex{0, 0}, 0) == 2);
    CHECK(multishift_weights(s, MultiIndex{0, 0}, 1) == 2);
    // Ratio of consecutive closed-form norms.
    for (const auto& a : enumerate_upto(2, 4))
      for (int j = 0; j < 2; ++j)
        CHECK(multishift_weights(s, a, j) ==
              lambda_c_norm2(s, a + MultiIndex::unit(2, j)) / lambda_c_norm2(s, a));
    const LambdaCSpace c0{q(5, 2), {0, 0, 0}};
    for (const auto& a : enumerate_upto(3, 3)) {
      const int n = a.order();
      CHECK(multishift_weights(c0, a, 2) ==
            ratio(a[2] + 1, n + 3) * (1 + c0.lambda * (n + 1)) / (1 + c0.lambda * n));
    }
    CHECK_THROWS_AS(multishift_weights(s, MultiIndex{0, 0}, 2), std::out_of_range);
  }

  TEST_CASE("Drury-Arveson coincidence") {
    CHECK(gram(LambdaCSpace{q(1), {0, 0}}, 5) == gram(HpSpace{q(1), 2}, 5));
  }

  TEST_CASE("one-variable Dirichlet spaces") {
    const auto s1 = one_d_dirichlet(Measure::surface(1), 6);
    const auto s2 = one_d_dirichlet(Measure::surface(1, q(2)), 6);
    const auto s0 = one_d_dirichlet(Measure::surface(1, q(0)), 6);
    for (int k = 0; k <= 6; ++k) {
      const MultiIndex a{k};
      CHECK(s1.entry(a, a) == cr(1 + k));
      CHECK(s2.entry(a, a) == cr(1 + 2 * k));
      CHECK(s0.entry(a, a) == cr(1));
    }
    // Atom at 1: <z^j, z^k> = delta_jk + min(j, k).
    const auto a1 = one_d_dirichlet(Measure::atomic(1, {{ComplexRational(1)}}, {q(1)}), 5);
    for (int j = 0; j <= 5; ++j)
      for (int k = 0; k <= 5; ++k)
        CHECK(a1.entry(MultiIndex{j}, MultiIndex{k}) == cr((j == k ? 1 : 0) + std::min(j, k)));
    CHECK(a1.psd().psd);
    CHECK_THROWS_AS(one_d_dirichlet(Measure::surface(2), 3), std::invalid_argument);
  }

  TEST_CASE("every model gram is PSD") {
    for (const SpaceSpec& s :
         std::vector<SpaceSpec>{HpSpace{q(1), 2}, HpSpace{q(3), 3}, LambdaCSpace{q(2), {1, -1}},
                                BLambdaSpace{q(2), {ComplexRational(q(1, 2)), ComplexRational(0, q(1, 3))}}}) {
      const auto g = gram(s, 3);
      CHECK(g.is_hermitian());
      CHECK(g.psd().definite);
    }
  }

  TEST_CASE("space validation") {
    CHECK_THROWS_AS(gram(HpSpace{q(0), 2}, 2), std::invalid_argument);
    CHECK_THROWS_AS(gram(LambdaCSpace{q(1), {2, -2}}, 2), std::invalid_argument);
    CHECK_THROWS_AS(gram(BLambdaSpace{q(1), {ComplexRational(1), ComplexRational()}}, 2),
                    std::invalid_argument);
    GramTable bad(1, 1);
    bad.set_entry(MultiIndex{0}, MultiIndex{1}, 1);
    CHECK_THROWS_AS(gram(CustomSpace{bad}, 1), std::invalid_argument);
  }

  TEST_CASE("space JSON round trip") {
    const std::vector<SpaceSpec> all = {
        HpSpace{q(3, 2), 2}, LambdaCSpace{q(3), {1, -1}},
        BLambdaSpace{q(1), {ComplexRational(q(1, 4)), ComplexRational(0, q(1, 8))}},
        CustomSpace{gram(HpSpace{q(1), 2}, 2)}};
    for (const auto& s : all) {
      const auto j = space_to_json(s);
      CHECK(space_to_json(space_from_json(j)) == j);
      CHECK(gram(space_from_json(j), 2) == gram(s, 2));
    }
    CHECK_THROWS_AS(space_from_json(nlohmann::json::parse(R"({"type":"hp","p":"1"})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        space_from_json(nlohmann::json::parse(R"({"type":"lambda_c","d":3,"lambda":"1","c":["0","0"]})")),
        std::invalid_argument);
  }

  TEST_CASE("gram table layout and JSON") {
    GramTable t(2, 2, 2);
    CHECK(t.size() == 6);
    CHECK(t.flat_size() == 12);
    CHECK(t.window_labels(1) == 3);
    CHECK(t.window_flat(1) == 6);
    ExactMatrix blk(2, 2);
    blk(0, 1) = ComplexRational(q(1, 2), q(1, 3));
    t.set(MultiIndex{1, 0}, MultiIndex{0, 1}, blk);
    CHECK(t.at(MultiIndex{1, 0}, MultiIndex{0, 1}) == blk);
    CHECK(GramTable::from_json(t.to_json()) == t);
    CHECK(t.truncated(1).size() == 3);

    GramTable s(2, 2);
    s.set_hermitian(MultiIndex{1, 0}, MultiIndex{0, 1}, ComplexRational(0, 1));
    CHECK(s.is_hermitian());
    CHECK(s.entry(MultiIndex{0, 1}, MultiIndex{1, 0}) == ComplexRational(0, -1));
    CHECK_FALSE(s.is_diagonal());
    CHECK_THROWS(GramTable::from_json(nlohmann::json::parse(R"({"kind":"gram"})")));
  }
}
