#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "spheridir/multiindex.hpp"

using namespace spheridir;

namespace {

// Counts words over {0..d-1} of length k by letter multiset.
std::map<std::vector<int>, long> word_counts(int d, int k) {
  std::map<std::vector<int>, long> out;
  std::vector<int> word(static_cast<std::size_t>(k), 0);
  while (true) {
    std::vector<int> letters(static_cast<std::size_t>(d), 0);
    for (int c : word) ++letters[static_cast<std::size_t>(c)];
    ++out[letters];
    int i = 0;
    while (i < k && ++word[static_cast<std::size_t>(i)] == d) word[static_cast<std::size_t>(i++)] = 0;
    if (i == k) break;
  }
  return out;
}

}  // namespace

TEST_SUITE("multiindex") {
  TEST_CASE("multinomial weights of small indices") {
    CHECK(multinomial_weight(MultiIndex{2, 1}) == 3);
    CHECK(multinomial_weight(MultiIndex{1, 1, 1}) == 6);
    CHECK(multinomial_weight(MultiIndex{0, 0}) == 1);
    CHECK(multinomial_weight(MultiIndex{3}) == 1);
  }

  TEST_CASE("multinomial weight counts words") {
    for (int d = 1; d <= 3; ++d)
      for (int k = 0; k <= 5; ++k)
        for (const auto& [letters, count] : word_counts(d, k))
          CHECK(multinomial_weight(MultiIndex(letters)) == count);
  }

  TEST_CASE("weights over a grade sum to d^k") {
    for (int d = 1; d <= 4; ++d)
      for (int k = 0; k <= 6; ++k) {
        mpz_class total = 0;
        for (const auto& g : enumerate_exact(d, k)) total += multinomial_weight(g);
        mpz_class expected;
        mpz_ui_pow_ui(expected.get_mpz_t(), static_cast<unsigned long>(d),
                      static_cast<unsigned long>(k));
        CHECK(total == expected);
      }
  }

  TEST_CASE("large factorials stay exact") {
    const MultiIndex g{20, 20};
    mpz_class f20 = 1;
    for (int i = 2; i <= 20; ++i) f20 *= i;
    CHECK(g.factorial() == f20 * f20);
    mpz_class f40 = 1;
    for (int i = 2; i <= 40; ++i) f40 *= i;
    CHECK(multinomial_weight(g) == f40 / (f20 * f20));
    CHECK(multinomial_weight(g) == binomial(40, 20));
  }

  TEST_CASE("graded enumeration") {
    const auto one = enumerate_upto(1, 3);
    REQUIRE(one.size() == 4);
    for (int i = 0; i <= 3; ++i) CHECK(one[static_cast<std::size_t>(i)] == MultiIndex{i});

    const std::vector<MultiIndex> two = {MultiIndex{0, 0}, MultiIndex{1, 0}, MultiIndex{0, 1},
                                         MultiIndex{2, 0}, MultiIndex{1, 1}, MultiIndex{0, 2}};
    CHECK(enumerate_upto(2, 2) == two);

    for (int d = 1; d <= 4; ++d)
      for (int N = 0; N <= 5; ++N) {
        const auto all = enumerate_upto(d, N);
        CHECK(all.size() == binomial(N + d, d).get_ui());
        CHECK(std::is_sorted(all.begin(), all.end()));
        CHECK(std::set<MultiIndex>(all.begin(), all.end()).size() == all.size());
        for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].order() <= all[i].order());
      }
  }

  TEST_CASE("arithmetic and order") {
    const MultiIndex a{2, 1};
    const MultiIndex b{1, 1};
    CHECK(a + b == MultiIndex{3, 2});
    CHECK(a.sub(b) == MultiIndex{1, 0});
    CHECK_FALSE(b.sub(a).has_value());
    CHECK(b.le(a));
    CHECK_FALSE(a.le(b));
    CHECK(MultiIndex::unit(3, 1) == MultiIndex{0, 1, 0});
    CHECK(a.order() == 3);
  }

  TEST_CASE("sub inverts add on random indices") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> e(0, 4);
    for (int i = 0; i < 50; ++i) {
      const MultiIndex a{e(rng), e(rng), e(rng)};
      const MultiIndex b{e(rng), e(rng), e(rng)};
      CHECK((a + b).sub(b) == a);
      CHECK((a + b).order() == a.order() + b.order());
    }
  }

  TEST_CASE("invalid indices") {
    CHECK_THROWS_AS(MultiIndex({1, -1}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex{1} + MultiIndex({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex(0), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex::unit(2, 2), std::out_of_range);
    CHECK_THROWS_AS(enumerate_upto(0, 2), std::invalid_argument);
  }

  TEST_CASE("index map lookup") {
    const auto labels = enumerate_upto(2, 3);
    const IndexMap map(labels);
    for (std::size_t i = 0; i < labels.size(); ++i) CHECK(map.at(labels[i]) == i);
    CHECK_FALSE(map.find(MultiIndex{4, 0}).has_value());
    CHECK_THROWS_AS(map.at(MultiIndex{4, 0}), std::out_of_range);
  }
}
