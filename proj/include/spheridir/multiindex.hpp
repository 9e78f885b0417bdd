// Multi-indices in Z_+^d and the graded monomial basis.
#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace spheridir {

/// Element of Z_+^d. Entries are non-negative; the dimension is fixed at
/// construction and arithmetic between different dimensions throws.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dim);
  MultiIndex(std::initializer_list<int> entries);
  explicit MultiIndex(std::vector<int> entries);

  /// The unit index eps_j (0-based j).
  static MultiIndex unit(int dim, int j);

  int dim() const { return static_cast<int>(entries_.size()); }
  int order() const { return order_; }
  int operator[](int j) const { return entries_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& entries() const { return entries_; }

  /// Componentwise sum.
  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise difference; empty when some entry would go negative.
  std::optional<MultiIndex> sub(const MultiIndex& other) const;
  /// Componentwise partial order alpha <= beta.
  bool le(const MultiIndex& other) const;

  /// Product of entry factorials, alpha!.
  mpz_class factorial() const;

  std::string to_string() const;

  // Graded order: by |alpha| first, then lexicographically descending.
  std::strong_ordering operator<=>(const MultiIndex& other) const;
  bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }

 private:
  std::vector<int> entries_;
  int order_ = 0;
};

std::ostream& operator<<(std::ostream& os, const MultiIndex& alpha);

/// |gamma|!/gamma!, the number of words with letter multiset gamma.
mpz_class multinomial_weight(const MultiIndex& gamma);

/// n! for small n as an exact integer.
mpz_class factorial(int n);

/// C(n, k) exactly; zero when k < 0 or k > n.
mpz_class binomial(int n, int k);

/// All alpha in Z_+^d with |alpha| = k, lexicographically descending.
std::vector<MultiIndex> enumerate_exact(int d, int k);

/// All alpha with |alpha| <= N in graded order (grade ascending, within a
/// grade lexicographically descending). Length C(N+d, d).
std::vector<MultiIndex> enumerate_upto(int d, int N);

/// Position lookup for a list of multi-indices.
class IndexMap {
 public:
  IndexMap() = default;
  explicit IndexMap(const std::vector<MultiIndex>& labels);
  std::optional<std::size_t> find(const MultiIndex& alpha) const;
  std::size_t at(const MultiIndex& alpha) const;
  std::size_t size() const { return pos_.size(); }

 private:
  std::map<MultiIndex, std::size_t> pos_;
};

}  // namespace spheridir
