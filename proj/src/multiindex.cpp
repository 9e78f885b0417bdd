#include "spheridir/multiindex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spheridir {

namespace {

void require_same_dim(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("multi-index dimension mismatch: " + a.to_string() +
                                " vs " + b.to_string());
  }
}

}  // namespace

MultiIndex::MultiIndex(int dim) : entries_(static_cast<std::size_t>(dim), 0) {
  if (dim < 1) throw std::invalid_argument("multi-index dimension must be >= 1");
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("multi-index dimension must be >= 1");
  for (int e : entries_) {
    if (e < 0) throw std::invalid_argument("multi-index entries must be non-negative");
    order_ += e;
  }
}

MultiIndex MultiIndex::unit(int dim, int j) {
  if (j < 0 || j >= dim) throw std::out_of_range("unit index direction out of range");
  std::vector<int> e(static_cast<std::size_t>(dim), 0);
  e[static_cast<std::size_t>(j)] = 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  require_same_dim(*this, other);
  std::vector<int> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.entries_[i];
  return MultiIndex(std::move(e));
}

std::optional<MultiIndex> MultiIndex::sub(const MultiIndex& other) const {
  require_same_dim(*this, other);
  std::vector<int> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] -= other.entries_[i];
    if (e[i] < 0) return std::nullopt;
  }
  return MultiIndex(std::move(e));
}

bool MultiIndex::le(const MultiIndex& other) const {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] > other.entries_[i]) return false;
  }
  return true;
}

mpz_class MultiIndex::factorial() const {
  mpz_class f = 1;
  for (int e : entries_) f *= spheridir::factorial(e);
  return f;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto c = order_ <=> other.order_; c != 0) return c;
  if (auto c = entries_.size() <=> other.entries_.size(); c != 0) return c;
  // Descending lexicographic within a grade: (1,0) precedes (0,1).
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] != other.entries_[i]) {
      return entries_[i] > other.entries_[i] ? std::strong_ordering::less
                                             : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& alpha) {
  os << '(';
  for (int j = 0; j < alpha.dim(); ++j) {
    if (j) os << ',';
    os << alpha[j];
  }
  return os << ')';
}

mpz_class factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

mpz_class binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

mpz_class multinomial_weight(const MultiIndex& gamma) {
  return spheridir::factorial(gamma.order()) / gamma.factorial();
}

std::vector<MultiIndex> enumerate_exact(int d, int k) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (k < 0) return {};
  std::vector<MultiIndex> out;
  std::vector<int> e(static_cast<std::size_t>(d), 0);
  // Recursive fill of the first d-1 slots from largest to smallest; the last
  // slot takes what remains. This yields descending lexicographic order.
  auto fill = [&](auto&& self, int slot, int remaining) -> void {
    if (slot == d - 1) {
      e[static_cast<std::size_t>(slot)] = remaining;
      out.emplace_back(e);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      e[static_cast<std::size_t>(slot)] = v;
      self(self, slot + 1, remaining - v);
    }
  };
  fill(fill, 0, k);
  return out;
}

std::vector<MultiIndex> enumerate_upto(int d, int N) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (N < 0) throw std::invalid_argument("degree bound must be >= 0");
  std::vector<MultiIndex> out;
  for (int k = 0; k <= N; ++k) {
    auto grade = enumerate_exact(d, k);
    out.insert(out.end(), grade.begin(), grade.end());
  }
  return out;
}

IndexMap::IndexMap(const std::vector<MultiIndex>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!pos_.emplace(labels[i], i).second) {
      throw std::invalid_argument("duplicate label " + labels[i].to_string());
    }
  }
}

std::optional<std::size_t> IndexMap::find(const MultiIndex& alpha) const {
  auto it = pos_.find(alpha);
  if (it == pos_.end()) return std::nullopt;
  return it->second;
}

std::size_t IndexMap::at(const MultiIndex& alpha) const {
  auto p = find(alpha);
  if (!p) throw std::out_of_range("label " + alpha.to_string() + " not in table");
  return *p;
}

}  // namespace spheridir
