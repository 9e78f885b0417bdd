#include "spheridir/gram_table.hpp"

#include <algorithm>
#include <stdexcept>

#include "spheridir/measures.hpp"

namespace spheridir {

using nlohmann::json;

GramTable::GramTable(int dim, int N, std::size_t block, std::string kind)
    : GramTable(enumerate_upto(dim, N), dim, N, block, std::move(kind)) {}

GramTable::GramTable(std::vector<MultiIndex> labels, int dim, int N, std::size_t block,
                     std::string kind)
    : dim_(dim), N_(N), block_(block), kind_(std::move(kind)), labels_(std::move(labels)) {
  if (dim < 1) throw std::invalid_argument("table dimension must be >= 1");
  if (N < 0) throw std::invalid_argument("degree bound must be >= 0");
  if (block < 1) throw std::invalid_argument("block size must be >= 1");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].dim() != dim) throw std::invalid_argument("label dimension mismatch");
    if (labels_[i].order() > N) throw std::invalid_argument("label exceeds the degree bound");
    if (i > 0 && labels_[i].order() < labels_[i - 1].order())
      throw std::invalid_argument("labels must be sorted by order");
  }
  index_ = IndexMap(labels_);
  if (index_.size() != labels_.size()) throw std::invalid_argument("duplicate labels");
  flat_ = ExactMatrix(flat_size(), flat_size());
}

std::size_t GramTable::window_labels(int W) const {
  return static_cast<std::size_t>(
      std::partition_point(labels_.begin(), labels_.end(),
                           [W](const MultiIndex& a) { return a.order() <= W; }) -
      labels_.begin());
}

ExactMatrix GramTable::at(const MultiIndex& alpha, const MultiIndex& beta) const {
  return flat_.block(index(beta) * block_, index(alpha) * block_, block_, block_);
}

void GramTable::set(const MultiIndex& alpha, const MultiIndex& beta, const ExactMatrix& value) {
  if (value.rows() != block_ || value.cols() != block_)
    throw std::invalid_argument("block has the wrong size");
  const auto r0 = index(beta) * block_;
  const auto c0 = index(alpha) * block_;
  for (std::size_t i = 0; i < block_; ++i)
    for (std::size_t j = 0; j < block_; ++j) flat_(r0 + i, c0 + j) = value(i, j);
}

ComplexRational GramTable::entry(const MultiIndex& alpha, const MultiIndex& beta) const {
  if (block_ != 1) throw std::logic_error("entry() needs a scalar table");
  return flat_(index(beta), index(alpha));
}

void GramTable::set_entry(const MultiIndex& alpha, const MultiIndex& beta,
                          const ComplexRational& value) {
  if (block_ != 1) throw std::logic_error("set_entry() needs a scalar table");
  flat_(index(beta), index(alpha)) = value;
}

void GramTable::set_hermitian(const MultiIndex& alpha, const MultiIndex& beta,
                              const ComplexRational& value) {
  set_entry(alpha, beta, value);
  set_entry(beta, alpha, value.conj());
}

GramTable GramTable::truncated(int W) const {
  W = std::min(W, N_);
  if (W < 0) throw std::invalid_argument("empty window");
  const auto n = window_labels(W);
  GramTable out(std::vector<MultiIndex>(labels_.begin(), labels_.begin() + static_cast<long>(n)),
                dim_, W, block_, kind_);
  out.flat_ = flat_.block(0, 0, n * block_, n * block_);
  return out;
}

bool GramTable::is_diagonal() const {
  for (std::size_t p = 0; p < flat_size(); ++p)
    for (std::size_t q = 0; q < flat_size(); ++q)
      if (p / block_ != q / block_ && !flat_(p, q).is_zero()) return false;
  return true;
}

json multiindex_to_json(const MultiIndex& alpha) { return alpha.entries(); }

MultiIndex multiindex_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("multi-index must be a non-empty array");
  std::vector<int> e;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<int>() < 0)
      throw std::invalid_argument("multi-index entries must be non-negative integers");
    e.push_back(x.get<int>());
  }
  return MultiIndex(std::move(e));
}

json GramTable::to_json() const {
  json j;
  j["kind"] = kind_;
  j["d"] = dim_;
  j["N"] = N_;
  if (block_ != 1) j["block"] = block_;
  bool all_labels = labels_ == enumerate_upto(dim_, N_);
  if (!all_labels) {
    json labels = json::array();
    for (const auto& a : labels_) labels.push_back(multiindex_to_json(a));
    j["labels"] = labels;
  }
  json entries = json::array();
  for (const auto& a : labels_)
    for (const auto& b : labels_) {
      const auto blk = at(a, b);
      for (std::size_t i = 0; i < block_; ++i)
        for (std::size_t k = 0; k < block_; ++k) {
          const auto& v = blk(i, k);
          if (v.is_zero()) continue;
          json e;
          e["alpha"] = multiindex_to_json(a);
          e["beta"] = multiindex_to_json(b);
          if (block_ != 1) {
            e["i"] = i;
            e["j"] = k;
          }
          e["re"] = format_rational(v.re());
          e["im"] = format_rational(v.im());
          entries.push_back(std::move(e));
        }
    }
  j["entries"] = std::move(entries);
  return j;
}

GramTable GramTable::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("table must be a JSON object");
  if (!j.contains("d") || !j["d"].is_number_integer())
    throw std::invalid_argument("table needs an integer \"d\"");
  if (!j.contains("N") || !j["N"].is_number_integer())
    throw std::invalid_argument("table needs an integer \"N\"");
  const int d = j["d"].get<int>();
  const int N = j["N"].get<int>();
  if (d < 1 || N < 0) throw std::invalid_argument("table needs d >= 1 and N >= 0");
  std::size_t block = 1;
  if (j.contains("block")) {
    if (!j["block"].is_number_integer() || j["block"].get<int>() < 1)
      throw std::invalid_argument("\"block\" must be a positive integer");
    block = j["block"].get<std::size_t>();
  }
  const std::string kind = j.value("kind", std::string("gram"));
  std::vector<MultiIndex> labels;
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) labels.push_back(multiindex_from_json(l));
  } else {
    labels = enumerate_upto(d, N);
  }
  GramTable t(std::move(labels), d, N, block, kind);
  if (!j.contains("entries") || !j["entries"].is_array())
    throw std::invalid_argument("table needs an \"entries\" array");
  for (const auto& e : j["entries"]) {
    if (!e.contains("alpha") || !e.contains("beta"))
      throw std::invalid_argument("table entry needs \"alpha\" and \"beta\"");
    const auto a = multiindex_from_json(e["alpha"]);
    const auto b = multiindex_from_json(e["beta"]);
    if (a.dim() != d || b.dim() != d) throw std::invalid_argument("entry index has wrong length");
    if (!t.contains(a) || !t.contains(b)) throw std::invalid_argument("entry index outside the table");
    const std::size_t i = e.value("i", std::size_t{0});
    const std::size_t k = e.value("j", std::size_t{0});
    if (i >= block || k >= block) throw std::invalid_argument("entry block position out of range");
    const ComplexRational v(e.contains("re") ? rational_from_json(e["re"]) : Rational(0),
                            e.contains("im") ? rational_from_json(e["im"]) : Rational(0));
    t.flat_(t.index(b) * block + i, t.index(a) * block + k) = v;
  }
  return t;
}

bool operator==(const GramTable& a, const GramTable& b) {
  return a.dim_ == b.dim_ && a.block_ == b.block_ && a.labels_ == b.labels_ && a.flat_ == b.flat_;
}

}  // namespace spheridir
