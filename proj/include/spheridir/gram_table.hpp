// Inner-product tables indexed by graded multi-indices, with optional r x r
// blocks. The same container carries space Gram matrices, Gramian arrays and
// moment kernels.
//
// Orientation: at(alpha, beta)(i, j) = <v_{alpha,j}, v_{beta,i}>, so for
// scalar monomial tables at(alpha, beta) = <z^alpha, z^beta>. The flattened
// matrix is ordered by (grade, within-grade, block row) and satisfies
// flat(p, q) = <v_q, v_p>, hence <u, v> = v* flat u.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "spheridir/exact_matrix.hpp"
#include "spheridir/multiindex.hpp"

namespace spheridir {

class GramTable {
 public:
  GramTable() = default;
  /// All multi-indices of dimension `dim` up to order N.
  GramTable(int dim, int N, std::size_t block = 1, std::string kind = "gram");
  /// Explicit labels, sorted by order; N bounds their orders.
  GramTable(std::vector<MultiIndex> labels, int dim, int N, std::size_t block = 1,
            std::string kind = "gram");

  int dim() const { return dim_; }
  int degree() const { return N_; }
  std::size_t block() const { return block_; }
  const std::string& kind() const { return kind_; }
  void set_kind(std::string kind) { kind_ = std::move(kind); }
  const std::vector<MultiIndex>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t flat_size() const { return labels_.size() * block_; }
  /// Order of the label carrying flat position p.
  int level(std::size_t p) const { return labels_[p / block_].order(); }

  bool contains(const MultiIndex& alpha) const { return index_.find(alpha).has_value(); }
  std::size_t index(const MultiIndex& alpha) const { return index_.at(alpha); }
  /// Number of labels of order <= W (a prefix, since labels are graded).
  std::size_t window_labels(int W) const;
  std::size_t window_flat(int W) const { return window_labels(W) * block_; }

  const ExactMatrix& flat() const { return flat_; }
  ExactMatrix& flat() { return flat_; }

  ExactMatrix at(const MultiIndex& alpha, const MultiIndex& beta) const;
  void set(const MultiIndex& alpha, const MultiIndex& beta, const ExactMatrix& value);
  /// Scalar tables only.
  ComplexRational entry(const MultiIndex& alpha, const MultiIndex& beta) const;
  void set_entry(const MultiIndex& alpha, const MultiIndex& beta, const ComplexRational& value);
  /// Sets (alpha, beta) and the conjugate entry (beta, alpha).
  void set_hermitian(const MultiIndex& alpha, const MultiIndex& beta, const ComplexRational& value);

  /// Labels of order <= W.
  GramTable truncated(int W) const;

  bool is_hermitian() const { return flat_.is_hermitian(); }
  /// Off-diagonal label blocks all vanish.
  bool is_diagonal() const;
  PsdCheck psd() const { return exact_psd(flat_); }

  nlohmann::json to_json() const;
  /// Throws std::invalid_argument on malformed input.
  static GramTable from_json(const nlohmann::json& j);

  friend bool operator==(const GramTable& a, const GramTable& b);

 private:
  int dim_ = 0;
  int N_ = 0;
  std::size_t block_ = 1;
  std::string kind_ = "gram";
  std::vector<MultiIndex> labels_;
  IndexMap index_;
  ExactMatrix flat_;
};

nlohmann::json multiindex_to_json(const MultiIndex& alpha);
MultiIndex multiindex_from_json(const nlohmann::json& j);

}  // namespace spheridir
