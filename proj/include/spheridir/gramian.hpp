// Gramian arrays of a tuple over a wandering frame, the matrix backward
// shifts sigma^gamma, the defect arrays Delta_n, and the equivalent
// m-isometry conditions built on them.
//
// Arrays are GramTables over Z^d_+ (d = number of operators); in the
// table orientation at(alpha, beta)(i, j) = <T^alpha f_j, T^beta f_i>.
#pragma once

#include <string>

#include <json.hpp>

#include "spheridir/gram_table.hpp"
#include "spheridir/tuples.hpp"

namespace spheridir {

/// [A_{alpha+gamma, beta+gamma}] on degree bound N - |gamma|.
GramTable backward_shift(const GramTable& a, const MultiIndex& gamma);
/// sum_{|gamma|=k} |gamma|!/gamma! sigma^gamma A on degree bound N - k.
GramTable shift_sum(const GramTable& a, int k);
/// Delta_n = sum_j (-1)^{j+n} C(n,j) sum_{|gamma|=j} |gamma|!/gamma! sigma^gamma A.
GramTable defect(const GramTable& a, int n);
/// Delta_n = sum_j sigma_j Delta_{n-1} - Delta_{n-1}, evaluated recursively.
GramTable defect_recursive(const GramTable& a, int n);

struct ConditionResult {
  bool holds = false;
  /// max |entry| of the residual array, 0 exactly when `holds`.
  double residual = 0.0;
  int window = -1;
};

struct TheoremReport {
  int m = 0;
  bool inconclusive = true;
  ConditionResult ii;   // Delta_m = 0
  ConditionResult iii;  // shift sums against binomial defect sums, k = 1..k_max
  ConditionResult iv;   // sum_j sigma_j Delta_{m-1} = Delta_{m-1}
  PsdCheck defect_psd;  // Delta_{m-1} >= 0
  int k_checked = 0;
};
TheoremReport check_theorem(const GramTable& a, int m, int k_max = 3);

struct Gramian {
  GramTable table;
  /// Frame vectors (flat coordinates of the tuple basis) used as f_j.
  ExactMatrix frame;
  /// False when some frame norm is not a rational square, so the frame is
  /// orthogonal but not normalized.
  bool normalized = true;
  int frame_level = 0;
};
/// Gramian over an orthogonalized joint-kernel frame, on degree bound
/// N - (highest frame level).
Gramian gramian_of(const TruncatedTuple& t);

nlohmann::json theorem_to_json(const TheoremReport& r);

}  // namespace spheridir
