// Commuting d-tuples truncated to a graded basis of degree <= N, and the
// Q_T / B_m(T) calculus evaluated as bilinear forms from the Gram table.
//
// Every form carries its valid window W: basis elements of level <= W are the
// ones on which all the tuple applications used stay inside the truncation.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spheridir/gram_table.hpp"

namespace spheridir {

class TruncatedTuple {
 public:
  /// ops[j] acts on flat coordinates of `gram`; column p is the image of the
  /// basis vector p. Columns of top-level basis vectors must be zero, and the
  /// image of a level-l vector must have level <= l + 1.
  TruncatedTuple(GramTable gram, std::vector<ExactMatrix> ops);

  int d() const { return static_cast<int>(ops_.size()); }
  int degree() const { return gram_.degree(); }
  const GramTable& gram() const { return gram_; }
  const std::vector<ExactMatrix>& ops() const { return ops_; }

  /// T_i T_j = T_j T_i on basis vectors of level <= N - 2.
  bool commutes() const;

 private:
  GramTable gram_;
  std::vector<ExactMatrix> ops_;
};

/// A Hermitian form on the flat basis vectors of level <= window.
struct WindowedForm {
  ExactMatrix form;
  int window = -1;
  bool empty() const { return window < 0; }
};

/// M_z on the monomial basis: z^alpha -> z^{alpha + e_j}.
TruncatedTuple multiplication_tuple(const GramTable& gram);

/// <Q^n_T(I) u, v> = sum_{|gamma|=n} |gamma|!/gamma! <T^gamma u, T^gamma v>, window N - n.
WindowedForm qt_form(const TruncatedTuple& t, int n);
/// B_m(T) = sum_n (-1)^n C(m, n) Q^n_T(I), window N - m.
WindowedForm bm_form(const TruncatedTuple& t, int m);
/// Restriction of a form to a smaller window.
WindowedForm restrict_form(const WindowedForm& f, const GramTable& basis, int window);

enum class TupleClass { isometry, concave, convex, none, inconclusive };
std::string to_string(TupleClass c);

struct Classification {
  TupleClass kind = TupleClass::inconclusive;
  int m = 0;
  int window = -1;
  /// Rank of B_m on the window (0 for an m-isometry).
  std::size_t rank = 0;
};
/// m-isometry if B_m = 0, m-concave if (-1)^m B_m <= 0, m-convex if >= 0.
Classification classify(const TruncatedTuple& t, int m);

/// Columns (flat coordinates, level <= N - 1) spanning the vectors orthogonal
/// to T_j u for all j and all u of level <= N - 1.
ExactMatrix joint_kernel(const TruncatedTuple& t);

/// (T0/sqrt(d), ..., T0/sqrt(d)) for a single-operator tuple T0 on a
/// one-variable monomial basis, realized on the basis u_k = z^k / d^{k/2}.
TruncatedTuple scaled_pair(const TruncatedTuple& t0, int d);

nlohmann::json form_to_json(const WindowedForm& f);
/// {"gram": table, "ops": [[{"row", "col", "re", "im"}, ...], ...]}
nlohmann::json tuple_to_json(const TruncatedTuple& t);
TruncatedTuple tuple_from_json(const nlohmann::json& j);

}  // namespace spheridir
