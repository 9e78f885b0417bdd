#include "spheridir/gramian.hpp"

#include <algorithm>
#include <stdexcept>

namespace spheridir {

using nlohmann::json;

namespace {

void require_full(const GramTable& a) {
  if (a.labels().size() != enumerate_upto(a.dim(), a.degree()).size())
    throw std::invalid_argument("array must carry every index up to its degree bound");
}

// a += c * b on the window of a; b must contain every label of a.
void add_scaled(GramTable& a, const GramTable& b, const ComplexRational& c) {
  const auto r = a.block();
  std::vector<std::size_t> map;
  for (const auto& l : a.labels()) map.push_back(b.index(l));
  for (std::size_t p = 0; p < a.flat_size(); ++p)
    for (std::size_t q = 0; q < a.flat_size(); ++q) {
      const auto& v = b.flat()(map[p / r] * r + p % r, map[q / r] * r + q % r);
      if (!v.is_zero()) a.flat()(p, q) += v * c;
    }
}

double max_difference(const GramTable& a, const GramTable& b) {
  auto diff = a;
  add_scaled(diff, b, ComplexRational(-1));
  return diff.flat().max_abs();
}

bool equal_on(const GramTable& a, const GramTable& b) {
  auto diff = a;
  add_scaled(diff, b, ComplexRational(-1));
  return diff.flat().is_zero();
}

}  // namespace

GramTable backward_shift(const GramTable& a, const MultiIndex& gamma) {
  require_full(a);
  if (gamma.dim() != a.dim()) throw std::invalid_argument("shift index dimension mismatch");
  if (gamma.order() > a.degree()) throw std::invalid_argument("shift exceeds the degree bound");
  GramTable out(a.dim(), a.degree() - gamma.order(), a.block(), a.kind());
  const auto r = a.block();
  std::vector<std::size_t> map;
  for (const auto& l : out.labels()) map.push_back(a.index(l + gamma));
  for (std::size_t p = 0; p < out.flat_size(); ++p)
    for (std::size_t q = 0; q < out.flat_size(); ++q)
      out.flat()(p, q) = a.flat()(map[p / r] * r + p % r, map[q / r] * r + q % r);
  return out;
}

GramTable shift_sum(const GramTable& a, int k) {
  if (k < 0 || k > a.degree()) throw std::invalid_argument("shift order out of range");
  GramTable out(a.dim(), a.degree() - k, a.block(), a.kind());
  for (const auto& gamma : enumerate_exact(a.dim(), k))
    add_scaled(out, backward_shift(a, gamma), ComplexRational(Rational(multinomial_weight(gamma))));
  return out;
}

GramTable defect(const GramTable& a, int n) {
  if (n < 0 || n > a.degree()) throw std::invalid_argument("defect order out of range");
  GramTable out(a.dim(), a.degree() - n, a.block(), a.kind());
  for (int j = 0; j <= n; ++j) {
    Rational c(binomial(n, j));
    if ((j + n) % 2 == 1) c = -c;
    add_scaled(out, shift_sum(a, j), ComplexRational(c));
  }
  return out;
}

GramTable defect_recursive(const GramTable& a, int n) {
  if (n < 0 || n > a.degree()) throw std::invalid_argument("defect order out of range");
  GramTable cur = a;
  for (int i = 0; i < n; ++i) {
    GramTable next = shift_sum(cur, 1);
    // sum_j sigma_j cur - cur, on the smaller window
    GramTable out(a.dim(), cur.degree() - 1, a.block(), a.kind());
    add_scaled(out, next, ComplexRational(1));
    add_scaled(out, cur, ComplexRational(-1));
    cur = std::move(out);
  }
  return cur;
}

TheoremReport check_theorem(const GramTable& a, int m, int k_max) {
  TheoremReport r;
  r.m = m;
  const int N = a.degree();
  if (m < 1 || m > N) return r;
  r.inconclusive = false;

  const auto dm = defect(a, m);
  r.ii = {dm.flat().is_zero(), dm.flat().max_abs(), dm.degree()};

  const auto dm1 = defect(a, m - 1);
  const auto shifted = shift_sum(dm1, 1);
  r.iv = {equal_on(shifted, dm1), max_difference(shifted, dm1), shifted.degree()};

  std::vector<GramTable> defects;
  for (int j = 0; j < m; ++j) defects.push_back(defect(a, j));
  r.iii.holds = true;
  for (int k = 1; k <= std::min(k_max, N); ++k) {
    const auto lhs = shift_sum(a, k);
    GramTable rhs(a.dim(), N - k, a.block(), a.kind());
    for (int j = 0; j < m && j <= k; ++j)
      add_scaled(rhs, defects[static_cast<std::size_t>(j)],
                 ComplexRational(Rational(binomial(k, j))));
    r.iii.holds = r.iii.holds && equal_on(lhs, rhs);
    r.iii.residual = std::max(r.iii.residual, max_difference(lhs, rhs));
    r.iii.window = N - k;
    r.k_checked = k;
  }
  r.defect_psd = dm1.psd();
  return r;
}

Gramian gramian_of(const TruncatedTuple& t) {
  const auto& g = t.gram();
  const auto& G = g.flat();
  const auto kernel = joint_kernel(t);
  if (kernel.cols() == 0) throw std::invalid_argument("joint kernel is trivial on the window");
  const auto n = g.flat_size();
  const auto k = kernel.cols();
  auto inner = [&](const ExactMatrix& x, const ExactMatrix& y) {
    return (y.adjoint() * (G * x))(0, 0);
  };

  Gramian out;
  out.frame = ExactMatrix(n, k);
  std::vector<ExactMatrix> done;
  for (std::size_t c = 0; c < k; ++c) {
    auto v = kernel.col(c);
    for (const auto& f : done) v -= f * (inner(v, f) / inner(f, f));
    done.push_back(v);
  }
  for (std::size_t c = 0; c < k; ++c) {
    auto v = done[c];
    const auto norm = inner(v, v).re();
    if (const auto s = exact_sqrt(norm)) {
      v *= ComplexRational(1 / *s);
    } else {
      out.normalized = false;
    }
    for (std::size_t i = 0; i < n; ++i) {
      out.frame(i, c) = v(i, 0);
      if (!v(i, 0).is_zero()) out.frame_level = std::max(out.frame_level, g.level(i));
    }
  }

  const int bound = t.degree() - out.frame_level;
  GramTable table(t.d(), bound, k, "gramian");
  const auto& labels = table.labels();
  // Columns of V are T^alpha f_j ordered by (alpha, j).
  std::vector<ExactMatrix> images;
  images.reserve(labels.size());
  for (const auto& alpha : labels) {
    if (alpha.order() == 0) {
      images.push_back(out.frame);
      continue;
    }
    int j = 0;
    while (alpha[j] == 0) ++j;
    const auto prev = *alpha.sub(MultiIndex::unit(t.d(), j));
    images.push_back(t.ops()[static_cast<std::size_t>(j)] * images[table.index(prev)]);
  }
  ExactMatrix V(n, table.flat_size());
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t i = 0; i < n; ++i) V(i, a * k + c) = images[a](i, c);
  table.flat() = V.adjoint() * (G * V);
  out.table = std::move(table);
  return out;
}

json theorem_to_json(const TheoremReport& r) {
  auto cond = [](const ConditionResult& c) {
    return json{{"holds", c.holds}, {"residual", c.residual}, {"window", c.window}};
  };
  json j;
  j["m"] = r.m;
  j["inconclusive"] = r.inconclusive;
  if (r.inconclusive) return j;
  j["ii"] = cond(r.ii);
  j["iii"] = cond(r.iii);
  j["iii"]["k_max"] = r.k_checked;
  j["iv"] = cond(r.iv);
  j["defect_m_minus_1_psd"] = r.defect_psd.psd;
  return j;
}

}  // namespace spheridir
