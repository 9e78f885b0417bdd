#include "spheridir/tuples.hpp"

#include <stdexcept>

#include "spheridir/measures.hpp"

namespace spheridir {

using nlohmann::json;

namespace {

// d^{e/2} for an integer e; throws when it is irrational.
Rational half_power(const Rational& d, int e) {
  Rational base = d;
  if (e % 2 != 0) {
    const auto r = exact_sqrt(d);
    if (!r) throw std::invalid_argument("scaled basis needs a perfect-square d for odd degree gaps");
    base = *r;
  } else {
    e /= 2;
  }
  const int n = e < 0 ? -e : e;
  Rational out = 1;
  for (int i = 0; i < n; ++i) out *= base;
  return e < 0 ? 1 / out : out;
}

json sparse_json(const ExactMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero())
        out.push_back({{"row", i},
                       {"col", j},
                       {"re", format_rational(m(i, j).re())},
                       {"im", format_rational(m(i, j).im())}});
  return out;
}

}  // namespace

TruncatedTuple::TruncatedTuple(GramTable gram, std::vector<ExactMatrix> ops)
    : gram_(std::move(gram)), ops_(std::move(ops)) {
  if (ops_.empty()) throw std::invalid_argument("tuple needs at least one operator");
  const auto n = gram_.flat_size();
  for (const auto& a : ops_) {
    if (a.rows() != n || a.cols() != n)
      throw std::invalid_argument("operator size does not match the basis");
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t p = 0; p < n; ++p) {
        if (a(p, q).is_zero()) continue;
        if (gram_.level(q) == gram_.degree())
          throw std::invalid_argument("operators must vanish on the top level");
        if (gram_.level(p) > gram_.level(q) + 1)
          throw std::invalid_argument("operators may raise the level by at most one");
      }
  }
}

bool TruncatedTuple::commutes() const {
  const auto cols = gram_.window_flat(degree() - 2);
  for (std::size_t i = 0; i < ops_.size(); ++i)
    for (std::size_t j = i + 1; j < ops_.size(); ++j) {
      const auto c = ops_[i] * ops_[j] - ops_[j] * ops_[i];
      if (!c.block(0, 0, c.rows(), cols).is_zero()) return false;
    }
  return true;
}

TruncatedTuple multiplication_tuple(const GramTable& gram) {
  if (gram.block() != 1) throw std::invalid_argument("multiplication tuple needs a scalar table");
  const int d = gram.dim();
  const auto n = gram.flat_size();
  std::vector<ExactMatrix> ops(static_cast<std::size_t>(d), ExactMatrix(n, n));
  for (const auto& a : gram.labels()) {
    if (a.order() >= gram.degree()) continue;
    for (int j = 0; j < d; ++j) {
      const auto next = a + MultiIndex::unit(d, j);
      if (!gram.contains(next)) throw std::invalid_argument("table is not closed under shifts");
      ops[static_cast<std::size_t>(j)](gram.index(next), gram.index(a)) = 1;
    }
  }
  return TruncatedTuple(gram, std::move(ops));
}

WindowedForm qt_form(const TruncatedTuple& t, int n) {
  if (n < 0 || n > t.degree()) throw std::invalid_argument("qt_form needs 0 <= n <= N");
  const auto& g = t.gram();
  WindowedForm q{g.flat(), t.degree()};
  for (int step = 0; step < n; ++step) {
    const int w = q.window - 1;
    const auto rows = g.window_flat(q.window);
    const auto cols = g.window_flat(w);
    ExactMatrix next(cols, cols);
    for (const auto& a : t.ops()) {
      const auto aj = a.block(0, 0, rows, cols);
      next += aj.adjoint() * (q.form * aj);
    }
    q = WindowedForm{std::move(next), w};
  }
  return q;
}

WindowedForm restrict_form(const WindowedForm& f, const GramTable& basis, int window) {
  if (window > f.window) throw std::invalid_argument("cannot widen a form's window");
  if (window < 0) return WindowedForm{ExactMatrix(0, 0), -1};
  const auto s = basis.window_flat(window);
  return WindowedForm{f.form.block(0, 0, s, s), window};
}

WindowedForm bm_form(const TruncatedTuple& t, int m) {
  if (m < 0 || m > t.degree()) throw std::invalid_argument("bm_form needs 0 <= m <= N");
  const int w = t.degree() - m;
  const auto s = t.gram().window_flat(w);
  WindowedForm out{ExactMatrix(s, s), w};
  for (int n = 0; n <= m; ++n) {
    auto q = restrict_form(qt_form(t, n), t.gram(), w);
    Rational c(binomial(m, n));
    if (n % 2 == 1) c = -c;
    out.form += q.form * ComplexRational(c);
  }
  return out;
}

std::string to_string(TupleClass c) {
  switch (c) {
    case TupleClass::isometry: return "isometry";
    case TupleClass::concave: return "concave";
    case TupleClass::convex: return "convex";
    case TupleClass::none: return "none";
    case TupleClass::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Classification classify(const TruncatedTuple& t, int m) {
  Classification out;
  out.m = m;
  if (m < 0 || m > t.degree()) return out;
  const auto b = bm_form(t, m);
  out.window = b.window;
  if (b.empty() || b.form.rows() == 0) return out;
  out.rank = exact_rank(b.form);
  if (out.rank == 0) {
    out.kind = TupleClass::isometry;
    return out;
  }
  const auto signed_form = b.form * ComplexRational(m % 2 == 0 ? 1 : -1);
  if (exact_psd(signed_form * ComplexRational(-1)).psd)
    out.kind = TupleClass::concave;
  else if (exact_psd(signed_form).psd)
    out.kind = TupleClass::convex;
  else
    out.kind = TupleClass::none;
  return out;
}

ExactMatrix joint_kernel(const TruncatedTuple& t) {
  const auto& g = t.gram();
  if (t.degree() < 1) throw std::invalid_argument("joint kernel needs N >= 1");
  if (!g.psd().definite) throw std::invalid_argument("joint kernel needs a positive definite Gram");
  const auto n = g.flat_size();
  const auto s = g.window_flat(t.degree() - 1);
  ExactMatrix rows(s * t.ops().size(), s);
  for (std::size_t j = 0; j < t.ops().size(); ++j) {
    const auto m = t.ops()[j].adjoint() * g.flat();
    for (std::size_t u = 0; u < s; ++u)
      for (std::size_t v = 0; v < s; ++v) rows(j * s + u, v) = m(u, v);
  }
  const auto k = null_space(rows);
  ExactMatrix out(n, k.cols());
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t c = 0; c < k.cols(); ++c) out(i, c) = k(i, c);
  return out;
}

TruncatedTuple scaled_pair(const TruncatedTuple& t0, int d) {
  if (d < 1) throw std::invalid_argument("scaled_pair needs d >= 1");
  const auto& g = t0.gram();
  if (t0.d() != 1 || g.dim() != 1 || g.block() != 1)
    throw std::invalid_argument("scaled_pair needs a single operator on a one-variable basis");
  if (d == 1) return t0;
  const Rational dd(d);
  const auto n = g.flat_size();
  GramTable gram(g.labels(), 1, g.degree(), 1, g.kind());
  ExactMatrix op(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const int kp = g.labels()[p][0];
      const int kq = g.labels()[q][0];
      if (!g.flat()(p, q).is_zero())
        gram.flat()(p, q) = g.flat()(p, q) * ComplexRational(half_power(dd, -(kp + kq)));
      // T_j u_q = sum_p a_pq d^{(kp - kq - 1)/2} u_p
      const auto& a = t0.ops()[0](p, q);
      if (!a.is_zero()) op(p, q) = a * ComplexRational(half_power(dd, kp - kq - 1));
    }
  return TruncatedTuple(std::move(gram), std::vector<ExactMatrix>(static_cast<std::size_t>(d), op));
}

json form_to_json(const WindowedForm& f) {
  return {{"window", f.window}, {"entries", sparse_json(f.form)}};
}

json tuple_to_json(const TruncatedTuple& t) {
  json ops = json::array();
  for (const auto& a : t.ops()) ops.push_back(sparse_json(a));
  return {{"gram", t.gram().to_json()}, {"ops", ops}};
}

TruncatedTuple tuple_from_json(const json& j) {
  if (!j.is_object() || !j.contains("gram") || !j.contains("ops") || !j["ops"].is_array())
    throw std::invalid_argument("tuple needs \"gram\" and an \"ops\" array");
  auto gram = GramTable::from_json(j["gram"]);
  const auto n = gram.flat_size();
  std::vector<ExactMatrix> ops;
  for (const auto& op : j["ops"]) {
    if (!op.is_array()) throw std::invalid_argument("operator must be a triplet array");
    ExactMatrix a(n, n);
    for (const auto& e : op) {
      if (!e.contains("row") || !e.contains("col"))
        throw std::invalid_argument("operator entry needs \"row\" and \"col\"");
      const auto r = e["row"].get<std::size_t>();
      const auto c = e["col"].get<std::size_t>();
      if (r >= n || c >= n) throw std::invalid_argument("operator entry out of range");
      a(r, c) = ComplexRational(e.contains("re") ? rational_from_json(e["re"]) : Rational(0),
                                e.contains("im") ? rational_from_json(e["im"]) : Rational(0));
    }
    ops.push_back(std::move(a));
  }
  return TruncatedTuple(std::move(gram), std::move(ops));
}

}  // namespace spheridir
