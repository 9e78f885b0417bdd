#include "spheridir/spaces.hpp"

#include <algorithm>
#include <stdexcept>

#include "spheridir/dirichlet.hpp"

namespace spheridir {

using nlohmann::json;

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

Rational rising(const Rational& p, int n) {
  Rational out = 1;
  for (int i = 0; i < n; ++i) out *= p + i;
  return out;
}

}  // namespace

// Monomial Gram of D(mu) for a harmonic polynomial density. Entries vanish
// when the grades differ by more than the density degree.
GramTable dirichlet_gram(const Measure& mu, int N) {
  if (!mu.is_harmonic())
    throw std::invalid_argument("exact Dirichlet Gram needs a harmonic polynomial density");
  GramTable t(mu.dim(), N);
  const int spread = std::max(0, mu.density().degree());
  const auto& labels = t.labels();
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a; b < labels.size(); ++b) {
      if (std::abs(labels[a].order() - labels[b].order()) > spread) continue;
      const auto v = dirichlet_inner_exact(VectorPolynomial::monomial(labels[a]),
                                           VectorPolynomial::monomial(labels[b]), mu);
      t.set_hermitian(labels[a], labels[b], v);
    }
  return t;
}

int space_dim(const SpaceSpec& s) {
  return std::visit(overloaded{[](const HpSpace& h) { return h.d; },
                               [](const LambdaCSpace& l) { return static_cast<int>(l.c.size()); },
                               [](const BLambdaSpace& b) { return static_cast<int>(b.b.size()); },
                               [](const CustomSpace& c) { return c.table.dim(); }},
                    s);
}

void validate(const SpaceSpec& s) {
  std::visit(overloaded{[](const HpSpace& h) {
                          if (h.d < 1) throw std::invalid_argument("H_p needs d >= 1");
                          if (sgn(h.p) <= 0) throw std::invalid_argument("H_p requires p > 0");
                        },
                        [](const LambdaCSpace& l) { make_lambda_c(l.lambda, l.c); },
                        [](const BLambdaSpace& b) { make_b_lambda(b.lambda, b.b); },
                        [](const CustomSpace& c) {
                          if (!c.table.is_hermitian())
                            throw std::invalid_argument("custom Gram table is not Hermitian");
                          if (c.table.block() != 1)
                            throw std::invalid_argument("custom Gram table must be scalar");
                        }},
             s);
}

Measure space_measure(const SpaceSpec& s) {
  if (const auto* l = std::get_if<LambdaCSpace>(&s)) return make_lambda_c(l->lambda, l->c);
  if (const auto* b = std::get_if<BLambdaSpace>(&s)) return make_b_lambda(b->lambda, b->b);
  throw std::invalid_argument("only the Dirichlet families carry a boundary measure");
}

Rational hp_norm2(const Rational& p, const MultiIndex& alpha) {
  if (sgn(p) <= 0) throw std::invalid_argument("H_p requires p > 0");
  return Rational(alpha.factorial()) / rising(p, alpha.order());
}

Rational lambda_c_norm2(const LambdaCSpace& s, const MultiIndex& alpha) {
  const int d = static_cast<int>(s.c.size());
  if (alpha.dim() != d) throw std::invalid_argument("index dimension mismatch");
  const int n = alpha.order();
  Rational ck = 0;
  for (int k = 0; k < d; ++k) ck += s.c[static_cast<std::size_t>(k)] * alpha[k];
  const Rational L = 1 + s.lambda * n;
  const Rational K = ratio(n - 1, n + d) * ck;
  return hp_norm2(Rational(d), alpha) * (L + K);
}

GramTable gram(const SpaceSpec& s, int N) {
  validate(s);
  const int d = space_dim(s);
  if (const auto* h = std::get_if<HpSpace>(&s)) {
    GramTable t(d, N);
    for (const auto& a : t.labels()) t.set_entry(a, a, hp_norm2(h->p, a));
    return t;
  }
  if (const auto* l = std::get_if<LambdaCSpace>(&s)) {
    GramTable t(d, N);
    for (const auto& a : t.labels()) t.set_entry(a, a, lambda_c_norm2(*l, a));
    return t;
  }
  if (std::holds_alternative<BLambdaSpace>(s)) return dirichlet_gram(space_measure(s), N);
  const auto& table = std::get<CustomSpace>(s).table;
  if (N > table.degree()) throw std::invalid_argument("custom table has a smaller degree bound");
  return table.truncated(N);
}

Rational multishift_weights(const LambdaCSpace& s, const MultiIndex& alpha, int j) {
  validate(s);
  const int d = static_cast<int>(s.c.size());
  if (j < 0 || j >= d) throw std::out_of_range("direction out of range");
  const int n = alpha.order();
  const auto L = [&](int k) -> Rational { return 1 + s.lambda * k; };
  const auto K = [&](const MultiIndex& a) -> Rational {
    Rational ck = 0;
    for (int k = 0; k < d; ++k) ck += s.c[static_cast<std::size_t>(k)] * a[k];
    return ratio(a.order() - 1, a.order() + d) * ck;
  };
  const auto next = alpha + MultiIndex::unit(d, j);
  return ratio(alpha[j] + 1, n + d) * (L(n + 1) + K(next)) / (L(n) + K(alpha));
}

GramTable one_d_dirichlet(const Measure& nu, int N) {
  if (nu.dim() != 1) throw std::invalid_argument("one_d_dirichlet needs a measure on the circle");
  if (nu.block() != 1) throw std::invalid_argument("one_d_dirichlet needs a scalar measure");
  if (nu.has_polynomial_density()) {
    if (!nu.is_harmonic())
      throw std::invalid_argument("one_d_dirichlet needs a harmonic density or an atomic measure");
    return dirichlet_gram(nu, N);
  }
  // <z^j, z^k> = delta_jk + int D_zeta(z^j, z^k) dnu, with the local Dirichlet
  // pairing sum_{i < min(j,k)} zeta^{j-1-i} conj(zeta)^{k-1-i}.
  const auto& atoms = std::get<AtomicMeasure>(nu.data());
  GramTable t(1, N);
  for (int j = 0; j <= N; ++j)
    for (int k = j; k <= N; ++k) {
      ComplexRational v = j == k ? ComplexRational(1) : ComplexRational();
      for (std::size_t a = 0; a < atoms.points.size(); ++a) {
        const auto& z = atoms.points[a][0];
        ComplexRational local;
        for (int i = 0; i < j; ++i) {
          ComplexRational term = atoms.weights[a](0, 0);
          for (int e = 0; e < j - 1 - i; ++e) term *= z;
          for (int e = 0; e < k - 1 - i; ++e) term *= z.conj();
          local += term;
        }
        v += local;
      }
      t.set_hermitian(MultiIndex{j}, MultiIndex{k}, v);
    }
  return t;
}

SpaceSpec space_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw std::invalid_argument("space descriptor needs a \"type\" string");
  const auto type = j["type"].get<std::string>();
  SpaceSpec s;
  if (type == "hp") {
    if (!j.contains("p") || !j.contains("d") || !j["d"].is_number_integer())
      throw std::invalid_argument("hp space needs \"p\" and integer \"d\"");
    s = HpSpace{rational_from_json(j["p"]), j["d"].get<int>()};
  } else if (type == "lambda_c") {
    if (!j.contains("lambda") || !j.contains("c") || !j["c"].is_array())
      throw std::invalid_argument("lambda_c space needs \"lambda\" and a \"c\" array");
    LambdaCSpace l{rational_from_json(j["lambda"]), {}};
    for (const auto& x : j["c"]) l.c.push_back(rational_from_json(x));
    s = l;
  } else if (type == "b_lambda") {
    if (!j.contains("lambda") || !j.contains("b") || !j["b"].is_array())
      throw std::invalid_argument("b_lambda space needs \"lambda\" and a \"b\" array");
    BLambdaSpace b{rational_from_json(j["lambda"]), {}};
    for (const auto& x : j["b"]) b.b.push_back(complex_from_json(x));
    s = b;
  } else if (type == "custom") {
    s = CustomSpace{GramTable::from_json(j.contains("table") ? j["table"] : j)};
  } else {
    throw std::invalid_argument("unknown space type \"" + type + "\"");
  }
  if (j.contains("d") && j["d"].is_number_integer() && j["d"].get<int>() != space_dim(s))
    throw std::invalid_argument("\"d\" does not match the parameter length");
  validate(s);
  return s;
}

json space_to_json(const SpaceSpec& s) {
  return std::visit(
      overloaded{[](const HpSpace& h) {
                   return json{{"type", "hp"}, {"p", format_rational(h.p)}, {"d", h.d}};
                 },
                 [](const LambdaCSpace& l) {
                   json c = json::array();
                   for (const auto& x : l.c) c.push_back(format_rational(x));
                   return json{{"type", "lambda_c"},
                               {"d", l.c.size()},
                               {"lambda", format_rational(l.lambda)},
                               {"c", c}};
                 },
                 [](const BLambdaSpace& b) {
                   json v = json::array();
                   for (const auto& x : b.b) v.push_back(complex_to_json(x));
                   return json{{"type", "b_lambda"},
                               {"d", b.b.size()},
                               {"lambda", format_rational(b.lambda)},
                               {"b", v}};
                 },
                 [](const CustomSpace& c) {
                   return json{{"type", "custom"}, {"table", c.table.to_json()}};
                 }},
      s);
}

}  // namespace spheridir
