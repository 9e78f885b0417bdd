#include "spheridir/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace spheridir {

namespace {

using nlohmann::json;

ComplexRational monomial_at(const ExactPoint& p, const MultiIndex& alpha, const MultiIndex& beta) {
  ComplexRational v = 1;
  for (int j = 0; j < alpha.dim(); ++j) {
    const auto& x = p[static_cast<std::size_t>(j)];
    for (int k = 0; k < alpha[j]; ++k) v *= x;
    const auto xc = x.conj();
    for (int k = 0; k < beta[j]; ++k) v *= xc;
  }
  return v;
}

void check_points(int d, const std::vector<ExactPoint>& points) {
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != d)
      throw std::invalid_argument("atom dimension does not match measure dimension");
    if (!on_unit_sphere(p)) throw std::invalid_argument("atom does not lie on the unit sphere");
  }
}

json rational_json(const Rational& q) { return format_rational(q); }

json index_json(const MultiIndex& a) { return a.entries(); }

MultiIndex index_from_json(const json& j, int d) {
  if (!j.is_array()) throw std::invalid_argument("multi-index must be an array");
  std::vector<int> e;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw std::invalid_argument("multi-index entries must be integers");
    e.push_back(x.get<int>());
  }
  if (static_cast<int>(e.size()) != d) throw std::invalid_argument("multi-index has wrong length");
  return MultiIndex(std::move(e));
}

int dim_from_json(const json& j) {
  if (!j.contains("d") || !j["d"].is_number_integer() || j["d"].get<int>() < 1)
    throw std::invalid_argument("measure descriptor needs an integer \"d\" >= 1");
  return j["d"].get<int>();
}

}  // namespace

Measure Measure::surface(int d, const Rational& scale) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (sgn(scale) < 0) throw std::invalid_argument("surface measure scale must be >= 0");
  return Measure(d, 1, SurfaceMeasure{scale});
}

Measure Measure::weighted(HermitianPolynomial weight) {
  if (!weight.is_real_valued()) throw std::invalid_argument("density must be real-valued");
  const int d = weight.dim();
  return Measure(d, 1, WeightedSurfaceMeasure{std::move(weight)});
}

Measure Measure::atomic(int d, std::vector<ExactPoint> points, std::vector<Rational> weights) {
  if (points.size() != weights.size())
    throw std::invalid_argument("atomic measure needs one weight per point");
  std::vector<ExactMatrix> ws;
  for (const auto& w : weights) {
    if (sgn(w) <= 0) throw std::invalid_argument("scalar atom weights must be positive");
    ExactMatrix m(1, 1);
    m(0, 0) = w;
    ws.push_back(std::move(m));
  }
  check_points(d, points);
  return Measure(d, 1, AtomicMeasure{std::move(points), std::move(ws)});
}

Measure Measure::atomic_matrix(int d, std::vector<ExactPoint> points,
                               std::vector<ExactMatrix> weights) {
  if (points.size() != weights.size() || points.empty())
    throw std::invalid_argument("atomic measure needs one weight per point and at least one atom");
  const std::size_t r = weights.front().rows();
  for (const auto& w : weights) {
    if (w.rows() != r || w.cols() != r || r == 0)
      throw std::invalid_argument("matrix atom weights must share one square size");
    if (!exact_psd(w).psd) throw std::invalid_argument("matrix atom weights must be PSD");
  }
  check_points(d, points);
  return Measure(d, r, AtomicMeasure{std::move(points), std::move(weights)});
}

HermitianPolynomial Measure::density() const {
  if (const auto* s = std::get_if<SurfaceMeasure>(&data_))
    return HermitianPolynomial::constant(dim_, s->scale);
  if (const auto* w = std::get_if<WeightedSurfaceMeasure>(&data_)) return w->weight;
  throw std::logic_error("atomic measures have no polynomial density");
}

bool Measure::is_harmonic() const {
  return has_polynomial_density() && laplacian(density()).is_zero();
}

bool Measure::is_torus_invariant() const {
  return has_polynomial_density() && density().is_torus_invariant();
}

std::string Measure::describe() const { return measure_to_json(*this).dump(); }

Measure make_lambda_c(const Rational& lambda, const std::vector<Rational>& c) {
  if (c.empty()) throw std::invalid_argument("lambda_c needs d >= 1 coefficients");
  const int d = static_cast<int>(c.size());
  Rational sum = 0;
  for (const auto& cj : c) {
    if (!(lambda > abs(cj))) throw std::invalid_argument("lambda_c requires lambda > max_j |c_j|");
    sum += cj;
  }
  if (sgn(sum) != 0) throw std::invalid_argument("lambda_c requires sum_j c_j = 0");
  auto w = HermitianPolynomial::constant(d, lambda);
  for (int j = 0; j < d; ++j) {
    auto e = MultiIndex::unit(d, j);
    w.add_term(e, e, c[static_cast<std::size_t>(j)]);
  }
  json origin = {{"type", "lambda_c"}, {"d", d}, {"lambda", rational_json(lambda)}};
  origin["c"] = json::array();
  for (const auto& cj : c) origin["c"].push_back(rational_json(cj));
  return Measure::weighted(std::move(w)).set_origin(std::move(origin));
}

Measure make_b_lambda(const Rational& lambda, const std::vector<ComplexRational>& b) {
  if (b.empty()) throw std::invalid_argument("b_lambda needs d >= 1 coefficients");
  const int d = static_cast<int>(b.size());
  Rational bb = 0;
  for (const auto& bj : b) bb += bj.norm2();
  if (sgn(lambda) <= 0) throw std::invalid_argument("b_lambda requires lambda > 0");
  if (!(lambda * lambda > 2 * bb))
    throw std::invalid_argument("b_lambda requires lambda^2 > 2 sum_j |b_j|^2");
  auto w = HermitianPolynomial::constant(d, lambda);
  const MultiIndex zero(d);
  for (int j = 0; j < d; ++j) {
    auto e = MultiIndex::unit(d, j);
    const auto& bj = b[static_cast<std::size_t>(j)];
    w.add_term(e, zero, bj);
    w.add_term(zero, e, bj.conj());
  }
  json origin = {{"type", "b_lambda"}, {"d", d}, {"lambda", rational_json(lambda)}};
  origin["b"] = json::array();
  for (const auto& bj : b) origin["b"].push_back(complex_to_json(bj));
  return Measure::weighted(std::move(w)).set_origin(std::move(origin));
}

PoissonValue poisson_integral(const Measure& mu, const BallPoint& z, const McConfig& cfg) {
  if (z.dim() != mu.dim()) throw std::invalid_argument("point dimension mismatch");
  if (!z.is_interior()) throw std::domain_error("Poisson integral needs an interior point");
  const auto r = static_cast<Eigen::Index>(mu.block());
  PoissonValue out{Eigen::MatrixXcd::Zero(r, r), 0.0, true};
  if (const auto* a = std::get_if<AtomicMeasure>(&mu.data())) {
    for (std::size_t k = 0; k < a->points.size(); ++k)
      out.value += poisson_kernel(z, to_ball_point(a->points[k])) * a->weights[k].to_eigen();
    return out;
  }
  const auto w = mu.density();
  if (mu.is_harmonic()) {
    out.value(0, 0) = w.evaluate(std::span<const std::complex<double>>(z.coords()));
    return out;
  }
  const auto est = mc_sphere(
      [&](const BallPoint& zeta) {
        return poisson_kernel(z, zeta) *
               w.evaluate(std::span<const std::complex<double>>(zeta.coords()));
      },
      mu.dim(), cfg);
  out.value(0, 0) = est.estimate;
  out.std_error = est.std_error;
  out.exact_path = false;
  return out;
}

ExactMatrix total_mass(const Measure& mu) {
  const MultiIndex zero(mu.dim());
  return moment(mu, zero, zero);
}

ExactMatrix moment(const Measure& mu, const MultiIndex& alpha, const MultiIndex& beta) {
  if (alpha.dim() != mu.dim() || beta.dim() != mu.dim())
    throw std::invalid_argument("moment index dimension mismatch");
  ExactMatrix out(mu.block(), mu.block());
  if (const auto* a = std::get_if<AtomicMeasure>(&mu.data())) {
    for (std::size_t k = 0; k < a->points.size(); ++k)
      out += a->weights[k] * monomial_at(a->points[k], alpha, beta);
    return out;
  }
  out(0, 0) = sphere_integral(HermitianPolynomial::monomial(alpha, beta) * mu.density());
  return out;
}

ComplexRational boundary_integral(const Measure& mu, const HermitianPolynomial& h) {
  if (mu.block() != 1) throw std::invalid_argument("boundary_integral needs a scalar measure");
  if (h.dim() != mu.dim()) throw std::invalid_argument("polynomial dimension mismatch");
  if (const auto* a = std::get_if<AtomicMeasure>(&mu.data())) {
    ComplexRational s;
    for (std::size_t k = 0; k < a->points.size(); ++k)
      s += h.evaluate(std::span<const ComplexRational>(a->points[k])) * a->weights[k](0, 0);
    return s;
  }
  return sphere_integral(h * mu.density());
}

bool on_unit_sphere(const ExactPoint& p) {
  Rational s = 0;
  for (const auto& x : p) s += x.norm2();
  return s == 1;
}

ExactPoint random_sphere_point(int d, std::mt19937_64& rng) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  const int n = 2 * d;
  const auto y = sample_sphere(d, rng);
  std::vector<double> real(static_cast<std::size_t>(n));
  for (int j = 0; j < d; ++j) {
    real[2 * j] = y[j].real();
    real[2 * j + 1] = y[j].imag();
  }
  // Stereographic chart from the pole s * e_n opposite to the sample, so the
  // denominator 1 - s * y_n stays >= 1.
  const double last = real[n - 1];
  const int s = last > 0 ? -1 : 1;
  std::vector<Rational> x(static_cast<std::size_t>(n - 1));
  Rational x2 = 0;
  for (int i = 0; i < n - 1; ++i) {
    const double xi = real[i] / (1.0 - s * last);
    x[i] = Rational(static_cast<long>(std::lround(std::ldexp(xi, 12))), 4096);
    x[i].canonicalize();
    x2 += x[i] * x[i];
  }
  std::vector<Rational> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n - 1; ++i) p[i] = 2 * x[i] / (x2 + 1);
  p[n - 1] = Rational(s) * (x2 - 1) / (x2 + 1);
  ExactPoint out;
  for (int j = 0; j < d; ++j) out.emplace_back(p[2 * j], p[2 * j + 1]);
  return out;
}

BallPoint to_ball_point(const ExactPoint& p) {
  std::vector<std::complex<double>> c;
  for (const auto& x : p) c.push_back(x.to_complex());
  return BallPoint(std::move(c));
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("exact scalar must be a \"p/q\" string or an integer");
}

ComplexRational complex_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw std::invalid_argument("complex value must be [re, im]");
    return {rational_from_json(j[0]), rational_from_json(j[1])};
  }
  return rational_from_json(j);
}

json complex_to_json(const ComplexRational& z) {
  return json::array({format_rational(z.re()), format_rational(z.im())});
}

json measure_to_json(const Measure& mu) {
  if (!mu.origin().is_null()) return mu.origin();
  json j;
  j["d"] = mu.dim();
  if (const auto* s = std::get_if<SurfaceMeasure>(&mu.data())) {
    j["type"] = "surface";
    j["scale"] = rational_json(s->scale);
  } else if (const auto* w = std::get_if<WeightedSurfaceMeasure>(&mu.data())) {
    j["type"] = "weighted";
    j["terms"] = json::array();
    for (const auto& [key, c] : w->weight.terms()) {
      j["terms"].push_back({{"alpha", index_json(key.first)},
                            {"beta", index_json(key.second)},
                            {"re", rational_json(c.re())},
                            {"im", rational_json(c.im())}});
    }
  } else {
    const auto& a = std::get<AtomicMeasure>(mu.data());
    j["type"] = "atomic";
    j["points"] = json::array();
    j["weights"] = json::array();
    for (std::size_t k = 0; k < a.points.size(); ++k) {
      json pt = json::array();
      for (const auto& x : a.points[k]) pt.push_back(complex_to_json(x));
      j["points"].push_back(pt);
      const auto& w = a.weights[k];
      if (mu.block() == 1) {
        j["weights"].push_back(rational_json(w(0, 0).re()));
      } else {
        json m = json::array();
        for (std::size_t r = 0; r < w.rows(); ++r) {
          json row = json::array();
          for (std::size_t c = 0; c < w.cols(); ++c) row.push_back(complex_to_json(w(r, c)));
          m.push_back(row);
        }
        j["weights"].push_back(m);
      }
    }
  }
  return j;
}

Measure measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw std::invalid_argument("measure descriptor needs a string \"type\"");
  const auto type = j["type"].get<std::string>();
  int d = 0;
  const char* sized = type == "lambda_c" ? "c" : type == "b_lambda" ? "b" : nullptr;
  if (!j.contains("d") && sized && j.contains(sized) && j[sized].is_array() && !j[sized].empty())
    d = static_cast<int>(j[sized].size());
  else
    d = dim_from_json(j);
  auto need_array = [&](const char* key, std::size_t len) -> const json& {
    if (!j.contains(key) || !j[key].is_array())
      throw std::invalid_argument(std::string("measure descriptor needs array \"") + key + "\"");
    if (len != 0 && j[key].size() != len)
      throw std::invalid_argument(std::string("\"") + key + "\" must have length d");
    return j[key];
  };
  if (type == "surface") {
    return Measure::surface(d, j.contains("scale") ? rational_from_json(j["scale"]) : Rational(1));
  }
  if (type == "lambda_c") {
    if (!j.contains("lambda")) throw std::invalid_argument("lambda_c needs \"lambda\"");
    std::vector<Rational> c;
    for (const auto& x : need_array("c", static_cast<std::size_t>(d))) c.push_back(rational_from_json(x));
    return make_lambda_c(rational_from_json(j["lambda"]), c);
  }
  if (type == "b_lambda") {
    if (!j.contains("lambda")) throw std::invalid_argument("b_lambda needs \"lambda\"");
    std::vector<ComplexRational> b;
    for (const auto& x : need_array("b", static_cast<std::size_t>(d))) b.push_back(complex_from_json(x));
    return make_b_lambda(rational_from_json(j["lambda"]), b);
  }
  if (type == "weighted") {
    HermitianPolynomial w(d);
    for (const auto& t : need_array("terms", 0)) {
      w.add_term(index_from_json(t.at("alpha"), d), index_from_json(t.at("beta"), d),
                 {rational_from_json(t.at("re")),
                  t.contains("im") ? rational_from_json(t["im"]) : Rational(0)});
    }
    return Measure::weighted(std::move(w));
  }
  if (type == "atomic") {
    std::vector<ExactPoint> points;
    for (const auto& pt : need_array("points", 0)) {
      if (!pt.is_array()) throw std::invalid_argument("atom must be an array of coordinates");
      ExactPoint p;
      for (const auto& x : pt) p.push_back(complex_from_json(x));
      points.push_back(std::move(p));
    }
    const auto& ws = need_array("weights", points.size());
    if (!ws.empty() && ws[0].is_array()) {
      std::vector<ExactMatrix> mats;
      for (const auto& m : ws) {
        ExactMatrix w(m.size(), m.size());
        for (std::size_t r = 0; r < m.size(); ++r) {
          if (!m[r].is_array() || m[r].size() != m.size())
            throw std::invalid_argument("matrix weight must be square");
          for (std::size_t c = 0; c < m.size(); ++c) w(r, c) = complex_from_json(m[r][c]);
        }
        mats.push_back(std::move(w));
      }
      return Measure::atomic_matrix(d, std::move(points), std::move(mats));
    }
    std::vector<Rational> w;
    for (const auto& x : ws) w.push_back(rational_from_json(x));
    return Measure::atomic(d, std::move(points), std::move(w));
  }
  throw std::invalid_argument("unknown measure type \"" + type + "\"");
}

}  // namespace spheridir
