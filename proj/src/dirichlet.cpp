#include "spheridir/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>

namespace spheridir {

namespace {

using nlohmann::json;

// r x r polynomials H[k][i] standing for the pairing sum_{k,i} P_{k i} H[k][i].
using PairMatrix = std::vector<std::vector<HermitianPolynomial>>;

PairMatrix zero_pairs(int d, std::size_t r) {
  return PairMatrix(r, std::vector<HermitianPolynomial>(r, HermitianPolynomial(d)));
}

void add_into(PairMatrix& a, const PairMatrix& b, const ComplexRational& s = 1) {
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t i = 0; i < a.size(); ++i) a[k][i] += b[k][i] * s;
}

// H[k][i] = sum_j d_j f_i conj(d_j g_k).
PairMatrix grad_pairs(const VectorPolynomial& f, const VectorPolynomial& g) {
  const std::size_t r = f.block();
  auto out = zero_pairs(f.dim(), r);
  std::vector<HermitianPolynomial> fc, gc;
  for (std::size_t i = 0; i < r; ++i) {
    fc.push_back(f.component(i));
    gc.push_back(g.component(i));
  }
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < r; ++i)
      if (!fc[i].is_zero() && !gc[k].is_zero()) out[k][i] = gradient_pairing(fc[i], gc[k]);
  return out;
}

// H[k][i] = f_i conj(g_k).
PairMatrix value_pairs(const VectorPolynomial& f, const VectorPolynomial& g) {
  const std::size_t r = f.block();
  auto out = zero_pairs(f.dim(), r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < r; ++i) out[k][i] = times_conj(f.component(i), g.component(k));
  return out;
}

HermitianPolynomial trace_of(const PairMatrix& h) {
  HermitianPolynomial out(h[0][0].dim());
  for (std::size_t i = 0; i < h.size(); ++i) out += h[i][i];
  return out;
}

HermitianPolynomial contract(const PairMatrix& h, const ExactMatrix& w) {
  HermitianPolynomial out(h[0][0].dim());
  for (std::size_t k = 0; k < h.size(); ++k)
    for (std::size_t i = 0; i < h.size(); ++i)
      if (!w(k, i).is_zero()) out += h[k][i] * w(k, i);
  return out;
}

void check_pair_args(const VectorPolynomial& f, const VectorPolynomial& g, const Measure& mu) {
  if (f.dim() != g.dim() || f.dim() != mu.dim())
    throw std::invalid_argument("polynomial and measure dimensions differ");
  if (f.block() != g.block()) throw std::invalid_argument("polynomial value dimensions differ");
  if (mu.block() != 1 && mu.block() != f.block())
    throw std::invalid_argument("operator-valued measure size does not match value dimension");
}

bool exact_volume_path(const Measure& mu, PoissonKind kind) {
  return kind == PoissonKind::euclidean && mu.is_harmonic();
}

// int sum P_{ki} H[k][i] dV for a harmonic density.
ComplexRational exact_volume(const PairMatrix& h, const Measure& mu) {
  return ball_integral(trace_of(h) * mu.density());
}

// int sum <dF p, q> over the sphere, i.e. sum_{k,i} int H[k][i] dF_{ki}.
ComplexRational boundary_pairing(const PairMatrix& h, const Measure& mu) {
  if (const auto* a = std::get_if<AtomicMeasure>(&mu.data())) {
    ComplexRational s;
    for (std::size_t n = 0; n < a->points.size(); ++n) {
      const auto poly = mu.block() == 1 ? trace_of(h) * a->weights[n](0, 0)
                                        : contract(h, a->weights[n]);
      s += poly.evaluate(std::span<const ComplexRational>(a->points[n]));
    }
    return s;
  }
  return sphere_integral(trace_of(h) * mu.density());
}

// Float evaluation of many Hermitian polynomials sharing one monomial table.
class CompiledPolys {
 public:
  explicit CompiledPolys(const std::vector<HermitianPolynomial>& polys) {
    std::map<HermitianPolynomial::Key, int> index;
    for (const auto& p : polys) {
      std::vector<std::pair<int, std::complex<double>>> row;
      for (const auto& [key, c] : p.terms()) {
        auto [it, inserted] = index.try_emplace(key, static_cast<int>(keys_.size()));
        if (inserted) keys_.push_back(key);
        row.emplace_back(it->second, c.to_complex());
      }
      rows_.push_back(std::move(row));
    }
    if (!polys.empty()) dim_ = polys.front().dim();
    for (const auto& [a, b] : keys_)
      for (int j = 0; j < dim_; ++j) max_exp_ = std::max({max_exp_, a[j], b[j]});
  }

  std::size_t size() const { return rows_.size(); }

  void evaluate(const BallPoint& z, std::span<std::complex<double>> out) const {
    thread_local std::vector<std::complex<double>> pw, cpw, mono;
    const auto stride = static_cast<std::size_t>(max_exp_ + 1);
    pw.assign(static_cast<std::size_t>(dim_) * stride, 1.0);
    cpw.assign(pw.size(), 1.0);
    for (int j = 0; j < dim_; ++j) {
      const auto zj = z[j];
      for (std::size_t e = 1; e < stride; ++e) {
        pw[j * stride + e] = pw[j * stride + e - 1] * zj;
        cpw[j * stride + e] = cpw[j * stride + e - 1] * std::conj(zj);
      }
    }
    mono.resize(keys_.size());
    for (std::size_t m = 0; m < keys_.size(); ++m) {
      std::complex<double> v = 1.0;
      for (int j = 0; j < dim_; ++j) {
        const auto aj = static_cast<std::size_t>(keys_[m].first[j]);
        const auto bj = static_cast<std::size_t>(keys_[m].second[j]);
        if (aj) v *= pw[j * stride + aj];
        if (bj) v *= cpw[j * stride + bj];
      }
      mono[m] = v;
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::complex<double> s = 0.0;
      for (const auto& [m, c] : rows_[r]) s += c * mono[static_cast<std::size_t>(m)];
      out[r] = s;
    }
  }

 private:
  std::vector<HermitianPolynomial::Key> keys_;
  std::vector<std::vector<std::pair<int, std::complex<double>>>> rows_;
  int dim_ = 1;
  int max_exp_ = 0;
};

Value from_estimate(const McEstimate& e) {
  Value v;
  v.value = e.estimate;
  v.std_error = e.std_error;
  v.samples = e.samples;
  v.rejected = e.rejected;
  return v;
}

std::uint64_t atom_seed(std::uint64_t seed, std::size_t atom) {
  return seed ^ (0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(atom) + 1));
}

// Monte Carlo estimates of int sum P_{ki} H[k][i] dV for every integrand, all
// sharing the same samples.
std::vector<Value> mc_volume(const std::vector<PairMatrix>& integrands, const Measure& mu,
                             PoissonKind kind, const McConfig& cfg) {
  std::vector<Value> out(integrands.size());
  if (integrands.empty()) return out;
  if (const auto* a = std::get_if<AtomicMeasure>(&mu.data())) {
    for (auto& v : out) v.value = 0.0;
    double* var = nullptr;
    std::vector<double> vars(integrands.size(), 0.0);
    var = vars.data();
    for (std::size_t n = 0; n < a->points.size(); ++n) {
      std::vector<HermitianPolynomial> polys;
      for (const auto& h : integrands)
        polys.push_back(mu.block() == 1 ? trace_of(h) * a->weights[n](0, 0)
                                        : contract(h, a->weights[n]));
      const CompiledPolys compiled(polys);
      McConfig atom_cfg = cfg;
      atom_cfg.seed = atom_seed(cfg.seed, n);
      const auto est = mc_kernel_ball(
          [&](const BallPoint& z, std::span<std::complex<double>> o) { compiled.evaluate(z, o); },
          compiled.size(), to_ball_point(a->points[n]), kind, atom_cfg);
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].value += est[i].estimate;
        var[i] += est[i].std_error * est[i].std_error;
        out[i].samples += est[i].samples;
        out[i].rejected += est[i].rejected;
      }
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i].std_error = std::sqrt(var[i]);
    return out;
  }
  std::vector<HermitianPolynomial> polys;
  for (const auto& h : integrands) polys.push_back(trace_of(h));
  const CompiledPolys compiled(polys);
  const auto density = mu.density();
  const auto est = mc_kernel_ball_sphere(
      [&](const BallPoint& z, std::span<std::complex<double>> o) { compiled.evaluate(z, o); },
      compiled.size(),
      [&](const BallPoint& zeta) {
        return density.evaluate(std::span<const std::complex<double>>(zeta.coords())).real();
      },
      mu.dim(), kind, cfg);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = from_estimate(est[i]);
  return out;
}

Value volume(const PairMatrix& h, const Measure& mu, PoissonKind kind, const McConfig& cfg) {
  if (exact_volume_path(mu, kind)) return Value::of(exact_volume(h, mu));
  return mc_volume({h}, mu, kind, cfg)[0];
}

Value add_exact(Value v, const ComplexRational& c) {
  if (v.exact) {
    *v.exact += c;
    v.value = v.exact->to_complex();
  } else {
    v.value += c.to_complex();
  }
  return v;
}

Value scale_exact(Value v, const Rational& s) {
  if (v.exact) {
    *v.exact *= ComplexRational(s);
    v.value = v.exact->to_complex();
  } else {
    v.value *= s.get_d();
    v.std_error *= std::abs(s.get_d());
  }
  return v;
}

PairMatrix richter_lhs(const VectorPolynomial& p, const VectorPolynomial& q, int k) {
  auto out = zero_pairs(p.dim(), p.block());
  for (const auto& gamma : enumerate_exact(p.dim(), k))
    add_into(out, grad_pairs(p.shifted(gamma), q.shifted(gamma)),
             ComplexRational(Rational(multinomial_weight(gamma))));
  return out;
}

json exact_json(const ComplexRational& q) {
  return {{"re", format_rational(q.re())}, {"im", format_rational(q.im())}};
}

const char* kernel_name(PoissonKind k) {
  return k == PoissonKind::euclidean ? "poisson" : "invariant_poisson";
}

}  // namespace

VectorPolynomial::VectorPolynomial(int dim, std::size_t block) : dim_(dim), block_(block) {
  if (dim < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
  if (block < 1) throw std::invalid_argument("value dimension must be >= 1");
}

VectorPolynomial VectorPolynomial::monomial(const MultiIndex& alpha, std::size_t block,
                                            std::size_t slot, const ComplexRational& c) {
  VectorPolynomial f(alpha.dim(), block);
  f.add_term(alpha, slot, c);
  return f;
}

VectorPolynomial VectorPolynomial::from_scalar(const HermitianPolynomial& h) {
  if (!h.is_holomorphic()) throw std::invalid_argument("expected a holomorphic polynomial");
  VectorPolynomial f(h.dim(), 1);
  for (const auto& [key, c] : h.terms()) f.add_term(key.first, 0, c);
  return f;
}

void VectorPolynomial::add_term(const MultiIndex& alpha, std::size_t slot,
                                const ComplexRational& c) {
  if (alpha.dim() != dim_) throw std::invalid_argument("term dimension mismatch");
  if (slot >= block_) throw std::out_of_range("value slot out of range");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(alpha, std::vector<ComplexRational>(block_));
  it->second[slot] += c;
  if (std::all_of(it->second.begin(), it->second.end(), [](const auto& x) { return x.is_zero(); }))
    terms_.erase(it);
}

HermitianPolynomial VectorPolynomial::component(std::size_t slot) const {
  HermitianPolynomial h(dim_);
  const MultiIndex zero(dim_);
  for (const auto& [alpha, v] : terms_) h.add_term(alpha, zero, v[slot]);
  return h;
}

VectorPolynomial VectorPolynomial::shifted(const MultiIndex& gamma) const {
  VectorPolynomial out(dim_, block_);
  for (const auto& [alpha, v] : terms_) out.terms_.emplace(alpha + gamma, v);
  return out;
}

std::vector<ComplexRational> VectorPolynomial::at_origin() const {
  auto it = terms_.find(MultiIndex(dim_));
  return it == terms_.end() ? std::vector<ComplexRational>(block_) : it->second;
}

Value Value::of(const ComplexRational& q) {
  Value v;
  v.exact = q;
  v.value = q.to_complex();
  return v;
}

bool RichterReport::consistent_with_zero(double sigmas) const {
  if (residual.exact) return residual.exact->is_zero();
  return std::abs(residual.value) <= sigmas * residual.std_error;
}

bool RichterReport::significant(double sigmas) const {
  if (residual.exact) return !residual.exact->is_zero();
  return std::abs(residual.value) > sigmas * residual.std_error;
}

Value dirichlet_inner(const VectorPolynomial& f, const VectorPolynomial& g, const Measure& F,
                      const McConfig& cfg) {
  check_pair_args(f, g, F);
  ComplexRational hardy = sphere_integral(trace_of(value_pairs(f, g)));
  auto grad = volume(grad_pairs(f, g), F, PoissonKind::euclidean, cfg);
  return add_exact(scale_exact(grad, Rational(1, F.dim())), hardy);
}

ComplexRational dirichlet_inner_exact(const VectorPolynomial& f, const VectorPolynomial& g,
                                      const Measure& F) {
  check_pair_args(f, g, F);
  if (!F.is_harmonic())
    throw std::invalid_argument("exact Dirichlet pairing needs a harmonic polynomial density");
  return sphere_integral(trace_of(value_pairs(f, g))) +
         exact_volume(grad_pairs(f, g), F) * ComplexRational(Rational(1, F.dim()));
}

Value circ_inner(const VectorPolynomial& f, const VectorPolynomial& g, const Measure& mu,
                 const McConfig& cfg) {
  check_pair_args(f, g, mu);
  if (f.block() != 1) throw std::invalid_argument("circle pairing is defined for scalar polynomials");
  const auto origin = f.at_origin()[0] * g.at_origin()[0].conj();
  auto grad = volume(grad_pairs(f, g), mu, PoissonKind::euclidean, cfg);
  return add_exact(scale_exact(grad, Rational(1, mu.dim())), origin);
}

ComplexRational circ_inner_exact(const VectorPolynomial& f, const VectorPolynomial& g,
                                 const Measure& mu) {
  const auto v = circ_inner(f, g, mu);
  if (!v.exact) throw std::invalid_argument("exact circle pairing needs a harmonic density");
  return *v.exact;
}

std::vector<RichterReport> verify_richter_batch(const std::vector<RichterCase>& cases,
                                                const Measure& mu, const McConfig& cfg,
                                                PoissonKind kernel) {
  const int d = mu.dim();
  std::vector<RichterReport> reports(cases.size());
  std::vector<PairMatrix> lhs_h, rhs_h;
  std::vector<ComplexRational> boundary;
  for (const auto& c : cases) {
    check_pair_args(c.p, c.q, mu);
    if (c.k < 0) throw std::invalid_argument("k must be non-negative");
    lhs_h.push_back(richter_lhs(c.p, c.q, c.k));
    rhs_h.push_back(grad_pairs(c.p, c.q));
    boundary.push_back(boundary_pairing(value_pairs(c.p, c.q), mu) *
                       ComplexRational(Rational(c.k * d)));
  }
  const bool exact = exact_volume_path(mu, kernel);
  std::vector<Value> vols;
  if (!exact) {
    std::vector<PairMatrix> integrands;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      auto diff = lhs_h[i];
      add_into(diff, rhs_h[i], ComplexRational(-1));
      integrands.push_back(lhs_h[i]);
      integrands.push_back(rhs_h[i]);
      integrands.push_back(std::move(diff));
    }
    vols = mc_volume(integrands, mu, kernel, cfg);
  }
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto& r = reports[i];
    r.k = cases[i].k;
    r.d = d;
    r.kernel = kernel;
    r.measure = mu.describe();
    r.label = cases[i].label;
    if (exact) {
      r.mode = VerifyMode::exact;
      r.lhs = Value::of(exact_volume(lhs_h[i], mu));
      r.rhs = Value::of(exact_volume(rhs_h[i], mu) + boundary[i]);
      r.residual = Value::of(*r.lhs.exact - *r.rhs.exact);
    } else {
      r.mode = VerifyMode::monte_carlo;
      r.lhs = vols[3 * i];
      r.rhs = add_exact(vols[3 * i + 1], boundary[i]);
      r.residual = add_exact(vols[3 * i + 2], -boundary[i]);
    }
  }
  return reports;
}

RichterReport verify_richter(const VectorPolynomial& p, const VectorPolynomial& q,
                             const Measure& mu, int k, const McConfig& cfg) {
  return verify_richter_batch({RichterCase{p, q, k, ""}}, mu, cfg)[0];
}

std::vector<RichterReport> falsify_invariant_kernel_batch(const std::vector<RichterCase>& cases,
                                                          const Measure& mu,
                                                          const McConfig& cfg) {
  if (mu.dim() < 2)
    throw std::invalid_argument("invariant-kernel test needs d >= 2; the kernels agree for d = 1");
  return verify_richter_batch(cases, mu, cfg, PoissonKind::invariant);
}

RichterReport falsify_invariant_kernel(const VectorPolynomial& p, const VectorPolynomial& q,
                                       const Measure& mu, int k, const McConfig& cfg) {
  return falsify_invariant_kernel_batch({RichterCase{p, q, k, ""}}, mu, cfg)[0];
}

RichterReport verify_radius_identity(const VectorPolynomial& f, const VectorPolynomial& g,
                                     const Measure& mu, const Rational& radius) {
  check_pair_args(f, g, mu);
  if (!(sgn(radius) > 0 && radius < 1)) throw std::invalid_argument("radius must lie in (0, 1)");
  if (!mu.is_harmonic())
    throw std::invalid_argument("radius identity is evaluated exactly for harmonic densities only");
  const int d = mu.dim();
  Rational r2d = 1;
  for (int i = 0; i < 2 * d; ++i) r2d *= radius;
  const auto w = mu.density();

  auto lhs_pairs = zero_pairs(d, f.block());
  for (int j = 0; j < d; ++j) {
    const auto e = MultiIndex::unit(d, j);
    add_into(lhs_pairs, grad_pairs(f.shifted(e), g.shifted(e)));
  }
  add_into(lhs_pairs, grad_pairs(f, g), ComplexRational(-radius * radius));
  const auto lhs = ball_integral((trace_of(lhs_pairs) * w).dilate(radius)) * ComplexRational(r2d);
  const auto rhs = sphere_integral((trace_of(value_pairs(f, g)) * w).dilate(radius)) *
                   ComplexRational(Rational(d) * r2d);

  RichterReport r;
  r.lhs = Value::of(lhs);
  r.rhs = Value::of(rhs);
  r.residual = Value::of(lhs - rhs);
  r.mode = VerifyMode::exact;
  r.d = d;
  r.k = 1;
  r.measure = mu.describe();
  r.label = "R=" + format_rational(radius);
  return r;
}

ComplexRational radius_limit_gap(const VectorPolynomial& f, const VectorPolynomial& g,
                                 const Measure& mu, const Rational& radius) {
  check_pair_args(f, g, mu);
  if (!mu.is_harmonic())
    throw std::invalid_argument("radius limit is evaluated exactly for harmonic densities only");
  const auto at_r =
      sphere_integral((trace_of(value_pairs(f, g)) * mu.density()).dilate(radius));
  ComplexRational limit = -dirichlet_inner_exact(f, g, mu);
  for (int j = 0; j < mu.dim(); ++j) {
    const auto e = MultiIndex::unit(mu.dim(), j);
    limit += dirichlet_inner_exact(f.shifted(e), g.shifted(e), mu);
  }
  return at_r - limit;
}

MonoEstimate mono_estimate(const Measure& mu, const MultiIndex& alpha) {
  const int d = mu.dim();
  auto circ_norm = [&](const MultiIndex& a) {
    const auto m = VectorPolynomial::monomial(a);
    return circ_inner_exact(m, m, mu).re();
  };
  MonoEstimate out;
  out.lhs = 0;
  for (int k = 0; k < d; ++k) out.lhs += circ_norm(alpha + MultiIndex::unit(d, k));
  const Rational mass_term = total_mass(mu)(0, 0).re() / d;
  const Rational c = std::max(Rational(2 * (1 + d)), mass_term);
  out.bound = c * circ_norm(alpha);
  return out;
}

json value_to_json(const Value& v) {
  json j;
  j["value"] = json::array({v.value.real(), v.value.imag()});
  if (v.exact) {
    j["exact"] = exact_json(*v.exact);
  } else {
    j["std_error"] = v.std_error;
    j["samples"] = v.samples;
    j["rejected"] = v.rejected;
  }
  return j;
}

json report_to_json(const RichterReport& r) {
  json j;
  if (!r.label.empty()) j["label"] = r.label;
  j["d"] = r.d;
  j["k"] = r.k;
  j["mode"] = r.mode == VerifyMode::exact ? "exact" : "monte_carlo";
  j["kernel"] = kernel_name(r.kernel);
  j["measure"] = json::parse(r.measure);
  j["lhs"] = value_to_json(r.lhs);
  j["rhs"] = value_to_json(r.rhs);
  j["residual"] = value_to_json(r.residual);
  return j;
}

}  // namespace spheridir
