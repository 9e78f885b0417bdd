#include "spheridir/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace spheridir {

namespace {

constexpr double kPoleGuard = 1e-8;
constexpr int kRadialShells = 16;

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

double norm2_of(const std::vector<std::complex<double>>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

// Welford accumulator for the real and imaginary parts separately.
struct Moments {
  std::uint64_t n = 0;
  double mean_re = 0.0, m2_re = 0.0;
  double mean_im = 0.0, m2_im = 0.0;

  void add(std::complex<double> x) {
    ++n;
    const double dr = x.real() - mean_re;
    mean_re += dr / static_cast<double>(n);
    m2_re += dr * (x.real() - mean_re);
    const double di = x.imag() - mean_im;
    mean_im += di / static_cast<double>(n);
    m2_im += di * (x.imag() - mean_im);
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double tot = na + nb;
    const double dr = o.mean_re - mean_re, di = o.mean_im - mean_im;
    mean_re += dr * nb / tot;
    mean_im += di * nb / tot;
    m2_re += o.m2_re + dr * dr * na * nb / tot;
    m2_im += o.m2_im + di * di * na * nb / tot;
    n += o.n;
  }

  double variance() const { return n > 1 ? (m2_re + m2_im) / static_cast<double>(n - 1) : 0.0; }
};

struct StreamResult {
  std::vector<Moments> moments;  // [shell * outputs + i]
  std::uint64_t rejected = 0;
};

// Draws one sample into `out`; returns false when the sample was rejected.
using SampleFn = std::function<bool(std::mt19937_64&, int shell, int shells,
                                    std::span<std::complex<double>> out)>;

std::vector<McEstimate> run_streams(std::size_t outputs, int shells, const McConfig& cfg,
                                    const SampleFn& sample) {
  if (cfg.sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
  if (cfg.streams < 1) throw std::invalid_argument("stream count must be >= 1");
  const auto streams = static_cast<std::size_t>(cfg.streams);
  std::vector<StreamResult> results(streams);
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run_one = [&](std::size_t s) {
    try {
      std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffu),
                        static_cast<std::uint32_t>(cfg.seed >> 32),
                        static_cast<std::uint32_t>(s), 0x5eedu};
      std::mt19937_64 rng(seq);
      std::uint64_t count = cfg.sample_count / streams + (s < cfg.sample_count % streams ? 1 : 0);
      auto& res = results[s];
      res.moments.assign(static_cast<std::size_t>(shells) * outputs, Moments{});
      std::vector<std::complex<double>> buf(outputs);
      for (std::uint64_t i = 0; i < count; ++i) {
        const int shell = static_cast<int>(i % static_cast<std::uint64_t>(shells));
        std::fill(buf.begin(), buf.end(), std::complex<double>{});
        if (!sample(rng, shell, shells, buf)) {
          ++res.rejected;
          std::fill(buf.begin(), buf.end(), std::complex<double>{});
        }
        for (std::size_t k = 0; k < outputs; ++k) {
          if (!std::isfinite(buf[k].real()) || !std::isfinite(buf[k].imag()))
            throw QuadratureFailure("non-finite integrand value in Monte Carlo sample");
          res.moments[static_cast<std::size_t>(shell) * outputs + k].add(buf[k]);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(streams, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t s = 0; s < streams; ++s) run_one(s);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t s = w; s < streams; s += workers) run_one(s);
      });
    }
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<McEstimate> out(outputs);
  std::uint64_t rejected = 0;
  for (const auto& r : results) rejected += r.rejected;
  for (std::size_t k = 0; k < outputs; ++k) {
    std::complex<double> est = 0.0;
    double var = 0.0;
    std::uint64_t n = 0;
    for (int sh = 0; sh < shells; ++sh) {
      Moments m;
      for (const auto& r : results) m.merge(r.moments[static_cast<std::size_t>(sh) * outputs + k]);
      if (m.n == 0) continue;
      est += std::complex<double>(m.mean_re, m.mean_im);
      var += m.variance() / static_cast<double>(m.n);
      n += m.n;
    }
    const double s = static_cast<double>(shells);
    out[k] = McEstimate{est / s, std::sqrt(var) / s, n, rejected};
  }
  return out;
}

double uniform01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Uniform in (0, 1], so logs stay finite.
double uniform_open0(std::mt19937_64& rng) { return 1.0 - uniform01(rng); }

void check_pair(const BallPoint& z, const BallPoint& zeta) {
  if (z.dim() != zeta.dim()) throw std::invalid_argument("kernel arguments differ in dimension");
  if (!z.is_interior()) throw std::domain_error("Poisson kernel needs an interior point z");
  if (!zeta.is_boundary()) throw std::domain_error("Poisson kernel needs a boundary point zeta");
}

double kernel_from_parts(PoissonKind kind, int d, double one_minus_norm2, double dist2,
                         std::complex<double> one_minus_inner) {
  if (kind == PoissonKind::euclidean) return one_minus_norm2 / ipow(dist2, d);
  return ipow(one_minus_norm2, d) / ipow(std::norm(one_minus_inner), d);
}

// Importance sampler for a point z of the ball near a boundary anchor zeta.
// The radius follows the volume law; t = 1 - r.
class AnchoredSampler {
 public:
  AnchoredSampler(const BallPoint& zeta) : zeta_(zeta.coords()), d_(zeta.dim()) {}

  struct Draw {
    BallPoint z;
    double inv_density;    // dV / proposal
    double dist2;          // ||z - zeta||^2
    std::complex<double> one_minus_inner;  // 1 - <z, zeta>
  };

  Draw draw(std::mt19937_64& rng, int shell, int shells) const {
    const int n = 2 * d_;
    const double u = (static_cast<double>(shell) + uniform_open0(rng)) / shells;
    double t = -std::expm1(std::log(u) / n);
    if (t <= 0.0) t = std::numeric_limits<double>::min();
    const int levels = std::min(60, static_cast<int>(std::floor(std::log2(1.0 / t))));

    auto eta = sample_sphere(d_, rng);
    if (uniform01(rng) >= 0.5) {
      const int j = std::uniform_int_distribution<int>(0, levels)(rng);
      const double s = std::min(1.0, std::ldexp(t, j));
      // T_{-a}(u) with a = (1 - s) zeta.
      const double one_minus_a2 = s * (2.0 - s);
      std::vector<std::complex<double>> ua(static_cast<std::size_t>(d_));
      double ua2 = 0.0;
      for (int k = 0; k < d_; ++k) {
        ua[k] = eta[k] + (1.0 - s) * zeta_[k];
        ua2 += std::norm(ua[k]);
      }
      for (int k = 0; k < d_; ++k)
        eta[k] = (one_minus_a2 * ua[k] + ua2 * (1.0 - s) * zeta_[k]) / ua2;
    }

    std::vector<std::complex<double>> e(static_cast<std::size_t>(d_));
    double e2 = 0.0;
    std::complex<double> inner_e = 0.0;  // <e, zeta>
    for (int k = 0; k < d_; ++k) {
      e[k] = eta[k] - zeta_[k];
      e2 += std::norm(e[k]);
      inner_e += e[k] * std::conj(zeta_[k]);
    }

    double mix = 0.0;
    for (int j = 0; j <= levels; ++j) {
      const double s = std::min(1.0, std::ldexp(t, j));
      mix += ipow(s * (2.0 - s) / ((1.0 - s) * e2 + s * s), n - 1);
    }
    const double density = 0.5 + 0.5 * mix / (levels + 1);

    std::vector<std::complex<double>> z(static_cast<std::size_t>(d_));
    double dist2 = 0.0;
    for (int k = 0; k < d_; ++k) {
      z[k] = (1.0 - t) * eta[k];
      dist2 += std::norm(e[k] - t * eta[k]);
    }
    // 1 - <eta, zeta> = |e|^2 / 2 - i Im<e, zeta> on the sphere.
    const std::complex<double> one_minus_eta_zeta(0.5 * e2, -inner_e.imag());
    const std::complex<double> eta_zeta = 1.0 - one_minus_eta_zeta;
    const std::complex<double> one_minus_inner = one_minus_eta_zeta + t * eta_zeta;
    return Draw{BallPoint(std::move(z), t * (2.0 - t)), 1.0 / density, dist2, one_minus_inner};
  }

 private:
  std::vector<std::complex<double>> zeta_;
  int d_;
};

}  // namespace

BallPoint::BallPoint(std::vector<std::complex<double>> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("point dimension must be >= 1");
  const double n2 = norm2_of(coords_);
  norm_ = std::sqrt(n2);
  one_minus_norm2_ = 1.0 - n2;
}

BallPoint::BallPoint(std::vector<std::complex<double>> coords, double one_minus_norm2)
    : coords_(std::move(coords)), one_minus_norm2_(one_minus_norm2) {
  if (coords_.empty()) throw std::invalid_argument("point dimension must be >= 1");
  norm_ = std::sqrt(norm2_of(coords_));
}

std::vector<std::complex<double>> sample_sphere(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::complex<double>> v(static_cast<std::size_t>(d));
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& x : v) {
      x = {g(rng), g(rng)};
      n2 += std::norm(x);
    }
  } while (n2 == 0.0);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& x : v) x *= inv;
  return v;
}

double poisson_kernel(const BallPoint& z, const BallPoint& zeta) {
  check_pair(z, zeta);
  double dist2 = 0.0;
  for (int k = 0; k < z.dim(); ++k) dist2 += std::norm(z[k] - zeta[k]);
  if (dist2 == 0.0) throw std::domain_error("Poisson kernel is singular at z = zeta");
  return kernel_from_parts(PoissonKind::euclidean, z.dim(), z.one_minus_norm2(), dist2, 0.0);
}

double invariant_poisson_kernel(const BallPoint& z, const BallPoint& zeta) {
  check_pair(z, zeta);
  std::complex<double> inner = 0.0;
  for (int k = 0; k < z.dim(); ++k) inner += z[k] * std::conj(zeta[k]);
  const std::complex<double> omi = 1.0 - inner;
  if (std::norm(omi) == 0.0) throw std::domain_error("invariant Poisson kernel is singular");
  return kernel_from_parts(PoissonKind::invariant, z.dim(), z.one_minus_norm2(), 0.0, omi);
}

double kernel_value(PoissonKind kind, const BallPoint& z, const BallPoint& zeta) {
  return kind == PoissonKind::euclidean ? poisson_kernel(z, zeta)
                                        : invariant_poisson_kernel(z, zeta);
}

McEstimate mc_sphere(const Integrand& f, int d, const McConfig& cfg) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  return run_streams(1, 1, cfg,
                     [&](std::mt19937_64& rng, int, int, std::span<std::complex<double>> out) {
                       out[0] = f(BallPoint(sample_sphere(d, rng)));
                       return true;
                     })[0];
}

McEstimate mc_ball(const Integrand& f, int d, const McConfig& cfg) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  const int shells = cfg.stratification == Stratification::radial ? kRadialShells : 1;
  return run_streams(
      1, shells, cfg,
      [&](std::mt19937_64& rng, int shell, int nshell, std::span<std::complex<double>> out) {
        const double u = (static_cast<double>(shell) + uniform_open0(rng)) / nshell;
        const double r = std::pow(u, 1.0 / (2.0 * d));
        auto p = sample_sphere(d, rng);
        for (auto& x : p) x *= r;
        out[0] = f(BallPoint(std::move(p)));
        return true;
      })[0];
}

std::vector<McEstimate> mc_kernel_ball(const MultiIntegrand& f, std::size_t outputs,
                                       const BallPoint& zeta, PoissonKind kind,
                                       const McConfig& cfg) {
  if (!zeta.is_boundary()) throw std::domain_error("anchor must lie on the unit sphere");
  const int shells = cfg.stratification == Stratification::radial ? kRadialShells : 1;
  const int d = zeta.dim();
  AnchoredSampler sampler(zeta);
  return run_streams(
      outputs, shells, cfg,
      [&](std::mt19937_64& rng, int shell, int nshell, std::span<std::complex<double>> out) {
        auto dr = sampler.draw(rng, shell, nshell);
        if (dr.dist2 < kPoleGuard * kPoleGuard) return false;
        const double w =
            kernel_from_parts(kind, d, dr.z.one_minus_norm2(), dr.dist2, dr.one_minus_inner) *
            dr.inv_density;
        f(dr.z, out);
        for (auto& x : out) x *= w;
        return true;
      });
}

McEstimate mc_kernel_ball(const Integrand& f, const BallPoint& zeta, PoissonKind kind,
                          const McConfig& cfg) {
  return mc_kernel_ball(
      [&](const BallPoint& z, std::span<std::complex<double>> out) { out[0] = f(z); }, 1, zeta,
      kind, cfg)[0];
}

std::vector<McEstimate> mc_kernel_ball_sphere(
    const MultiIntegrand& f, std::size_t outputs,
    const std::function<double(const BallPoint&)>& boundary_weight, int d, PoissonKind kind,
    const McConfig& cfg) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  const int shells = cfg.stratification == Stratification::radial ? kRadialShells : 1;
  return run_streams(
      outputs, shells, cfg,
      [&](std::mt19937_64& rng, int shell, int nshell, std::span<std::complex<double>> out) {
        const BallPoint zeta(sample_sphere(d, rng));
        const double bw = boundary_weight(zeta);
        auto dr = AnchoredSampler(zeta).draw(rng, shell, nshell);
        if (dr.dist2 < kPoleGuard * kPoleGuard) return false;
        const double w =
            bw * kernel_from_parts(kind, d, dr.z.one_minus_norm2(), dr.dist2, dr.one_minus_inner) *
            dr.inv_density;
        f(dr.z, out);
        for (auto& x : out) x *= w;
        return true;
      });
}

}  // namespace spheridir
