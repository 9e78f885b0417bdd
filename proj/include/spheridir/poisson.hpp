// Euclidean and invariant Poisson kernels on the unit ball of C^d, and the
// Monte Carlo estimators used wherever an integrand is not a polynomial.
//
// Sampling contract: the budget is split over a fixed number of streams, each
// seeded from (seed, stream index). Streams run concurrently but are merged in
// index order, so results depend only on (seed, streams, sample_count).
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace spheridir {

/// A point of the closed ball with cached norm data.
class BallPoint {
 public:
  BallPoint() = default;
  explicit BallPoint(std::vector<std::complex<double>> coords);
  /// Builds from coordinates together with a precomputed 1 - ||z||^2, for
  /// points so close to the sphere that recomputing it would cancel.
  BallPoint(std::vector<std::complex<double>> coords, double one_minus_norm2);

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<std::complex<double>>& coords() const { return coords_; }
  std::complex<double> operator[](int j) const { return coords_[static_cast<std::size_t>(j)]; }
  double norm() const { return norm_; }
  double one_minus_norm2() const { return one_minus_norm2_; }
  bool is_interior() const { return one_minus_norm2_ > 0.0; }
  /// ||z|| = 1 within 1e-12.
  bool is_boundary() const { return std::abs(norm_ - 1.0) <= 1e-12; }

 private:
  std::vector<std::complex<double>> coords_;
  double norm_ = 0.0;
  double one_minus_norm2_ = 1.0;
};

/// (1 - ||z||^2) / ||z - zeta||^{2d}.
double poisson_kernel(const BallPoint& z, const BallPoint& zeta);
/// (1 - ||z||^2)^d / |1 - <z, zeta>|^{2d}.
double invariant_poisson_kernel(const BallPoint& z, const BallPoint& zeta);

enum class PoissonKind { euclidean, invariant };
double kernel_value(PoissonKind kind, const BallPoint& z, const BallPoint& zeta);

enum class Stratification { none, radial };

struct McConfig {
  std::uint64_t sample_count = 1'000'000;
  std::uint64_t seed = 0;
  Stratification stratification = Stratification::none;
  int streams = 8;
};

struct McEstimate {
  std::complex<double> estimate;
  /// sqrt((Var Re + Var Im) / n) for complex integrands.
  double std_error = 0.0;
  std::uint64_t samples = 0;
  /// Samples discarded by the near-pole guard ||z - zeta|| < 1e-8.
  std::uint64_t rejected = 0;
};

/// Thrown when an integrand returns a non-finite value.
struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Integrand = std::function<std::complex<double>(const BallPoint&)>;
/// Several integrands sharing each sample; writes one value per output slot.
using MultiIntegrand = std::function<void(const BallPoint&, std::span<std::complex<double>>)>;

/// int_{sphere} f dsigma.
McEstimate mc_sphere(const Integrand& f, int d, const McConfig& cfg);
/// int_{ball} f dV; radial stratification uses equal-probability shells.
McEstimate mc_ball(const Integrand& f, int d, const McConfig& cfg);

/// Estimates int_{ball} f_i(z) K(z, zeta) dV(z) for each output i, with K the
/// chosen Poisson kernel. Directions are importance-sampled from a mixture of
/// uniform and Mobius-pushed uniform laws centred at zeta on dyadic scales
/// matching the distance to the sphere; this gives finite variance where plain
/// sampling of the kernel pole does not.
std::vector<McEstimate> mc_kernel_ball(const MultiIntegrand& f, std::size_t outputs,
                                       const BallPoint& zeta, PoissonKind kind,
                                       const McConfig& cfg);
McEstimate mc_kernel_ball(const Integrand& f, const BallPoint& zeta, PoissonKind kind,
                          const McConfig& cfg);

/// Estimates int_{sphere} w(zeta) int_{ball} f_i(z) K(z, zeta) dV(z) dsigma(zeta),
/// sampling zeta uniformly and z as in mc_kernel_ball.
std::vector<McEstimate> mc_kernel_ball_sphere(
    const MultiIntegrand& f, std::size_t outputs,
    const std::function<double(const BallPoint&)>& boundary_weight, int d, PoissonKind kind,
    const McConfig& cfg);

/// Uniform point on the unit sphere of C^d from a normalized Gaussian vector.
std::vector<std::complex<double>> sample_sphere(int d, std::mt19937_64& rng);

}  // namespace spheridir
