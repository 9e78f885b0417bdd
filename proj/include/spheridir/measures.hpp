// Positive measures on the unit sphere: scaled surface measure, polynomial
// weights times sigma, and finite atomic measures with scalar or positive
// matrix weights. All data is exact; floating point appears only in Poisson
// integrals evaluated at interior points.
#pragma once

#include <complex>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "spheridir/exact_matrix.hpp"
#include "spheridir/hermitian_polynomial.hpp"
#include "spheridir/poisson.hpp"
#include "spheridir/rational.hpp"

namespace spheridir {

using ExactPoint = std::vector<ComplexRational>;

struct SurfaceMeasure {
  Rational scale{1};  // scale * sigma
};

struct WeightedSurfaceMeasure {
  HermitianPolynomial weight;  // real-valued, non-negative on the sphere
};

struct AtomicMeasure {
  std::vector<ExactPoint> points;
  std::vector<ExactMatrix> weights;  // r x r Hermitian PSD; r = 1 for scalar atoms
};

class Measure {
 public:
  using Data = std::variant<SurfaceMeasure, WeightedSurfaceMeasure, AtomicMeasure>;

  static Measure surface(int d, const Rational& scale = 1);
  /// weight * sigma; the weight must be real-valued.
  static Measure weighted(HermitianPolynomial weight);
  static Measure atomic(int d, std::vector<ExactPoint> points, std::vector<Rational> weights);
  static Measure atomic_matrix(int d, std::vector<ExactPoint> points,
                               std::vector<ExactMatrix> weights);

  int dim() const { return dim_; }
  /// r for operator-valued measures, 1 otherwise.
  std::size_t block() const { return block_; }
  const Data& data() const { return data_; }
  bool is_atomic() const { return std::holds_alternative<AtomicMeasure>(data_); }
  /// Surface or polynomial weight times sigma.
  bool has_polynomial_density() const { return !is_atomic(); }
  /// The density as a polynomial (constant for scaled sigma). Throws for atomic measures.
  HermitianPolynomial density() const;

  /// The density is harmonic, so P[mu] equals the density inside the ball.
  bool is_harmonic() const;
  /// Invariant under independent rotations of each coordinate.
  bool is_torus_invariant() const;
  /// Compact one-line JSON descriptor.
  std::string describe() const;

  /// Descriptor recorded by the named constructors (lambda_c, b_lambda), if any.
  const nlohmann::json& origin() const { return origin_; }
  Measure& set_origin(nlohmann::json origin) {
    origin_ = std::move(origin);
    return *this;
  }

 private:
  Measure(int dim, std::size_t block, Data data)
      : dim_(dim), block_(block), data_(std::move(data)) {}
  int dim_;
  std::size_t block_;
  Data data_;
  nlohmann::json origin_;
};

/// lambda + sum c_j |z_j|^2 times sigma; needs lambda > max |c_j| and sum c_j = 0.
Measure make_lambda_c(const Rational& lambda, const std::vector<Rational>& c);
/// lambda + sum (b_j z_j + conj(b_j z_j)) times sigma; needs lambda^2 > 2 sum |b_j|^2.
Measure make_b_lambda(const Rational& lambda, const std::vector<ComplexRational>& b);

/// Value of P[mu](z) as an r x r matrix.
struct PoissonValue {
  Eigen::MatrixXcd value;
  double std_error = 0.0;
  bool exact_path = true;
};
PoissonValue poisson_integral(const Measure& mu, const BallPoint& z, const McConfig& cfg = {});

/// mu(sphere), exactly.
ExactMatrix total_mass(const Measure& mu);

/// int zeta^alpha conj(zeta)^beta dmu as an r x r block.
ExactMatrix moment(const Measure& mu, const MultiIndex& alpha, const MultiIndex& beta);
/// int h dmu for a scalar measure.
ComplexRational boundary_integral(const Measure& mu, const HermitianPolynomial& h);

/// Exact point of the unit sphere near a uniformly random one, by inverse
/// stereographic projection of a dyadic rational point.
ExactPoint random_sphere_point(int d, std::mt19937_64& rng);
bool on_unit_sphere(const ExactPoint& p);
BallPoint to_ball_point(const ExactPoint& p);

nlohmann::json measure_to_json(const Measure& mu);
/// Parses a measure descriptor; throws std::invalid_argument on malformed input.
Measure measure_from_json(const nlohmann::json& j);

/// Exact scalars cross the wire as "p/q" strings; integers are accepted too.
Rational rational_from_json(const nlohmann::json& j);
/// Complex rationals as ["re", "im"] pairs or a single real.
ComplexRational complex_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(const ComplexRational& z);

}  // namespace spheridir
