// Dirichlet-type inner products on C^r-valued polynomials, the auxiliary
// circle pairing, and verifiers for Richter's identity, its radius-R form and
// its failure for the invariant Poisson kernel.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spheridir/hermitian_polynomial.hpp"
#include "spheridir/measures.hpp"
#include "spheridir/poisson.hpp"

namespace spheridir {

/// Holomorphic polynomial with values in C^r: alpha -> coefficient vector.
class VectorPolynomial {
 public:
  using Terms = std::map<MultiIndex, std::vector<ComplexRational>>;

  explicit VectorPolynomial(int dim, std::size_t block = 1);
  /// c z^alpha e_slot.
  static VectorPolynomial monomial(const MultiIndex& alpha, std::size_t block = 1,
                                   std::size_t slot = 0, const ComplexRational& c = 1);
  /// Scalar polynomial from a holomorphic HermitianPolynomial.
  static VectorPolynomial from_scalar(const HermitianPolynomial& h);

  int dim() const { return dim_; }
  std::size_t block() const { return block_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const MultiIndex& alpha, std::size_t slot, const ComplexRational& c);
  /// Component slot as a holomorphic HermitianPolynomial.
  HermitianPolynomial component(std::size_t slot) const;
  /// z^gamma * f.
  VectorPolynomial shifted(const MultiIndex& gamma) const;
  /// f(0).
  std::vector<ComplexRational> at_origin() const;

 private:
  int dim_;
  std::size_t block_;
  Terms terms_;  // no all-zero coefficient vectors
};

/// A scalar produced either exactly or by Monte Carlo.
struct Value {
  std::complex<double> value;
  double std_error = 0.0;
  std::optional<ComplexRational> exact;
  std::uint64_t samples = 0;
  std::uint64_t rejected = 0;

  static Value of(const ComplexRational& q);
  bool is_exact() const { return exact.has_value(); }
};

/// <f, g> in D(F): Hardy pairing plus (1/d) int sum_j <P[F] d_j f, d_j g> dV.
/// Exact for harmonic polynomial densities; Monte Carlo otherwise.
Value dirichlet_inner(const VectorPolynomial& f, const VectorPolynomial& g, const Measure& F,
                      const McConfig& cfg = {});
/// Exact form; throws std::invalid_argument unless F has a harmonic density.
ComplexRational dirichlet_inner_exact(const VectorPolynomial& f, const VectorPolynomial& g,
                                      const Measure& F);

/// f(0) conj(g(0)) + (1/d) int <grad f, grad g> P[mu] dV, scalar case.
Value circ_inner(const VectorPolynomial& f, const VectorPolynomial& g, const Measure& mu,
                 const McConfig& cfg = {});
ComplexRational circ_inner_exact(const VectorPolynomial& f, const VectorPolynomial& g,
                                 const Measure& mu);

enum class VerifyMode { exact, monte_carlo };

struct RichterReport {
  Value lhs;
  Value rhs;
  Value residual;
  VerifyMode mode = VerifyMode::exact;
  PoissonKind kernel = PoissonKind::euclidean;
  int k = 0;
  int d = 0;
  std::string measure;
  std::string label;

  /// Residual exactly zero (exact mode) or within `sigmas` standard errors.
  bool consistent_with_zero(double sigmas = 3.0) const;
  /// |residual| > sigmas * std_error on the Monte Carlo path.
  bool significant(double sigmas = 10.0) const;
};

struct RichterCase {
  VectorPolynomial p;
  VectorPolynomial q;
  int k = 0;
  std::string label;
};

/// Both sides of
///   sum_{|gamma|=k} |gamma|!/gamma! int <grad z^gamma p, grad z^gamma q> P[mu] dV
///     = int <grad p, grad q> P[mu] dV + k d int <p, q> dmu.
RichterReport verify_richter(const VectorPolynomial& p, const VectorPolynomial& q,
                             const Measure& mu, int k, const McConfig& cfg = {});
/// Many cases at once. On the Monte Carlo path all cases share the samples
/// drawn around each atom, which keeps large grids affordable.
std::vector<RichterReport> verify_richter_batch(const std::vector<RichterCase>& cases,
                                                const Measure& mu, const McConfig& cfg = {},
                                                PoissonKind kernel = PoissonKind::euclidean);

/// Same computation with the invariant Poisson kernel in the volume integrals.
/// Rejects d = 1, where both kernels agree.
RichterReport falsify_invariant_kernel(const VectorPolynomial& p, const VectorPolynomial& q,
                                       const Measure& mu, int k, const McConfig& cfg = {});
std::vector<RichterReport> falsify_invariant_kernel_batch(const std::vector<RichterCase>& cases,
                                                          const Measure& mu,
                                                          const McConfig& cfg = {});

/// sum_j int_{RB} <grad z_j f, grad z_j g> P[mu] dV - R^2 int_{RB} <grad f, grad g> P[mu] dV
/// against d R^{2d} int f(R.) conj(g(R.)) P[mu](R.) dsigma, exactly.
RichterReport verify_radius_identity(const VectorPolynomial& f, const VectorPolynomial& g,
                                     const Measure& mu, const Rational& radius);

/// int f(R.) conj(g(R.)) P[mu](R.) dsigma minus its R -> 1 limit
/// sum_j <z_j f, z_j g>_D - <f, g>_D, exactly.
ComplexRational radius_limit_gap(const VectorPolynomial& f, const VectorPolynomial& g,
                                 const Measure& mu, const Rational& radius);

/// Both sides of sum_k ||z^{alpha+e_k}||_o^2 <= max{2(1+d), mu(sphere)/d} ||z^alpha||_o^2.
struct MonoEstimate {
  Rational lhs;
  Rational bound;
  bool holds() const { return lhs <= bound; }
};
MonoEstimate mono_estimate(const Measure& mu, const MultiIndex& alpha);

nlohmann::json value_to_json(const Value& v);
nlohmann::json report_to_json(const RichterReport& r);

}  // namespace spheridir
