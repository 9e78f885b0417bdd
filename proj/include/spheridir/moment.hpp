// The spherical moment problem on truncated tables: forward moments of a
// measure, the PSD and spherical-Toeplitz conditions, the GNS construction,
// the moment kernel of an m-isometry, and small-support recovery.
//
// Kernel tables are GramTables with kind "moment" and
// at(alpha, beta) = phi(alpha, beta) = int zeta^alpha conj(zeta)^beta dF.
#pragma once

#include <complex>
#include <vector>

#include <json.hpp>

#include "spheridir/gram_table.hpp"
#include "spheridir/measures.hpp"
#include "spheridir/tuples.hpp"

namespace spheridir {

GramTable forward_moments(const Measure& mu, int N);

struct MomentConditions {
  bool psd = false;
  double min_eigenvalue = 0.0;
  bool toeplitz = false;
  /// max |sum_j phi(alpha+e_j, beta+e_j) - phi(alpha, beta)| over |alpha|, |beta| <= N - 1.
  double toeplitz_residual = 0.0;
  bool passes() const { return psd && toeplitz; }
};
MomentConditions check_conditions(const GramTable& phi);

struct GnsResult {
  /// Multiplication tuple on the quotient, with the quotient Gram table.
  TruncatedTuple tuple;
  /// Monomials z^alpha whose classes form the quotient basis.
  std::vector<MultiIndex> basis;
  std::size_t quotient_dim() const { return basis.size(); }
};
/// Quotient of the polynomials of degree <= N by the null vectors of phi.
/// Scalar tables only; throws std::invalid_argument unless phi is PSD.
GnsResult gns(const GramTable& phi);

/// phi(alpha, beta) = Delta_{m-1} of the Gramian of t, on the frame.
GramTable miso_kernel(const TruncatedTuple& t, int m);
/// Same kernel assembled from the forms
/// sum_{j<m} (-1)^{j+m-1} C(m-1, j) <Q^j_T(I) T^alpha f, T^beta f>.
GramTable miso_kernel_direct(const TruncatedTuple& t, int m);

/// <Q^k T^alpha 1, T^beta 1> - <T^alpha 1, T^beta 1> minus
/// sum_{|gamma|=k} |gamma|!/gamma! <z^{alpha+gamma}, z^{beta+gamma}>_{D(mu)} - <z^alpha, z^beta>_{D(mu)},
/// for a tuple on the monomial basis of D(mu). Exact for harmonic densities.
ComplexRational verify_model(const TruncatedTuple& t, const Measure& mu, int k,
                             const MultiIndex& alpha, const MultiIndex& beta);

/// A measure recovered from moments, in floating point.
struct RecoveredMeasure {
  int d = 1;
  std::vector<std::vector<std::complex<double>>> atoms;
  std::vector<double> weights;
  /// Multiple of sigma (d = 1 recovery only).
  double surface = 0.0;
};
/// d = 1 scalar table: lambda_min sigma plus at most N atoms reproducing the
/// moments up to order N (exactly atomic when the Toeplitz matrix is singular).
RecoveredMeasure recover_circle(const GramTable& phi);
/// Table of a scalar atomic measure with `atoms` <= 3 points; needs N >= atoms.
RecoveredMeasure recover_atomic(const GramTable& phi, int atoms);

nlohmann::json conditions_to_json(const MomentConditions& c);
nlohmann::json recovered_to_json(const RecoveredMeasure& r);

}  // namespace spheridir
