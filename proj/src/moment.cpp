#include "spheridir/moment.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "spheridir/dirichlet.hpp"
#include "spheridir/gramian.hpp"

namespace spheridir {

using nlohmann::json;

namespace {

ExactMatrix principal(const ExactMatrix& g, const std::vector<std::size_t>& idx) {
  ExactMatrix out(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = g(idx[a], idx[b]);
  return out;
}

// Images T^alpha f for every label of `labels`, built along unit steps.
std::vector<ExactMatrix> orbit(const TruncatedTuple& t, const ExactMatrix& frame,
                               const GramTable& labels) {
  std::vector<ExactMatrix> images;
  for (const auto& alpha : labels.labels()) {
    if (alpha.order() == 0) {
      images.push_back(frame);
      continue;
    }
    int j = 0;
    while (alpha[j] == 0) ++j;
    const auto prev = *alpha.sub(MultiIndex::unit(t.d(), j));
    images.push_back(t.ops()[static_cast<std::size_t>(j)] * images[labels.index(prev)]);
  }
  return images;
}

std::vector<std::complex<double>> polynomial_roots(const Eigen::VectorXcd& c) {
  int deg = static_cast<int>(c.size()) - 1;
  while (deg > 0 && std::abs(c(deg)) < 1e-14 * c.norm()) --deg;
  if (deg < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -c(i) / c(deg);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion);
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

std::vector<double> fit_weights(const GramTable& phi,
                                const std::vector<std::vector<std::complex<double>>>& atoms,
                                double surface) {
  const auto& labels = phi.labels();
  const auto rows = static_cast<Eigen::Index>(labels.size());
  const auto cols = static_cast<Eigen::Index>(atoms.size());
  Eigen::MatrixXcd A(rows, cols);
  Eigen::VectorXcd b(rows);
  const MultiIndex zero(phi.dim());
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& alpha = labels[static_cast<std::size_t>(r)];
    for (Eigen::Index i = 0; i < cols; ++i) {
      std::complex<double> v = 1.0;
      for (int j = 0; j < phi.dim(); ++j)
        v *= std::pow(atoms[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], alpha[j]);
      A(r, i) = v;
    }
    b(r) = phi.entry(alpha, zero).to_complex() - (alpha.order() == 0 ? surface : 0.0);
  }
  const Eigen::VectorXcd w = A.colPivHouseholderQr().solve(b);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < cols; ++i) out.push_back(w(i).real());
  return out;
}

}  // namespace

GramTable forward_moments(const Measure& mu, int N) {
  GramTable t(mu.dim(), N, mu.block(), "moment");
  const auto& labels = t.labels();
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a; b < labels.size(); ++b) {
      const auto m = moment(mu, labels[a], labels[b]);
      t.set(labels[a], labels[b], m);
      if (a != b) t.set(labels[b], labels[a], m.adjoint());
    }
  return t;
}

MomentConditions check_conditions(const GramTable& phi) {
  MomentConditions c;
  c.psd = phi.is_hermitian() && phi.psd().psd;
  c.min_eigenvalue = phi.flat_size() == 0 ? 0.0 : min_eigenvalue(phi.flat());
  if (phi.degree() < 1) {
    c.toeplitz = true;
    return c;
  }
  const auto shifted = shift_sum(phi, 1);
  const auto base = phi.truncated(phi.degree() - 1);
  const auto diff = shifted.flat() - base.flat();
  c.toeplitz = diff.is_zero();
  c.toeplitz_residual = diff.max_abs();
  return c;
}

GnsResult gns(const GramTable& phi) {
  if (phi.block() != 1) throw std::invalid_argument("gns is implemented for scalar tables");
  if (!phi.is_hermitian() || !phi.psd().psd)
    throw std::invalid_argument("gns needs a positive semidefinite table");
  const auto& G = phi.flat();
  std::vector<std::size_t> chosen;
  for (std::size_t p = 0; p < phi.size(); ++p) {
    auto trial = chosen;
    trial.push_back(p);
    if (exact_psd(principal(G, trial)).definite) chosen = std::move(trial);
  }
  std::vector<MultiIndex> basis;
  for (auto p : chosen) basis.push_back(phi.labels()[p]);

  const int d = phi.dim();
  GramTable quotient(basis, d, phi.degree(), 1, "gns");
  quotient.flat() = principal(G, chosen);
  const auto n = chosen.size();
  std::vector<ExactMatrix> ops(static_cast<std::size_t>(d), ExactMatrix(n, n));
  for (std::size_t c = 0; c < n; ++c) {
    if (basis[c].order() >= phi.degree()) continue;
    for (int j = 0; j < d; ++j) {
      const auto target = phi.index(basis[c] + MultiIndex::unit(d, j));
      ExactMatrix rhs(n, 1);
      for (std::size_t r = 0; r < n; ++r) rhs(r, 0) = G(chosen[r], target);
      const auto coords = solve(quotient.flat(), rhs);
      if (!coords) throw std::logic_error("quotient Gram matrix is singular");
      for (std::size_t r = 0; r < n; ++r) ops[static_cast<std::size_t>(j)](r, c) = (*coords)(r, 0);
    }
  }
  return GnsResult{TruncatedTuple(std::move(quotient), std::move(ops)), std::move(basis)};
}

GramTable miso_kernel(const TruncatedTuple& t, int m) {
  if (m < 1) throw std::invalid_argument("miso_kernel needs m >= 1");
  const auto g = gramian_of(t);
  if (m - 1 > g.table.degree()) throw std::invalid_argument("window too small for the kernel");
  auto phi = defect(g.table, m - 1);
  phi.set_kind("moment");
  return phi;
}

GramTable miso_kernel_direct(const TruncatedTuple& t, int m) {
  if (m < 1) throw std::invalid_argument("miso_kernel needs m >= 1");
  const auto g = gramian_of(t);
  const int bound = t.degree() - g.frame_level - (m - 1);
  if (bound < 0) throw std::invalid_argument("window too small for the kernel");
  const auto k = g.frame.cols();
  GramTable phi(t.d(), bound, k, "moment");
  const auto images = orbit(t, g.frame, phi);
  for (int j = 0; j < m; ++j) {
    Rational c(binomial(m - 1, j));
    if ((j + m - 1) % 2 == 1) c = -c;
    const auto q = qt_form(t, j);
    const auto s = q.form.rows();
    for (std::size_t a = 0; a < images.size(); ++a)
      for (std::size_t b = 0; b < images.size(); ++b) {
        const auto x = images[a].block(0, 0, s, k);
        const auto y = images[b].block(0, 0, s, k);
        // block(i, l) = <Q^j T^alpha f_l, T^beta f_i>
        const auto blk = y.adjoint() * (q.form * x);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t l = 0; l < k; ++l)
            phi.flat()(b * k + i, a * k + l) += blk(i, l) * ComplexRational(c);
      }
  }
  return phi;
}

ComplexRational verify_model(const TruncatedTuple& t, const Measure& mu, int k,
                             const MultiIndex& alpha, const MultiIndex& beta) {
  const auto& g = t.gram();
  if (g.block() != 1 || g.dim() != mu.dim() || t.d() != mu.dim())
    throw std::invalid_argument("verify_model needs M_z on a monomial basis of matching dimension");
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (std::max(alpha.order(), beta.order()) + k > t.degree())
    throw std::invalid_argument("window too small for the requested k and indices");
  const MultiIndex zero(mu.dim());
  GramTable labels(mu.dim(), std::max(alpha.order(), beta.order()));
  ExactMatrix one(g.flat_size(), 1);
  one(g.index(zero), 0) = 1;
  const auto images = orbit(t, one, labels);
  const auto& x = images[labels.index(alpha)];
  const auto& y = images[labels.index(beta)];
  const auto q = qt_form(t, k);
  const auto s = q.form.rows();
  const auto lhs = (y.block(0, 0, s, 1).adjoint() * (q.form * x.block(0, 0, s, 1)))(0, 0) -
                   (y.adjoint() * (g.flat() * x))(0, 0);

  ComplexRational rhs =
      -dirichlet_inner_exact(VectorPolynomial::monomial(alpha), VectorPolynomial::monomial(beta), mu);
  for (const auto& gamma : enumerate_exact(mu.dim(), k))
    rhs += dirichlet_inner_exact(VectorPolynomial::monomial(alpha + gamma),
                                 VectorPolynomial::monomial(beta + gamma), mu) *
           ComplexRational(Rational(multinomial_weight(gamma)));
  return lhs - rhs;
}

RecoveredMeasure recover_circle(const GramTable& phi) {
  if (phi.dim() != 1 || phi.block() != 1)
    throw std::invalid_argument("circle recovery needs a scalar table with d = 1");
  if (!check_conditions(phi).psd) throw std::invalid_argument("moment table is not PSD");
  const Eigen::MatrixXcd H = phi.flat().to_eigen();
  const auto n = H.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  const double tol = 1e-10 * scale;
  RecoveredMeasure out;
  const double lmin = es.eigenvalues()(0);
  out.surface = lmin > tol ? lmin : 0.0;
  const Eigen::MatrixXcd Hs = H - out.surface * Eigen::MatrixXcd::Identity(n, n);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (es.eigenvalues()(i) - out.surface > tol) ++rank;
  if (rank == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> kernel(Hs.topLeftCorner(rank + 1, rank + 1));
  // Hs(p, q) = int zeta^q conj(zeta)^p dnu, so a null vector c gives a
  // polynomial sum_q c_q z^q vanishing on the support of nu.
  for (const auto& z : polynomial_roots(kernel.eigenvectors().col(0)))
    out.atoms.push_back({z / std::abs(z)});
  out.weights = fit_weights(phi, out.atoms, out.surface);
  return out;
}

RecoveredMeasure recover_atomic(const GramTable& phi, int atoms) {
  if (atoms < 1 || atoms > 3) throw std::invalid_argument("atomic recovery supports 1 to 3 atoms");
  if (phi.degree() < atoms) throw std::invalid_argument("atomic recovery needs N >= number of atoms");
  const auto q = gns(phi);
  if (q.quotient_dim() != static_cast<std::size_t>(atoms))
    throw std::invalid_argument("table rank does not match the declared number of atoms");
  const int d = phi.dim();
  const auto s = static_cast<Eigen::Index>(atoms);
  std::vector<Eigen::MatrixXcd> ops;
  for (const auto& a : q.tuple.ops()) ops.push_back(a.to_eigen());
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  Eigen::MatrixXcd combo = Eigen::MatrixXcd::Zero(s, s);
  for (const auto& a : ops) combo += u(rng) * a;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(combo);
  RecoveredMeasure out;
  out.d = d;
  for (Eigen::Index i = 0; i < s; ++i) {
    const Eigen::VectorXcd v = es.eigenvectors().col(i);
    std::vector<std::complex<double>> z;
    for (const auto& a : ops) z.push_back(v.dot(a * v) / v.squaredNorm());
    out.atoms.push_back(std::move(z));
  }
  out.weights = fit_weights(phi, out.atoms, 0.0);
  return out;
}

json conditions_to_json(const MomentConditions& c) {
  return {{"psd", c.psd},
          {"min_eigenvalue", c.min_eigenvalue},
          {"toeplitz", c.toeplitz},
          {"toeplitz_residual", c.toeplitz_residual}};
}

json recovered_to_json(const RecoveredMeasure& r) {
  json atoms = json::array();
  for (const auto& a : r.atoms) {
    json p = json::array();
    for (const auto& z : a) p.push_back(json::array({z.real(), z.imag()}));
    atoms.push_back(p);
  }
  return {{"d", r.d}, {"atoms", atoms}, {"weights", r.weights}, {"surface", r.surface}};
}

}  // namespace spheridir
