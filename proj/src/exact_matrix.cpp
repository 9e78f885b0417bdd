#include "spheridir/exact_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spheridir {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::adjoint() const {
  ExactMatrix a(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) a(j, i) = (*this)(i, j).conj();
  return a;
}

ExactMatrix ExactMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block out of range");
  ExactMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ExactMatrix& ExactMatrix::operator*=(const ComplexRational& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  ExactMatrix c(a.rows_, b.cols_);
  // Most operands here are sparse shift/weight matrices; skip zeros.
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const auto& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        c(i, j) += aik * bkj;
      }
    }
  }
  return c;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool ExactMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const auto& x) { return x.is_zero(); });
}

bool ExactMatrix::is_hermitian() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (!((*this)(i, j) == (*this)(j, i).conj())) return false;
  return true;
}

double ExactMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x.to_complex()));
  return m;
}

Eigen::MatrixXcd ExactMatrix::to_eigen() const {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).to_complex();
  return m;
}

PsdCheck exact_psd(const ExactMatrix& hermitian) {
  if (!hermitian.is_hermitian()) throw std::invalid_argument("PSD test needs a Hermitian matrix");
  ExactMatrix a = hermitian;
  const std::size_t n = a.rows();
  std::vector<bool> done(n, false);
  PsdCheck out;
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> pivot;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const auto& akk = a(k, k).re();
      if (sgn(akk) < 0) return out;
      if (sgn(akk) > 0 && !pivot) pivot = k;
    }
    if (!pivot) {
      // Remaining diagonal is zero: PSD forces the remaining block to vanish.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && !a(i, j).is_zero()) return out;
      break;
    }
    const std::size_t k = *pivot;
    done[k] = true;
    ++out.rank;
    const ComplexRational inv = ComplexRational(1) / a(k, k);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, k).is_zero()) continue;
      const ComplexRational f = a(i, k) * inv;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j] || a(k, j).is_zero()) continue;
        a(i, j) -= f * a(k, j);
      }
    }
  }
  out.psd = true;
  out.definite = out.rank == n;
  return out;
}

std::vector<std::size_t> rref(ExactMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::optional<std::size_t> p;
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (!m(r, c).is_zero()) {
        p = r;
        break;
      }
    }
    if (!p) continue;
    if (*p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(*p, j), m(row, j));
    const ComplexRational inv = ComplexRational(1) / m(row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c).is_zero()) continue;
      const ComplexRational f = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(r, j) -= f * m(row, j);
      }
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t exact_rank(ExactMatrix m) { return rref(m).size(); }

ExactMatrix null_space(ExactMatrix a) {
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  ExactMatrix basis(a.cols(), free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    basis(free[f], f) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], f) = -a(r, free[f]);
  }
  return basis;
}

std::optional<ExactMatrix> solve(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows())
    throw std::invalid_argument("solve: shape mismatch");
  const std::size_t n = a.rows();
  ExactMatrix aug(n, n + b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  return aug.block(0, n, n, b.cols());
}

double min_eigenvalue(const ExactMatrix& hermitian) {
  if (hermitian.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian.to_eigen(),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool float_psd(const Eigen::MatrixXcd& hermitian, double tol) {
  if (hermitian.rows() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  return es.eigenvalues().minCoeff() >= -tol * scale;
}

}  // namespace spheridir
