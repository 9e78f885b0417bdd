// Dense matrices over the Gaussian rationals and the exact linear algebra the
// Gram/PSD/null-space computations need. Floating conversions are provided
// only for reporting eigenvalues.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "spheridir/rational.hpp"

namespace spheridir {

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);

  static ExactMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  ComplexRational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const ComplexRational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  ExactMatrix adjoint() const;
  /// Leading-corner or general sub-block.
  ExactMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  ExactMatrix col(std::size_t j) const { return block(0, j, rows_, 1); }

  ExactMatrix& operator+=(const ExactMatrix& o);
  ExactMatrix& operator-=(const ExactMatrix& o);
  ExactMatrix& operator*=(const ComplexRational& s);
  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
  friend ExactMatrix operator*(ExactMatrix a, const ComplexRational& s) { return a *= s; }
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

  bool is_zero() const;
  bool is_hermitian() const;
  /// max |a_ij| in floating point, for residual reporting.
  double max_abs() const;
  Eigen::MatrixXcd to_eigen() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ComplexRational> data_;
};

struct PsdCheck {
  bool psd = false;
  bool definite = false;
  std::size_t rank = 0;
};

/// Exact PSD test for a Hermitian matrix by symmetric-pivoted LDL*.
PsdCheck exact_psd(const ExactMatrix& hermitian);

/// Row-reduced echelon form; returns pivot columns.
std::vector<std::size_t> rref(ExactMatrix& m);
std::size_t exact_rank(ExactMatrix m);
/// Columns spanning {x : A x = 0}.
ExactMatrix null_space(ExactMatrix a);
/// Solves A X = B for square nonsingular A; empty if A is singular.
std::optional<ExactMatrix> solve(const ExactMatrix& a, const ExactMatrix& b);

/// Smallest eigenvalue of a Hermitian matrix in double precision.
double min_eigenvalue(const ExactMatrix& hermitian);
/// Float PSD test: eigenvalues >= -tol * max(1, ||A||_2).
bool float_psd(const Eigen::MatrixXcd& hermitian, double tol = 1e-10);

}  // namespace spheridir
