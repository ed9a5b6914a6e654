#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>

namespace nspsd {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Complex matrix kept as a pair of real parts so every kernel stays real.
struct ComplexDense {
  Matrix re;
  Matrix im;

  ComplexDense() = default;
  ComplexDense(Matrix real, Matrix imag);

  static ComplexDense from_real(const Matrix& real);

  Eigen::Index rows() const { return re.rows(); }
  Eigen::Index cols() const { return re.cols(); }
  double frobenius_norm() const;
  Eigen::MatrixXcd to_eigen() const;
  static ComplexDense from_eigen(const Eigen::MatrixXcd& z);
};

// Full SVD x = u * diag(singular_values) * v^T with u n x n and v m x m.
struct SvdFactorization {
  Matrix u;
  Vector singular_values;  // nonincreasing, length min(n, m)
  Matrix v;
  Eigen::Index numeric_rank = 0;
  double rank_tolerance = 0.0;
};

// a = eigenvectors * diag(eigenvalues) * eigenvectors^T, eigenvalues ascending.
struct SymEig {
  Vector eigenvalues;
  Matrix eigenvectors;
};

std::string shape_string(const Matrix& m);

void require_finite(const Matrix& m, const char* what);
void require_square(const Matrix& m, const char* what);

// max(rows, cols) * machine epsilon * largest singular value.
double default_rank_tolerance(Eigen::Index rows, Eigen::Index cols, double sigma_max);

SvdFactorization svd(const Matrix& x, std::optional<double> rank_tolerance = std::nullopt);

SymEig sym_eig(const Matrix& a);

Matrix sym_part(const Matrix& a);
Matrix skew_part(const Matrix& a);

// h^+ w for symmetric PSD h; eigenvalues at or below the tolerance count as zero.
Matrix pinv_apply(const Matrix& h, const Matrix& w,
                  std::optional<double> rank_tolerance = std::nullopt);

}  // namespace nspsd
