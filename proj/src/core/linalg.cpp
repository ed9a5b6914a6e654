#include "core/linalg.hpp"

#include "core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace nspsd {

ComplexDense::ComplexDense(Matrix real, Matrix imag) : re(std::move(real)), im(std::move(imag)) {
  if (re.rows() != im.rows() || re.cols() != im.cols()) {
    fail(ErrorCode::dimension_mismatch, "complex matrix parts differ in shape: real " +
                                            shape_string(re) + ", imaginary " + shape_string(im));
  }
}

ComplexDense ComplexDense::from_real(const Matrix& real) {
  return ComplexDense(real, Matrix::Zero(real.rows(), real.cols()));
}

double ComplexDense::frobenius_norm() const {
  return std::sqrt(re.squaredNorm() + im.squaredNorm());
}

Eigen::MatrixXcd ComplexDense::to_eigen() const {
  Eigen::MatrixXcd z(re.rows(), re.cols());
  z.real() = re;
  z.imag() = im;
  return z;
}

ComplexDense ComplexDense::from_eigen(const Eigen::MatrixXcd& z) {
  return ComplexDense(z.real(), z.imag());
}

std::string shape_string(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    fail(ErrorCode::invalid_argument,
         std::string(what) + " (" + shape_string(m) + ") contains non-finite entries");
  }
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    fail(ErrorCode::dimension_mismatch,
         std::string(what) + " must be square, got " + shape_string(m));
  }
}

double default_rank_tolerance(Eigen::Index rows, Eigen::Index cols, double sigma_max) {
  return static_cast<double>(std::max<Eigen::Index>({rows, cols, 1})) *
         std::numeric_limits<double>::epsilon() * sigma_max;
}

SvdFactorization svd(const Matrix& x, std::optional<double> rank_tolerance) {
  require_finite(x, "svd input");
  SvdFactorization out;
  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  if (n == 0 || m == 0) {
    out.u = Matrix::Identity(n, n);
    out.v = Matrix::Identity(m, m);
    out.singular_values.resize(0);
    return out;
  }
  Eigen::BDCSVD<Matrix> dec(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (dec.info() != Eigen::Success) {
    fail(ErrorCode::factorization_failure, "SVD did not converge for " + shape_string(x) + " matrix");
  }
  out.u = dec.matrixU();
  out.v = dec.matrixV();
  out.singular_values = dec.singularValues();
  const double sigma_max = out.singular_values.size() > 0 ? out.singular_values(0) : 0.0;
  out.rank_tolerance = rank_tolerance.value_or(default_rank_tolerance(n, m, sigma_max));
  out.numeric_rank = (out.singular_values.array() > out.rank_tolerance).count();
  return out;
}

SymEig sym_eig(const Matrix& a) {
  require_square(a, "sym_eig input");
  require_finite(a, "sym_eig input");
  const double asym = (a - a.transpose()).norm();
  if (asym > 1e-10 * std::max(1.0, a.norm())) {
    std::ostringstream os;
    os << "sym_eig input is not symmetric (||A - A^T||_F = " << asym << ")";
    fail(ErrorCode::invalid_argument, os.str());
  }
  SymEig out;
  if (a.rows() == 0) {
    out.eigenvalues.resize(0);
    out.eigenvectors.resize(0, 0);
    return out;
  }
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) {
    fail(ErrorCode::factorization_failure,
         "symmetric eigendecomposition did not converge for " + shape_string(a) + " matrix");
  }
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = es.eigenvectors();
  return out;
}

Matrix sym_part(const Matrix& a) {
  require_square(a, "sym_part input");
  return 0.5 * (a + a.transpose());
}

Matrix skew_part(const Matrix& a) {
  require_square(a, "skew_part input");
  return 0.5 * (a - a.transpose());
}

Matrix pinv_apply(const Matrix& h, const Matrix& w, std::optional<double> rank_tolerance) {
  require_square(h, "pinv_apply operator");
  if (w.rows() != h.rows()) {
    fail(ErrorCode::dimension_mismatch, "pinv_apply: operator " + shape_string(h) +
                                            " does not conform with right-hand side " +
                                            shape_string(w));
  }
  const SymEig eig = sym_eig(h);
  const double lambda_max = eig.eigenvalues.size() > 0 ? eig.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  const double tol = rank_tolerance.value_or(default_rank_tolerance(h.rows(), h.cols(), lambda_max));
  Vector inv(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    inv(i) = eig.eigenvalues(i) > tol ? 1.0 / eig.eigenvalues(i) : 0.0;
  }
  const Matrix& q = eig.eigenvectors;
  return q * inv.asDiagonal() * (q.transpose() * w);
}

}  // namespace nspsd
