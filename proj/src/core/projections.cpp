#include "core/projections.hpp"

#include "core/error.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace nspsd {

namespace {

Matrix clip_symmetric(const Matrix& sym) {
  const SymEig eig = sym_eig(sym);
  const Vector clipped = eig.eigenvalues.cwiseMax(0.0);
  const Matrix& q = eig.eigenvectors;
  Matrix out = q * clipped.asDiagonal() * q.transpose();
  return 0.5 * (out + out.transpose());
}

double max_abs_eigenvalue(const SymEig& eig) {
  return eig.eigenvalues.size() > 0 ? eig.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

double default_membership_tolerance(const Matrix& a) { return 1e-10 * (1.0 + a.norm()); }

Matrix psd_project(const Matrix& a) {
  require_square(a, "psd_project input");
  if (a.rows() == 0) return a;
  return clip_symmetric(0.5 * (a + a.transpose()));
}

Matrix nspsd_project(const Matrix& a) {
  require_square(a, "nspsd_project input");
  if (a.rows() == 0) return a;
  return skew_part(a) + clip_symmetric(sym_part(a));
}

ConeMembershipReport is_nspsd(const Matrix& a, std::optional<double> membership_tolerance) {
  require_square(a, "is_nspsd input");
  ConeMembershipReport report;
  if (a.rows() == 0) {
    report.is_member = true;
    return report;
  }
  const double tol = membership_tolerance.value_or(default_membership_tolerance(a));
  const SymEig eig = sym_eig(a + a.transpose());
  report.min_eigenvalue_of_symmetric_part = eig.eigenvalues(0);
  report.is_member = report.min_eigenvalue_of_symmetric_part >= -tol;
  if (!report.is_member) {
    // Eigenvalues of the symmetric part are half those of A + A^T.
    report.violation = 0.5 * eig.eigenvalues.cwiseMin(0.0).norm();
  }
  return report;
}

Matrix null_space_basis(const Matrix& h, std::optional<double> rank_tolerance) {
  require_square(h, "null_space_basis input");
  const SymEig eig = sym_eig(h);
  const double tol =
      rank_tolerance.value_or(default_rank_tolerance(h.rows(), h.cols(), max_abs_eigenvalue(eig)));
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (std::abs(eig.eigenvalues(i)) <= tol) idx.push_back(i);
  }
  Matrix basis(h.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    basis.col(static_cast<Eigen::Index>(k)) = eig.eigenvectors.col(idx[k]);
  }
  return basis;
}

bool null_containment(const Matrix& h, const Matrix& z, double tol,
                      std::optional<double> rank_tolerance) {
  require_square(h, "null_containment operator");
  if (z.cols() != h.rows()) {
    fail(ErrorCode::dimension_mismatch, "null_containment: " + shape_string(z) +
                                            " does not conform with " + shape_string(h));
  }
  const Matrix basis = null_space_basis(h, rank_tolerance);
  if (basis.cols() == 0 || z.rows() == 0) return true;
  return (z * basis).norm() <= tol * std::max(1.0, z.norm());
}

bool block_psd_schur_check(const Matrix& b, const Matrix& c, const Matrix& d, double tol) {
  require_square(b, "block_psd_schur_check leading block");
  require_square(d, "block_psd_schur_check trailing block");
  if (c.rows() != d.rows() || c.cols() != b.cols()) {
    fail(ErrorCode::dimension_mismatch, "block_psd_schur_check: off-diagonal block " +
                                            shape_string(c) + " does not conform with " +
                                            shape_string(b) + " and " + shape_string(d));
  }
  const double scale = std::max({1.0, b.norm(), c.norm(), d.norm()});
  if (b.rows() > 0) {
    const SymEig eig_b = sym_eig(sym_part(b));
    if (eig_b.eigenvalues(0) < -tol * scale) return false;
    if (!null_containment(sym_part(b), c, tol)) return false;
  }
  if (d.rows() == 0) return true;
  const Matrix schur = sym_part(d - c * pinv_apply(sym_part(b), c.transpose()));
  const SymEig eig_s = sym_eig(schur);
  return eig_s.eigenvalues(0) >= -tol * scale;
}

}  // namespace nspsd
