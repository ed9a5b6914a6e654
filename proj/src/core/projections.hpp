#pragma once

#include "core/linalg.hpp"

#include <optional>

namespace nspsd {

struct ConeMembershipReport {
  bool is_member = false;
  // Smallest eigenvalue of A + A^T.
  double min_eigenvalue_of_symmetric_part = 0.0;
  // Frobenius distance from A to the NSPSD cone; zero for members.
  double violation = 0.0;
};

// 1e-10 * (1 + ||A||_F).
double default_membership_tolerance(const Matrix& a);

// Nearest symmetric PSD matrix to a: V max(G, 0) V^T from the eigendecomposition
// of (A + A^T) / 2.
Matrix psd_project(const Matrix& a);

// Nearest matrix with A + A^T PSD: the skew part is kept, the symmetric part
// is clipped onto the PSD cone.
Matrix nspsd_project(const Matrix& a);

ConeMembershipReport is_nspsd(const Matrix& a,
                              std::optional<double> membership_tolerance = std::nullopt);

// Orthonormal basis of the eigenvectors of symmetric h whose eigenvalues lie
// in [-tol, tol]; tol defaults to the numeric-rank rule.
Matrix null_space_basis(const Matrix& h, std::optional<double> rank_tolerance = std::nullopt);

// null(h) is contained in null(z) when ||z N||_F <= tol * max(1, ||z||_F).
bool null_containment(const Matrix& h, const Matrix& z, double tol,
                      std::optional<double> rank_tolerance = std::nullopt);

// Block test for [[b, c^T], [c, d]] being PSD: b PSD, null(b) in null(c) and
// d - c b^+ c^T PSD, each checked with tolerance tol (relative to block norms).
bool block_psd_schur_check(const Matrix& b, const Matrix& c, const Matrix& d, double tol);

}  // namespace nspsd
