#pragma once

#include "core/fgm.hpp"
#include "core/linalg.hpp"
#include "core/projections.hpp"
#include "core/reduction.hpp"

#include <optional>

namespace nspsd {

// The four n x n blocks of a 2n x 2n real matrix [[a1, a2], [a3, a4]].
struct StructuredBlocks {
  Matrix a1, a2, a3, a4;

  static StructuredBlocks split(const Matrix& m);
  Matrix assemble() const;
  Eigen::Index dim() const { return a1.rows(); }
  void validate() const;
};

// R(z) = [[re, im], [-im, re]].
Matrix embed(const ComplexDense& z);

// A + A^* PSD, decided on the real embedding.
ConeMembershipReport nhpsd_check(const ComplexDense& a,
                                 std::optional<double> membership_tolerance = std::nullopt);

// Nearest PSD Hermitian matrix to the Hermitian part of a.
ComplexDense complex_psd_project(const ComplexDense& a);

// Nearest matrix of the form [[P1, P2], [-P2, P1]] with P1 + i P2 in the NHPSD cone.
StructuredBlocks project_structured_nspsd(const StructuredBlocks& blocks);
Matrix project_structured_nspsd(const Matrix& m);

// Nearest R(X), nearest R(X) with X Hermitian, and with X skew-Hermitian.
ComplexDense nearest_r_structure(const StructuredBlocks& blocks);
ComplexDense nearest_structured_hermitian(const StructuredBlocks& blocks);
ComplexDense nearest_structured_skew(const StructuredBlocks& blocks);

struct ComplexSolution {
  ComplexDense a;
  // objective is the complex ||A X - B||_F. For rank-deficient X,
  // infimum_value holds the lower bound from the unstructured real problem.
  Solution meta;
  bool full_column_rank = true;
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
};

double complex_objective(const ComplexDense& a, const ComplexDense& x, const ComplexDense& b);

// Requires rows >= cols.
ComplexSolution solve_complex(const ComplexDense& x, const ComplexDense& b,
                              const SolveOptions& opts = {});

}  // namespace nspsd
