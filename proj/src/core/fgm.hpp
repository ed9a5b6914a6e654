#pragma once

#include "core/linalg.hpp"
#include "core/reduction.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace nspsd {

enum class InitStrategy { scaled_identity, block_diagonal, user };

struct SolveOptions {
  // Stop once ||A_k - A_{k-1}||_F < delta * ||A_1 - A_0||_F.
  double delta = 1e-6;
  std::size_t max_iterations = 10000;
  std::optional<double> max_seconds;
  // Suboptimality budget for epsilon-family lifts; <= 0 selects the default.
  double epsilon = 0.0;
  std::optional<double> rank_tolerance;
  InitStrategy init = InitStrategy::block_diagonal;
  // n x n starting point used with InitStrategy::user.
  Matrix initial;
  Completion completion = Completion::exact_skew;
  // Dispatch the rank-one and zero-subproblem closed forms before iterating.
  bool closed_forms = true;

  void validate() const;
};

struct IterationTrace {
  // ||A X - B||_F^2 at every accepted iterate, starting with the projected A0.
  std::vector<double> objective;
  std::size_t iterations = 0;
  std::size_t restarts = 0;
  bool converged = false;
  bool hit_iteration_cap = false;
  bool hit_time_cap = false;
};

struct FgmResult {
  Matrix a;
  IterationTrace trace;
};

// f(A) = 1/2 ||A X - B||_F^2 kept through X X^T and B X^T so each iteration
// costs O(n^3) regardless of the column count of X.
struct QuadraticModel {
  Matrix gram;   // X X^T
  Matrix cross;  // B X^T
  double target_sq = 0.0;  // ||B||_F^2

  static QuadraticModel from_data(const Matrix& x, const Matrix& b);
  // Diagonal X = diag(sigma) with target c.
  static QuadraticModel diagonal(const Vector& sigma, const Matrix& c);

  Matrix gradient(const Matrix& a) const { return a * gram - cross; }
  // ||A X - B||_F^2
  double objective_sq(const Matrix& a) const;
};

using Projector = std::function<Matrix(const Matrix&)>;

// Accelerated projected gradient with step 1/L. Constant strongly-convex
// momentum when mu/L is resolvable, otherwise the (k-1)/(k+2) schedule;
// momentum resets whenever a step increases the objective.
FgmResult accelerated_projected_gradient(const QuadraticModel& model, const Matrix& a0,
                                         const Projector& project, const SolveOptions& opts);

// NSPSD-constrained FGM directly on (x, b), no reduction.
FgmResult fgm(const Matrix& x, const Matrix& b, const Matrix& a0, const SolveOptions& opts);

// max(alpha, 0) I_n with alpha = trace(X B^T) / ||X||_F^2.
Matrix init_scaled_identity(const Matrix& x, const Matrix& b);

// Half-open index ranges [first, last) of sigma (nonincreasing) such that the
// leading value of a range is at most ratio times any value inside it.
std::vector<std::pair<Eigen::Index, Eigen::Index>> partition_by_magnitude(const Vector& sigma,
                                                                          double ratio = 100.0);

// Block-diagonal warm start for the diagonal subproblem: each block gets 100
// FGM iterations from its own scaled identity.
Matrix init_block_diagonal(const Vector& sigma1, const Matrix& c);

// Reduce, dispatch the closed forms, run FGM on the diagonal subproblem and lift.
Solution solve(const Matrix& x, const Matrix& b, const SolveOptions& opts = {});

}  // namespace nspsd
