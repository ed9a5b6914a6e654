#pragma once

#include "core/linalg.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>

namespace nspsd {

// Rotation of (x, b) by the SVD of x: the problem splits into an r x r
// subproblem with diagonal sigma1 and target c, a free block w that the lift
// absorbs, and a constant residual ||B V2||_F^2.
struct ReducedProblem {
  Vector sigma1;         // positive, nonincreasing, length r
  Matrix c;              // U1^T B V1, r x r
  Matrix w;              // U2^T B V1, (n - r) x r
  double residual_sq = 0.0;
  SvdFactorization svd;  // of x
  Matrix x;
  Matrix b;

  Eigen::Index rank() const { return sigma1.size(); }
  Eigen::Index dim() const { return x.rows(); }
  Matrix u1() const;
  Matrix u2() const;
  // 1/2 W Sigma1^{-1}
  Matrix z() const;
};

// `bounded`: iterative answer bracketed by a lower bound, no attainment claim.
enum class Attainment { exact, epsilon, shortcut_zero, rank_one, bounded };

// How the lift handles a subproblem solution whose symmetric part has a null
// space not annihilated by z().
enum class Completion {
  // Route the offending part of W Sigma1^{-1} through the skew part of A; the
  // infimum is attained exactly.
  exact_skew,
  // The epsilon-suboptimal family A_eps (eigenvalue inflation of H11).
  epsilon_family,
};

const char* to_string(Attainment a);

struct Solution {
  Matrix a;
  Attainment attained = Attainment::exact;
  bool infimum_attained = true;
  std::optional<double> epsilon;  // set when an epsilon-family member is returned
  double objective = 0.0;         // ||A X - B||_F
  double infimum_value = 0.0;     // square root of the infimum of ||A X - B||_F^2
  std::size_t iterations = 0;
  std::map<std::string, double> diagnostics;
};

ReducedProblem reduce(const Matrix& x, const Matrix& b,
                      std::optional<double> rank_tolerance = std::nullopt);

// ||a11 Sigma1 - C||_F^2
double subproblem_residual_sq(const ReducedProblem& rp, const Matrix& a11);

// Reduced-coordinate objective ||A X - B||_F^2 for a lift whose (2,1) block in
// U-coordinates is block21 (rows n - r): subproblem term + block term + ||B V2||^2.
double reduced_objective_sq(const ReducedProblem& rp, const Matrix& a11, const Matrix& block21);

// Upper end of the admissible epsilon range for a subproblem residual.
double epsilon_upper_bound(double subproblem_residual_sq);

// 1e-8 * max(1, infimum_sq), clamped into the admissible range.
double default_epsilon(double infimum_sq, double subproblem_residual_sq);

// Null-space containment tolerance used by the lift dispatch.
inline constexpr double kNullContainmentTolerance = 1e-10;

// Minimal-norm member of the optimal family (K = Z H^+ Z^T, R = 0). Requires
// null(H11) to be contained in null(Z).
Solution lift_optimal(const ReducedProblem& rp, const Matrix& a11_hat);

// Epsilon-suboptimal lift; delegates to lift_optimal when H11 has full rank.
Solution lift_epsilon(const ReducedProblem& rp, const Matrix& a11_hat, double epsilon);

// Exact lift valid for any subproblem minimiser.
Solution lift_skew_completion(const ReducedProblem& rp, const Matrix& a11_hat);

// lift_optimal when the null-space containment holds, otherwise the requested
// completion. A non-positive epsilon selects default_epsilon.
Solution lift(const ReducedProblem& rp, const Matrix& a11_hat, Completion completion,
              double epsilon);

// True when the subproblem minimiser is zero: U1^T (B X^T + X B^T) U1 is NSD
// and U1^T (B X^T - X B^T) U1 vanishes (both relative to 1e-10).
bool shortcut_applies(const ReducedProblem& rp);

// Closed-form solution for the zero-subproblem case (r < n), empty otherwise.
std::optional<Solution> shortcut_negative(const ReducedProblem& rp, Completion completion,
                                          double epsilon);

// Closed-form solution when rank(x) = 1.
Solution solve_rank_one(const Matrix& x, const Matrix& b, Completion completion,
                        double epsilon, std::optional<double> rank_tolerance = std::nullopt);

}  // namespace nspsd
