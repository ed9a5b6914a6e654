#include "core/reduction.hpp"

#include "core/error.hpp"
#include "core/projections.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nspsd {

namespace {

// A = U [[a11, 2 (h - Z)^T], [2 Z, k]] U^T. With h = Z this is the optimal
// family of the reduction; other h move part of W Sigma1^{-1} into the skew part.
Matrix assemble(const ReducedProblem& rp, const Matrix& a11, const Matrix& h, const Matrix& k) {
  const Eigen::Index n = rp.dim();
  const Eigen::Index r = rp.rank();
  const Matrix z = rp.z();
  Matrix a_hat = Matrix::Zero(n, n);
  a_hat.topLeftCorner(r, r) = a11;
  if (r < n) {
    a_hat.topRightCorner(r, n - r) = 2.0 * (h - z).transpose();
    a_hat.bottomLeftCorner(n - r, r) = 2.0 * z;
    a_hat.bottomRightCorner(n - r, n - r) = k;
  }
  const Matrix& u = rp.svd.u;
  return u * a_hat * u.transpose();
}

Solution finish(const ReducedProblem& rp, const Matrix& a, const Matrix& a11_hat) {
  Solution sol;
  sol.a = a;
  sol.objective = (a * rp.x - rp.b).norm();
  const double sub = subproblem_residual_sq(rp, a11_hat);
  sol.infimum_value = std::sqrt(sub + rp.residual_sq);
  sol.diagnostics["rank"] = static_cast<double>(rp.rank());
  sol.diagnostics["subproblem_residual"] = std::sqrt(sub);
  return sol;
}

double max_abs(const Vector& v) { return v.size() > 0 ? v.cwiseAbs().maxCoeff() : 0.0; }

// Rank rule for H11 scaled by the whole of A11: an iterate whose symmetric
// part is small next to its skew part still carries eps * ||A11|| noise.
double h11_tolerance(const Matrix& a11_hat) {
  if (a11_hat.size() == 0) return 0.0;
  const double scale = std::max(max_abs(sym_eig(sym_part(a11_hat)).eigenvalues), a11_hat.norm());
  return default_rank_tolerance(a11_hat.rows(), a11_hat.cols(), scale);
}

bool contained(const Matrix& a11_hat, const Matrix& z) {
  return null_containment(sym_part(a11_hat), z, kNullContainmentTolerance, h11_tolerance(a11_hat));
}

void record_schur(Solution& sol, const Matrix& h11, const Matrix& h21, const Matrix& k) {
  sol.diagnostics["schur_check"] = block_psd_schur_check(h11, h21, k, 1e-8) ? 1.0 : 0.0;
}

double clamp_epsilon(double epsilon, double subproblem_residual_sq) {
  if (!(epsilon > 0.0)) {
    std::ostringstream os;
    os << "epsilon must be positive, got " << epsilon;
    fail(ErrorCode::invalid_argument, os.str());
  }
  const double bound = epsilon_upper_bound(subproblem_residual_sq);
  return epsilon < bound ? epsilon : 0.5 * bound;
}

bool meets_guarantee(const Solution& sol) {
  return sol.epsilon &&
         sol.objective * sol.objective < sol.infimum_value * sol.infimum_value + *sol.epsilon;
}

// A caller-supplied epsilon is used as given. The default is raised tenfold
// while rounding in the explicit A_eps (its K block grows like 1/eps) breaks
// the guarantee.
template <class Build>
Solution with_epsilon(double requested, double start, double bound, Build build) {
  if (requested > 0.0) return build(requested);
  double eps = start;
  Solution sol = build(eps);
  while (!meets_guarantee(sol) && 10.0 * eps < bound) {
    eps *= 10.0;
    sol = build(eps);
  }
  return sol;
}

}  // namespace

const char* to_string(Attainment a) {
  switch (a) {
    case Attainment::exact: return "exact";
    case Attainment::epsilon: return "epsilon";
    case Attainment::shortcut_zero: return "shortcut_zero";
    case Attainment::rank_one: return "rank_one";
    case Attainment::bounded: return "bounded";
  }
  return "unknown";
}

Matrix ReducedProblem::u1() const { return svd.u.leftCols(rank()); }

Matrix ReducedProblem::u2() const { return svd.u.rightCols(dim() - rank()); }

Matrix ReducedProblem::z() const {
  return 0.5 * w * sigma1.cwiseInverse().asDiagonal();
}

ReducedProblem reduce(const Matrix& x, const Matrix& b, std::optional<double> rank_tolerance) {
  require_finite(x, "X");
  require_finite(b, "B");
  if (x.rows() != b.rows() || x.cols() != b.cols()) {
    fail(ErrorCode::dimension_mismatch,
         "X is " + shape_string(x) + " but B is " + shape_string(b));
  }
  ReducedProblem rp;
  rp.svd = svd(x, rank_tolerance);
  const Eigen::Index r = rp.svd.numeric_rank;
  if (r == 0) {
    fail(ErrorCode::degenerate_problem,
         "X (" + shape_string(x) + ") is numerically zero; nothing to reduce");
  }
  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  rp.x = x;
  rp.b = b;
  rp.sigma1 = rp.svd.singular_values.head(r);
  const Matrix bv1 = b * rp.svd.v.leftCols(r);
  rp.c = rp.svd.u.leftCols(r).transpose() * bv1;
  rp.w = rp.svd.u.rightCols(n - r).transpose() * bv1;
  rp.residual_sq = (b * rp.svd.v.rightCols(m - r)).squaredNorm();
  return rp;
}

double subproblem_residual_sq(const ReducedProblem& rp, const Matrix& a11) {
  return (a11 * rp.sigma1.asDiagonal() - rp.c).squaredNorm();
}

double reduced_objective_sq(const ReducedProblem& rp, const Matrix& a11, const Matrix& block21) {
  return subproblem_residual_sq(rp, a11) +
         (block21 * rp.sigma1.asDiagonal() - rp.w).squaredNorm() + rp.residual_sq;
}

double epsilon_upper_bound(double subproblem_residual_sq) {
  return subproblem_residual_sq != 0.0 ? std::min(1.0, subproblem_residual_sq) : 1.0;
}

double default_epsilon(double infimum_sq, double subproblem_residual_sq) {
  return clamp_epsilon(1e-8 * std::max(1.0, infimum_sq), subproblem_residual_sq);
}

Solution lift_optimal(const ReducedProblem& rp, const Matrix& a11_hat) {
  const Eigen::Index r = rp.rank();
  if (a11_hat.rows() != r || a11_hat.cols() != r) {
    fail(ErrorCode::dimension_mismatch, "subproblem solution is " + shape_string(a11_hat) +
                                            ", expected " + std::to_string(r) + "x" +
                                            std::to_string(r));
  }
  const Matrix h11 = sym_part(a11_hat);
  const Matrix z = rp.z();
  const double tol = h11_tolerance(a11_hat);
  if (!null_containment(h11, z, kNullContainmentTolerance, tol)) {
    fail(ErrorCode::contract_violation,
         "null(H11) is not contained in null(Z); the infimum is not attained by the "
         "minimal-norm family, use lift_epsilon or lift_skew_completion");
  }
  const Matrix k = z.rows() > 0 ? Matrix(z * pinv_apply(h11, z.transpose(), tol)) : Matrix(0, 0);
  Solution sol = finish(rp, assemble(rp, a11_hat, z, k), a11_hat);
  sol.attained = Attainment::exact;
  sol.infimum_attained = true;
  sol.diagnostics["null_containment"] = 1.0;
  record_schur(sol, h11, z, k);
  return sol;
}

Solution lift_epsilon(const ReducedProblem& rp, const Matrix& a11_hat, double epsilon) {
  const Eigen::Index r = rp.rank();
  if (a11_hat.rows() != r || a11_hat.cols() != r) {
    fail(ErrorCode::dimension_mismatch, "subproblem solution is " + shape_string(a11_hat) +
                                            ", expected " + std::to_string(r) + "x" +
                                            std::to_string(r));
  }
  const double sub = subproblem_residual_sq(rp, a11_hat);
  const double eps = clamp_epsilon(epsilon, sub);

  const Matrix h11 = sym_part(a11_hat);
  const SymEig eig = sym_eig(h11);
  const double tol = h11_tolerance(a11_hat);
  const Eigen::Index s = (eig.eigenvalues.array() > tol).count();
  if (s == r) return lift_optimal(rp, a11_hat);

  const double sigma_norm = rp.sigma1.norm();
  const double root = 4.0 * std::sqrt(static_cast<double>(r - s)) * sigma_norm;
  const double beta = sub != 0.0 ? root * std::sqrt(sub) : root;
  Vector inflated = eig.eigenvalues;
  for (Eigen::Index i = 0; i < inflated.size(); ++i) {
    if (inflated(i) <= tol) inflated(i) = eps / beta;
  }
  const Matrix& q = eig.eigenvectors;
  const Matrix h_eps = q * inflated.asDiagonal() * q.transpose();
  const Matrix a11_eps = h_eps + skew_part(a11_hat);
  const Matrix z = rp.z();
  const Matrix k_eps = z * q * inflated.cwiseInverse().asDiagonal() * q.transpose() * z.transpose();

  Solution sol = finish(rp, assemble(rp, a11_eps, z, k_eps), a11_hat);
  sol.attained = Attainment::epsilon;
  sol.infimum_attained = false;
  sol.epsilon = eps;
  sol.diagnostics["epsilon"] = eps;
  sol.diagnostics["null_containment"] = contained(a11_hat, z) ? 1.0 : 0.0;
  sol.diagnostics["epsilon_guarantee"] =
      sol.objective * sol.objective < sol.infimum_value * sol.infimum_value + eps ? 1.0 : 0.0;
  record_schur(sol, h_eps, z, k_eps);
  return sol;
}

Solution lift_skew_completion(const ReducedProblem& rp, const Matrix& a11_hat) {
  const Eigen::Index r = rp.rank();
  if (a11_hat.rows() != r || a11_hat.cols() != r) {
    fail(ErrorCode::dimension_mismatch, "subproblem solution is " + shape_string(a11_hat) +
                                            ", expected " + std::to_string(r) + "x" +
                                            std::to_string(r));
  }
  const Matrix h11 = sym_part(a11_hat);
  const Matrix z = rp.z();
  const SymEig eig = sym_eig(h11);
  const double tol = h11_tolerance(a11_hat);
  // Eigendirection i stays in the symmetric coupling when that is cheaper in
  // norm than carrying Z q_i in the skew part: lambda_i > ||Z q_i|| / 2.
  Vector inv = Vector::Zero(r);
  Vector keep = Vector::Zero(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const double lambda = eig.eigenvalues(i);
    const double coupling = z.rows() > 0 ? (z * eig.eigenvectors.col(i)).norm() : 0.0;
    if (lambda > tol && lambda > 0.5 * coupling) {
      keep(i) = 1.0;
      inv(i) = 1.0 / lambda;
    }
  }
  const Matrix& q = eig.eigenvectors;
  const Matrix h21 = z * q * keep.asDiagonal() * q.transpose();
  const Matrix k = z * q * inv.asDiagonal() * q.transpose() * z.transpose();

  Solution sol = finish(rp, assemble(rp, a11_hat, h21, k), a11_hat);
  sol.attained = Attainment::exact;
  sol.infimum_attained = true;
  sol.diagnostics["null_containment"] = contained(a11_hat, z) ? 1.0 : 0.0;
  record_schur(sol, h11, h21, k);
  return sol;
}

Solution lift(const ReducedProblem& rp, const Matrix& a11_hat, Completion completion,
              double epsilon) {
  if (contained(a11_hat, rp.z())) {
    return lift_optimal(rp, a11_hat);
  }
  if (completion == Completion::exact_skew) return lift_skew_completion(rp, a11_hat);
  const double sub = subproblem_residual_sq(rp, a11_hat);
  return with_epsilon(epsilon, default_epsilon(sub + rp.residual_sq, sub), epsilon_upper_bound(sub),
                      [&](double eps) { return lift_epsilon(rp, a11_hat, eps); });
}

bool shortcut_applies(const ReducedProblem& rp) {
  const Eigen::Index r = rp.rank();
  if (r == 0 || r >= rp.dim()) return false;
  const Matrix bxt = rp.b * rp.x.transpose();
  const Matrix sym = bxt + bxt.transpose();
  const Matrix u1 = rp.u1();
  const Matrix reduced_sym = u1.transpose() * sym * u1;
  const double lambda_max = sym_eig(0.5 * (reduced_sym + reduced_sym.transpose())).eigenvalues.maxCoeff();
  if (lambda_max > 1e-10 * sym.norm()) return false;
  // The zero subproblem minimiser also needs C Sigma1 symmetric; otherwise the
  // skew part of the subproblem target is reachable.
  const Matrix reduced_skew = u1.transpose() * (bxt - bxt.transpose()) * u1;
  return reduced_skew.norm() <= 1e-10 * 2.0 * bxt.norm();
}

std::optional<Solution> shortcut_negative(const ReducedProblem& rp, Completion completion,
                                          double epsilon) {
  if (!shortcut_applies(rp)) return std::nullopt;
  const Eigen::Index r = rp.rank();
  const Eigen::Index n = rp.dim();
  const Matrix zero = Matrix::Zero(r, r);
  const Matrix z = rp.z();
  Solution sol;
  if (null_containment(zero, z, kNullContainmentTolerance)) {
    sol = lift_optimal(rp, zero);
  } else if (completion == Completion::exact_skew) {
    sol = lift_skew_completion(rp, zero);
  } else {
    const double c_sq = rp.c.squaredNorm();
    const double root = 4.0 * std::sqrt(static_cast<double>(n)) * rp.sigma1.norm();
    const double alpha = c_sq != 0.0 ? root * std::sqrt(c_sq) : root;
    const auto build = [&](double requested) {
      const double eps = clamp_epsilon(requested, c_sq);
      const Matrix a11_eps = (eps / alpha) * Matrix::Identity(r, r);
      const Matrix k_eps = (alpha / eps) * z * z.transpose();
      Solution s = finish(rp, assemble(rp, a11_eps, z, k_eps), zero);
      s.infimum_attained = false;
      s.epsilon = eps;
      s.diagnostics["epsilon"] = eps;
      s.diagnostics["null_containment"] = 0.0;
      record_schur(s, a11_eps, z, k_eps);
      return s;
    };
    sol = with_epsilon(epsilon, default_epsilon(c_sq + rp.residual_sq, c_sq),
                       epsilon_upper_bound(c_sq), build);
  }
  sol.attained = Attainment::shortcut_zero;
  return sol;
}

Solution solve_rank_one(const Matrix& x, const Matrix& b, Completion completion, double epsilon,
                        std::optional<double> rank_tolerance) {
  const ReducedProblem rp = reduce(x, b, rank_tolerance);
  if (rp.rank() != 1) {
    fail(ErrorCode::contract_violation,
         "solve_rank_one requires rank(X) = 1, numeric rank is " + std::to_string(rp.rank()));
  }
  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  const Vector u = rp.svd.u.col(0);
  const Vector v = rp.svd.v.col(0);
  const Matrix u_rest = rp.svd.u.rightCols(n - 1);
  const double sigma = rp.sigma1(0);
  const Vector bv = b * v;
  const double c = u.dot(bv);
  const Vector g = u_rest.transpose() * bv;
  const double rest_sq = (b * rp.svd.v.rightCols(m - 1)).squaredNorm();

  Solution sol;
  if (c > 0.0) {
    const Matrix k = (g * g.transpose()) / (4.0 * sigma * c);
    sol.a = (c * u * u.transpose() + u_rest * g * u.transpose()) / sigma +
            u_rest * k * u_rest.transpose();
    sol.infimum_value = std::sqrt(rest_sq);
    sol.infimum_attained = true;
  } else if (g.norm() <= 1e-12 * std::max(1.0, b.norm())) {
    sol.a = Matrix::Zero(n, n);
    sol.infimum_value = std::sqrt(c * c + rest_sq);
    sol.infimum_attained = true;
  } else if (completion == Completion::exact_skew) {
    sol.a = (u_rest * g * u.transpose() - u * g.transpose() * u_rest.transpose()) / sigma;
    sol.infimum_value = std::sqrt(c * c + rest_sq);
    sol.infimum_attained = true;
  } else {
    const double inf_sq = c * c + rest_sq;
    const auto build = [&](double requested) {
      const double eps = clamp_epsilon(requested, c * c);
      // Smallest n0 with q / n0^2 + p / n0 < eps, p >= 0.
      const auto min_n0 = [eps](double q, double p) {
        const double t = 2.0 * eps / (p + std::sqrt(p * p + 4.0 * q * eps));
        double n0 = std::max(1.0, std::floor(1.0 / t));
        while (q / (n0 * n0) + p / n0 >= eps) n0 += 1.0;
        while (n0 > 1.0 && q / ((n0 - 1.0) * (n0 - 1.0)) + p / (n0 - 1.0) < eps) n0 -= 1.0;
        return n0;
      };
      // The stated rule scales by sigma; the objective excess of A_n0 is
      // 1/n0^2 - 2c/n0. Taking the larger n0 satisfies both.
      const double n0 = std::max(min_n0(sigma * sigma, -2.0 * sigma * c), min_n0(1.0, -2.0 * c));
      const Matrix k = (n0 / (4.0 * sigma)) * g * g.transpose();
      Solution s;
      s.a = (u * u.transpose() / n0 + u_rest * g * u.transpose()) / sigma +
            u_rest * k * u_rest.transpose();
      s.objective = (s.a * x - b).norm();
      s.infimum_value = std::sqrt(inf_sq);
      s.infimum_attained = false;
      s.epsilon = eps;
      s.diagnostics["epsilon"] = eps;
      s.diagnostics["n0"] = n0;
      return s;
    };
    sol = with_epsilon(epsilon, default_epsilon(inf_sq, c * c), epsilon_upper_bound(c * c), build);
  }
  sol.attained = Attainment::rank_one;
  sol.objective = (sol.a * x - b).norm();
  sol.diagnostics["rank"] = 1.0;
  sol.diagnostics["u_t_b_v"] = c;
  return sol;
}

}  // namespace nspsd
