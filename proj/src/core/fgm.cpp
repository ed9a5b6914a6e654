#include "core/fgm.hpp"

#include "core/error.hpp"
#include "core/projections.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace nspsd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr std::size_t kBlockInitIterations = 100;
constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

void SolveOptions::validate() const {
  std::ostringstream os;
  if (!(delta > 0.0)) {
    os << "delta must be positive, got " << delta;
  } else if (max_iterations < 1) {
    os << "max_iterations must be at least 1";
  } else if (max_seconds && !(*max_seconds > 0.0)) {
    os << "max_seconds must be positive, got " << *max_seconds;
  } else if (std::isnan(epsilon)) {
    os << "epsilon must be a number";
  } else if (rank_tolerance && !(*rank_tolerance >= 0.0)) {
    os << "rank_tolerance must be nonnegative, got " << *rank_tolerance;
  } else {
    return;
  }
  fail(ErrorCode::invalid_argument, os.str());
}

QuadraticModel QuadraticModel::from_data(const Matrix& x, const Matrix& b) {
  if (x.rows() != b.rows() || x.cols() != b.cols()) {
    fail(ErrorCode::dimension_mismatch,
         "X is " + shape_string(x) + " but B is " + shape_string(b));
  }
  QuadraticModel m;
  m.gram = x * x.transpose();
  m.cross = b * x.transpose();
  m.target_sq = b.squaredNorm();
  return m;
}

QuadraticModel QuadraticModel::diagonal(const Vector& sigma, const Matrix& c) {
  QuadraticModel m;
  m.gram = sigma.cwiseAbs2().asDiagonal();
  m.cross = c * sigma.asDiagonal();
  m.target_sq = c.squaredNorm();
  return m;
}

double QuadraticModel::objective_sq(const Matrix& a) const {
  const double quad = (a * gram).cwiseProduct(a).sum();
  const double lin = a.cwiseProduct(cross).sum();
  return std::max(0.0, quad - 2.0 * lin + target_sq);
}

FgmResult accelerated_projected_gradient(const QuadraticModel& model, const Matrix& a0,
                                         const Projector& project, const SolveOptions& opts) {
  opts.validate();
  const Eigen::Index n = model.gram.rows();
  if (a0.rows() != n || a0.cols() != n) {
    fail(ErrorCode::dimension_mismatch,
         "initial matrix is " + shape_string(a0) + ", expected " + std::to_string(n) + "x" +
             std::to_string(n));
  }
  const auto t0 = Clock::now();
  FgmResult out;
  IterationTrace& trace = out.trace;

  Matrix a = project(a0);
  double f = model.objective_sq(a);
  trace.objective.push_back(f);

  const Vector spectrum = sym_eig(model.gram).eigenvalues;
  const double lipschitz = n > 0 ? spectrum(n - 1) : 0.0;
  if (!(lipschitz > 0.0)) {
    // X = 0: every feasible A is optimal.
    out.a = a;
    trace.converged = true;
    return out;
  }
  const double mu = std::max(0.0, spectrum(0));
  const bool strongly_convex = mu > static_cast<double>(n) * kEps * lipschitz;
  const double q = std::sqrt(mu / lipschitz);
  const double strong_momentum = (1.0 - q) / (1.0 + q);

  Matrix y = a;
  Matrix best = a;
  double best_f = f;
  double reference_step = -1.0;
  std::size_t k = 1;  // iterations since the last momentum reset
  bool just_restarted = false;

  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    if (opts.max_seconds && seconds_since(t0) > *opts.max_seconds) {
      trace.hit_time_cap = true;
      break;
    }
    trace.iterations = it;
    Matrix a_next = project(y - model.gradient(y) / lipschitz);
    const double f_next = model.objective_sq(a_next);
    // The Gram-form objective carries rounding error of order eps * ||B||^2.
    const double noise = 64.0 * kEps * std::max(f, model.target_sq);
    if (f_next > f + noise && !just_restarted) {
      // A plain projected step from the last accepted iterate cannot increase
      // f, so the retry is accepted unconditionally.
      y = a;
      k = 1;
      ++trace.restarts;
      just_restarted = true;
      continue;
    }
    just_restarted = false;
    const double step = (a_next - a).norm();
    if (reference_step < 0.0) reference_step = step;
    const double beta =
        strongly_convex ? strong_momentum : static_cast<double>(k - 1) / static_cast<double>(k + 2);
    y = a_next + beta * (a_next - a);
    a = std::move(a_next);
    f = f_next;
    trace.objective.push_back(f);
    // Near the optimum f stops resolving A; ties within noise go to the later,
    // more converged iterate.
    if (f <= best_f + noise) {
      best_f = std::min(best_f, f);
      best = a;
    }
    ++k;
    // A warm start can make delta * ||A_1 - A_0|| smaller than rounding noise.
    const double floor = 100.0 * kEps * std::max(1.0, a.norm());
    if (step <= std::max(opts.delta * reference_step, floor)) {
      trace.converged = true;
      break;
    }
  }
  if (!trace.converged && !trace.hit_time_cap) trace.hit_iteration_cap = true;
  out.a = std::move(best);
  return out;
}

FgmResult fgm(const Matrix& x, const Matrix& b, const Matrix& a0, const SolveOptions& opts) {
  require_finite(x, "X");
  require_finite(b, "B");
  require_finite(a0, "initial matrix");
  const QuadraticModel model = QuadraticModel::from_data(x, b);
  return accelerated_projected_gradient(model, a0, nspsd_project, opts);
}

Matrix init_scaled_identity(const Matrix& x, const Matrix& b) {
  if (x.rows() != b.rows() || x.cols() != b.cols()) {
    fail(ErrorCode::dimension_mismatch,
         "X is " + shape_string(x) + " but B is " + shape_string(b));
  }
  const Eigen::Index n = x.rows();
  const double norm_sq = x.squaredNorm();
  if (norm_sq == 0.0) return Matrix::Zero(n, n);
  const double alpha = x.cwiseProduct(b).sum() / norm_sq;
  return std::max(alpha, 0.0) * Matrix::Identity(n, n);
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> partition_by_magnitude(const Vector& sigma,
                                                                          double ratio) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
  Eigen::Index first = 0;
  for (Eigen::Index i = 1; i < sigma.size(); ++i) {
    if (sigma(first) > ratio * sigma(i)) {
      blocks.emplace_back(first, i);
      first = i;
    }
  }
  if (sigma.size() > 0) blocks.emplace_back(first, sigma.size());
  return blocks;
}

Matrix init_block_diagonal(const Vector& sigma1, const Matrix& c) {
  const Eigen::Index r = sigma1.size();
  if (c.rows() != r || c.cols() != r) {
    fail(ErrorCode::dimension_mismatch, "subproblem target is " + shape_string(c) +
                                            " for " + std::to_string(r) + " singular values");
  }
  SolveOptions block_opts;
  block_opts.max_iterations = kBlockInitIterations;
  Matrix a0 = Matrix::Zero(r, r);
  for (const auto& [first, last] : partition_by_magnitude(sigma1)) {
    const Eigen::Index len = last - first;
    const Vector s = sigma1.segment(first, len);
    const Matrix cb = c.block(first, first, len, len);
    const Matrix xb = s.asDiagonal();
    const Matrix start = init_scaled_identity(xb, cb);
    const FgmResult res = accelerated_projected_gradient(QuadraticModel::diagonal(s, cb), start,
                                                         nspsd_project, block_opts);
    a0.block(first, first, len, len) = res.a;
  }
  return a0;
}

Solution solve(const Matrix& x, const Matrix& b, const SolveOptions& opts) {
  const auto t0 = Clock::now();
  opts.validate();
  require_finite(x, "X");
  require_finite(b, "B");
  if (x.rows() != b.rows() || x.cols() != b.cols()) {
    fail(ErrorCode::dimension_mismatch,
         "X is " + shape_string(x) + " but B is " + shape_string(b));
  }
  const Eigen::Index n = x.rows();
  if (x.squaredNorm() == 0.0) {
    Solution sol;
    sol.a = Matrix::Zero(n, n);
    sol.objective = b.norm();
    sol.infimum_value = sol.objective;
    sol.diagnostics["rank"] = 0.0;
    sol.diagnostics["runtime_seconds"] = seconds_since(t0);
    return sol;
  }

  const ReducedProblem rp = reduce(x, b, opts.rank_tolerance);
  std::optional<Solution> sol;
  if (opts.closed_forms) {
    if (rp.rank() == 1) {
      sol = solve_rank_one(x, b, opts.completion, opts.epsilon, opts.rank_tolerance);
    } else {
      sol = shortcut_negative(rp, opts.completion, opts.epsilon);
    }
  }
  if (!sol) {
    Matrix a0;
    switch (opts.init) {
      case InitStrategy::block_diagonal:
        a0 = init_block_diagonal(rp.sigma1, rp.c);
        break;
      case InitStrategy::scaled_identity:
        a0 = init_scaled_identity(Matrix(rp.sigma1.asDiagonal()), rp.c);
        break;
      case InitStrategy::user:
        if (opts.initial.rows() != n || opts.initial.cols() != n) {
          fail(ErrorCode::dimension_mismatch, "user initial matrix is " +
                                                  shape_string(opts.initial) + ", expected " +
                                                  std::to_string(n) + "x" + std::to_string(n));
        }
        require_finite(opts.initial, "user initial matrix");
        a0 = rp.u1().transpose() * opts.initial * rp.u1();
        break;
    }
    const FgmResult res = accelerated_projected_gradient(
        QuadraticModel::diagonal(rp.sigma1, rp.c), a0, nspsd_project, opts);
    sol = lift(rp, res.a, opts.completion, opts.epsilon);
    sol->iterations = res.trace.iterations;
    sol->diagnostics["restarts"] = static_cast<double>(res.trace.restarts);
    sol->diagnostics["converged"] = res.trace.converged ? 1.0 : 0.0;
  }
  sol->diagnostics["rank"] = static_cast<double>(rp.rank());
  sol->diagnostics["runtime_seconds"] = seconds_since(t0);
  return *sol;
}

}  // namespace nspsd
