#include "core/complex_bridge.hpp"

#include "core/error.hpp"

#include <chrono>
#include <cmath>

namespace nspsd {

namespace {

ComplexDense r_average(const Matrix& p1, const Matrix& p4, const Matrix& p2, const Matrix& p3) {
  return ComplexDense(0.5 * (p1 + p4), 0.5 * (p2 - p3));
}

void require_same_shape(const ComplexDense& x, const ComplexDense& b) {
  if (x.rows() != b.rows() || x.cols() != b.cols()) {
    fail(ErrorCode::dimension_mismatch,
         "X is " + shape_string(x.re) + " but B is " + shape_string(b.re));
  }
}

}  // namespace

StructuredBlocks StructuredBlocks::split(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) {
    fail(ErrorCode::dimension_mismatch,
         "expected a square matrix of even order, got " + shape_string(m));
  }
  const Eigen::Index n = m.rows() / 2;
  return {m.topLeftCorner(n, n), m.topRightCorner(n, n), m.bottomLeftCorner(n, n),
          m.bottomRightCorner(n, n)};
}

Matrix StructuredBlocks::assemble() const {
  validate();
  const Eigen::Index n = dim();
  Matrix m(2 * n, 2 * n);
  m << a1, a2, a3, a4;
  return m;
}

void StructuredBlocks::validate() const {
  const Eigen::Index n = a1.rows();
  for (const Matrix* blk : {&a1, &a2, &a3, &a4}) {
    if (blk->rows() != n || blk->cols() != n) {
      fail(ErrorCode::dimension_mismatch, "structured blocks must all be " + std::to_string(n) +
                                              "x" + std::to_string(n) + ", got " +
                                              shape_string(*blk));
    }
  }
}

Matrix embed(const ComplexDense& z) {
  Matrix r(2 * z.rows(), 2 * z.cols());
  r << z.re, z.im, -z.im, z.re;
  return r;
}

ConeMembershipReport nhpsd_check(const ComplexDense& a, std::optional<double> membership_tolerance) {
  require_square(a.re, "nhpsd_check input");
  ConeMembershipReport rep = is_nspsd(embed(a), membership_tolerance);
  // The embedding doubles squared norms.
  rep.violation /= std::sqrt(2.0);
  return rep;
}

ComplexDense complex_psd_project(const ComplexDense& a) {
  require_square(a.re, "complex_psd_project input");
  const ComplexDense herm(sym_part(a.re), skew_part(a.im));
  const StructuredBlocks p = StructuredBlocks::split(psd_project(embed(herm)));
  return r_average(p.a1, p.a4, p.a2, p.a3);
}

StructuredBlocks project_structured_nspsd(const StructuredBlocks& blocks) {
  blocks.validate();
  const ComplexDense herm_part(0.5 * (sym_part(blocks.a1) + sym_part(blocks.a4)),
                               0.5 * (skew_part(blocks.a2) - skew_part(blocks.a3)));
  const ComplexDense clipped = complex_psd_project(herm_part);
  const Matrix p1 = clipped.re + 0.5 * (skew_part(blocks.a1) + skew_part(blocks.a4));
  const Matrix p2 = clipped.im + 0.5 * (sym_part(blocks.a2) - sym_part(blocks.a3));
  return {p1, p2, -p2, p1};
}

Matrix project_structured_nspsd(const Matrix& m) {
  return project_structured_nspsd(StructuredBlocks::split(m)).assemble();
}

ComplexDense nearest_r_structure(const StructuredBlocks& blocks) {
  blocks.validate();
  return r_average(blocks.a1, blocks.a4, blocks.a2, blocks.a3);
}

ComplexDense nearest_structured_hermitian(const StructuredBlocks& blocks) {
  blocks.validate();
  return ComplexDense(0.5 * (sym_part(blocks.a1) + sym_part(blocks.a4)),
                      0.5 * (skew_part(blocks.a2) - skew_part(blocks.a3)));
}

ComplexDense nearest_structured_skew(const StructuredBlocks& blocks) {
  blocks.validate();
  return ComplexDense(0.5 * (skew_part(blocks.a1) + skew_part(blocks.a4)),
                      0.5 * (sym_part(blocks.a2) - sym_part(blocks.a3)));
}

double complex_objective(const ComplexDense& a, const ComplexDense& x, const ComplexDense& b) {
  const Matrix re = a.re * x.re - a.im * x.im - b.re;
  const Matrix im = a.re * x.im + a.im * x.re - b.im;
  return std::sqrt(re.squaredNorm() + im.squaredNorm());
}

ComplexSolution solve_complex(const ComplexDense& x, const ComplexDense& b,
                              const SolveOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  require_same_shape(x, b);
  require_finite(x.re, "X (real part)");
  require_finite(x.im, "X (imaginary part)");
  require_finite(b.re, "B (real part)");
  require_finite(b.im, "B (imaginary part)");
  if (x.rows() < x.cols()) {
    fail(ErrorCode::unsupported_shape,
         "complex solve needs at least as many rows as columns, X is " + shape_string(x.re));
  }
  const Matrix rx = embed(x);
  const Matrix rb = embed(b);
  const Eigen::Index m = x.cols();

  SolveOptions real_opts = opts;
  if (opts.init == InitStrategy::user && opts.initial.rows() == x.rows()) {
    // A real n x n start is taken as the real part of a complex one.
    real_opts.initial = embed(ComplexDense::from_real(opts.initial));
  }
  // Unstructured real problem: exact for full column rank, a lower bound otherwise.
  const Solution relaxed = solve(rx, rb, real_opts);
  const Eigen::Index rank = static_cast<Eigen::Index>(relaxed.diagnostics.at("rank"));

  ComplexSolution out;
  if (rank == 2 * m) {
    const StructuredBlocks blk = StructuredBlocks::split(relaxed.a);
    out.a = nearest_r_structure(blk);
    out.meta = relaxed;
    out.meta.diagnostics["symmetry_residual_a1_a4"] = (blk.a1 - blk.a4).norm();
    out.meta.diagnostics["symmetry_residual_a2_a3"] = (blk.a2 + blk.a3).norm();
    out.meta.objective = complex_objective(out.a, x, b);
    out.meta.infimum_value = relaxed.infimum_value / std::sqrt(2.0);
  } else {
    out.full_column_rank = false;
    const QuadraticModel model = QuadraticModel::from_data(rx, rb);
    const Matrix a0 = init_scaled_identity(rx, rb);
    const Projector project = [](const Matrix& a) { return project_structured_nspsd(a); };
    const FgmResult res = accelerated_projected_gradient(model, a0, project, opts);
    out.a = nearest_r_structure(StructuredBlocks::split(res.a));
    out.meta.attained = Attainment::bounded;
    out.meta.infimum_attained = false;
    out.meta.iterations = res.trace.iterations;
    out.meta.objective = complex_objective(out.a, x, b);
    out.upper_bound = out.meta.objective;
    out.lower_bound = relaxed.objective / std::sqrt(2.0);
    out.meta.infimum_value = *out.lower_bound;
    out.meta.diagnostics["restarts"] = static_cast<double>(res.trace.restarts);
    out.meta.diagnostics["converged"] = res.trace.converged ? 1.0 : 0.0;
  }
  out.meta.a = embed(out.a);
  out.meta.diagnostics["rank"] = static_cast<double>(rank / 2);
  out.meta.diagnostics["runtime_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace nspsd
