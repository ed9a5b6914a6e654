#include "core/complex_bridge.hpp"
#include "core/datagen.hpp"
#include "core/error.hpp"
#include "core/projections.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

using namespace nspsd;
using testing_support::Rng;
using Cx = Eigen::MatrixXcd;
using cd = std::complex<double>;

namespace {

ComplexDense random_complex(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  return ComplexDense(rng.gaussian(rows, cols), rng.gaussian(rows, cols));
}

Cx random_hermitian_psd(Rng& rng, Eigen::Index n, Eigen::Index rank) {
  const Cx g = random_complex(rng, n, rank).to_eigen();
  return g * g.adjoint();
}

Cx random_skew_hermitian(Rng& rng, Eigen::Index n) {
  const Cx g = random_complex(rng, n, n).to_eigen();
  return 0.5 * (g - g.adjoint());
}

double min_hermitian_eigenvalue(const Cx& a) {
  return Eigen::SelfAdjointEigenSolver<Cx>(0.5 * (a + a.adjoint())).eigenvalues().minCoeff();
}

StructuredBlocks random_blocks(Rng& rng, Eigen::Index n) {
  return StructuredBlocks::split(rng.gaussian(2 * n, 2 * n));
}

// Descent over P = L L^* + S with L lower triangular and S skew-Hermitian on
// ||M - R(P)||_F^2, for 2n x 2n M. Returns the best distance found.
double brute_force_structured_distance(const Matrix& m, Eigen::Index n, Rng& rng) {
  const StructuredBlocks blk = StructuredBlocks::split(m);
  auto distance = [&](const Cx& p) {
    const Matrix pr = p.real(), pi = p.imag();
    return std::sqrt((pr - blk.a1).squaredNorm() + (pi - blk.a2).squaredNorm() +
                     (-pi - blk.a3).squaredNorm() + (pr - blk.a4).squaredNorm());
  };
  double best = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < 4; ++restart) {
    Cx l = random_complex(rng, n, n).to_eigen().triangularView<Eigen::Lower>();
    Cx s = random_skew_hermitian(rng, n);
    double step = 0.05;
    for (int it = 0; it < 40000; ++it) {
      const Cx p = l * l.adjoint() + s;
      const Matrix pr = p.real(), pi = p.imag();
      const Matrix gr = 2.0 * ((pr - blk.a1) + (pr - blk.a4));
      const Matrix gi = 2.0 * ((pi - blk.a2) + (pi + blk.a3));
      Cx g(n, n);
      g.real() = gr;
      g.imag() = gi;
      const Cx grad_l = ((g + g.adjoint()) * l).triangularView<Eigen::Lower>();
      const Cx grad_s = 0.5 * (g - g.adjoint());
      const double f = distance(p);
      Cx l_new = l - step * grad_l;
      Cx s_new = s - step * grad_s;
      if (distance(l_new * l_new.adjoint() + s_new) <= f) {
        l = l_new;
        s = s_new;
        step *= 1.05;
      } else {
        step *= 0.5;
      }
    }
    best = std::min(best, distance(l * l.adjoint() + s));
  }
  return best;
}

}  // namespace

TEST(Embed, ImaginaryUnit) {
  const ComplexDense z(Matrix::Zero(1, 1), Matrix::Ones(1, 1));
  Matrix expected(2, 2);
  expected << 0, 1, -1, 0;
  EXPECT_EQ(embed(z), expected);
}

TEST(Embed, RealInputIsBlockDiagonal) {
  Rng rng(71);
  const Matrix r = rng.gaussian(3, 2);
  const Matrix e = embed(ComplexDense::from_real(r));
  EXPECT_EQ(e.topLeftCorner(3, 2), r);
  EXPECT_EQ(e.bottomRightCorner(3, 2), r);
  EXPECT_EQ(e.topRightCorner(3, 2).norm(), 0.0);
  EXPECT_EQ(e.bottomLeftCorner(3, 2).norm(), 0.0);
}

TEST(Embed, IsMultiplicative) {
  Rng rng(72);
  for (int draw = 0; draw < 20; ++draw) {
    const int n = rng.integer(1, 6), k = rng.integer(1, 6), m = rng.integer(1, 6);
    const ComplexDense z = random_complex(rng, n, k);
    const ComplexDense w = random_complex(rng, k, m);
    const ComplexDense zw = ComplexDense::from_eigen(z.to_eigen() * w.to_eigen());
    EXPECT_LT((embed(z) * embed(w) - embed(zw)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Embed, DoublesSquaredNorm) {
  Rng rng(73);
  for (int draw = 0; draw < 20; ++draw) {
    const ComplexDense z = random_complex(rng, rng.integer(1, 7), rng.integer(1, 7));
    EXPECT_NEAR(embed(z).norm(), std::sqrt(2.0) * z.frobenius_norm(), 1e-12 * z.frobenius_norm());
  }
}

TEST(Embed, UnitaryBlockDiagonalisation) {
  Rng rng(74);
  for (int n = 1; n <= 5; ++n) {
    const Cx a = random_complex(rng, n, n).to_eigen();
    const Cx i_n = Cx::Identity(n, n);
    Cx u(2 * n, 2 * n);
    u << i_n, cd(0, 1) * i_n, cd(0, 1) * i_n, i_n;
    u /= std::sqrt(2.0);
    EXPECT_LT((u.adjoint() * u - Cx::Identity(2 * n, 2 * n)).norm(), 1e-12);
    const Cx r = embed(ComplexDense::from_eigen(a)).cast<cd>();
    Cx expected = Cx::Zero(2 * n, 2 * n);
    expected.topLeftCorner(n, n) = a;
    expected.bottomRightCorner(n, n) = a.conjugate();
    EXPECT_LT((u.adjoint() * r * u - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Embed, PsdMembershipIsPreserved) {
  Rng rng(75);
  for (int draw = 0; draw < 50; ++draw) {
    const int n = rng.integer(1, 5);
    const bool psd_case = draw % 2 == 0;
    Cx h = random_hermitian_psd(rng, n, rng.integer(1, n));
    if (!psd_case) h -= rng.uniform(0.1, 3.0) * Cx::Identity(n, n) * (1.0 + h.norm());
    const bool complex_psd = min_hermitian_eigenvalue(h) >= -1e-10;
    const Matrix r = embed(ComplexDense::from_eigen(h));
    const bool real_psd =
        Eigen::SelfAdjointEigenSolver<Matrix>(r).eigenvalues().minCoeff() >= -1e-10;
    EXPECT_EQ(complex_psd, psd_case);
    EXPECT_EQ(real_psd, complex_psd);
    EXPECT_LT((r - r.transpose()).norm(), 1e-12);
  }
}

TEST(Embed, NhpsdMembershipIsPreserved) {
  Rng rng(76);
  for (int draw = 0; draw < 50; ++draw) {
    const int n = rng.integer(1, 5);
    Cx a = random_hermitian_psd(rng, n, rng.integer(1, n)) + random_skew_hermitian(rng, n);
    if (draw % 2 == 1) a -= rng.uniform(0.5, 2.0) * (1.0 + a.norm()) * Cx::Identity(n, n);
    const ComplexDense z = ComplexDense::from_eigen(a);
    const bool complex_member = min_hermitian_eigenvalue(a) >= -1e-10 * (1 + a.norm());
    EXPECT_EQ(complex_member, draw % 2 == 0);
    EXPECT_EQ(is_nspsd(embed(z)).is_member, complex_member);
    EXPECT_EQ(nhpsd_check(z).is_member, complex_member);
  }
}

TEST(NhpsdCheck, Examples) {
  Rng rng(77);
  const ComplexDense skew = ComplexDense::from_eigen(random_skew_hermitian(rng, 3));
  const ComplexDense a(Matrix::Identity(3, 3) + skew.re, skew.im);
  EXPECT_TRUE(nhpsd_check(a).is_member);
  EXPECT_FALSE(nhpsd_check(ComplexDense::from_real(-Matrix::Identity(3, 3))).is_member);
  EXPECT_THROW(nhpsd_check(ComplexDense(Matrix::Zero(2, 3), Matrix::Zero(2, 3))), Error);
}

TEST(ComplexPsdProject, MatchesComplexEigenClip) {
  Rng rng(78);
  for (int draw = 0; draw < 20; ++draw) {
    const int n = rng.integer(1, 5);
    const Cx a = random_complex(rng, n, n).to_eigen();
    const Cx h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Cx> eig(h);
    const Cx expected = eig.eigenvectors() *
                        eig.eigenvalues().cwiseMax(0.0).cast<cd>().asDiagonal() *
                        eig.eigenvectors().adjoint();
    const Cx got = complex_psd_project(ComplexDense::from_eigen(a)).to_eigen();
    EXPECT_LT((got - expected).norm(), 1e-12 * (1 + a.norm()));
  }
}

TEST(ProjectStructured, StructuredMemberIsFixedPoint) {
  Rng rng(79);
  const Cx a = random_hermitian_psd(rng, 3, 2) + random_skew_hermitian(rng, 3);
  const Matrix r = embed(ComplexDense::from_eigen(a));
  EXPECT_LT((project_structured_nspsd(r) - r).norm(), 1e-12 * r.norm());
}

TEST(ProjectStructured, ReducesToRealClip) {
  StructuredBlocks b;
  b.a1 = Matrix::Zero(2, 2);
  b.a1(0, 0) = -1;
  b.a1(1, 1) = 1;
  b.a4 = b.a1;
  b.a2 = Matrix::Zero(2, 2);
  b.a3 = Matrix::Zero(2, 2);
  const StructuredBlocks p = project_structured_nspsd(b);
  Matrix expected = Matrix::Zero(2, 2);
  expected(1, 1) = 1;
  EXPECT_LT((p.a1 - expected).norm(), 1e-14);
  EXPECT_LT((p.a4 - expected).norm(), 1e-14);
  EXPECT_LT(p.a2.norm(), 1e-14);
  EXPECT_LT(p.a3.norm(), 1e-14);
}

TEST(ProjectStructured, StructureIdempotenceAndMembership) {
  Rng rng(80);
  for (int draw = 0; draw < 30; ++draw) {
    const int n = rng.integer(1, 5);
    const StructuredBlocks p = project_structured_nspsd(random_blocks(rng, n));
    EXPECT_EQ(p.a1, p.a4);
    EXPECT_EQ(p.a2, -p.a3);
    const Matrix once = p.assemble();
    EXPECT_LT((project_structured_nspsd(once) - once).norm(), 1e-10 * (1 + once.norm()));
    EXPECT_TRUE(is_nspsd(once).is_member);
  }
}

TEST(ProjectStructured, NoStructuredMemberIsCloser) {
  Rng rng(81);
  for (int draw = 0; draw < 100; ++draw) {
    const int n = rng.integer(1, 4);
    const Matrix m = rng.gaussian(2 * n, 2 * n);
    const double d = (m - project_structured_nspsd(m)).norm();
    const Cx q = random_hermitian_psd(rng, n, rng.integer(1, n)) + random_skew_hermitian(rng, n);
    EXPECT_LE(d, (m - embed(ComplexDense::from_eigen(q))).norm() + 1e-10);
  }
}

TEST(ProjectStructured, MatchesBruteForceAtTwo) {
  Rng rng(82);
  for (int draw = 0; draw < 5; ++draw) {
    const Matrix m = rng.gaussian(4, 4);
    const double d = (m - project_structured_nspsd(m)).norm();
    const double brute = brute_force_structured_distance(m, 2, rng);
    EXPECT_NEAR(d, brute, 1e-5);
  }
}

TEST(StructuredBlocks, Validation) {
  StructuredBlocks b;
  b.a1 = b.a2 = b.a3 = Matrix::Zero(2, 2);
  b.a4 = Matrix::Zero(3, 3);
  EXPECT_THROW(project_structured_nspsd(b), Error);
  EXPECT_THROW(StructuredBlocks::split(Matrix::Zero(3, 3)), Error);
}

TEST(NearestRStructure, RecoversEmbeddedMatrix) {
  Rng rng(83);
  const ComplexDense z = random_complex(rng, 3, 3);
  const ComplexDense back = nearest_r_structure(StructuredBlocks::split(embed(z)));
  EXPECT_EQ(back.re, z.re);
  EXPECT_EQ(back.im, z.im);
}

TEST(NearestRStructure, EqualOffDiagonalBlocksGiveRealResult) {
  Rng rng(84);
  StructuredBlocks b = random_blocks(rng, 3);
  b.a3 = b.a2;
  EXPECT_EQ(nearest_r_structure(b).im.norm(), 0.0);
}

TEST(NearestRStructure, ResidualIsOrthogonalToStructure) {
  Rng rng(85);
  for (int draw = 0; draw < 30; ++draw) {
    const int n = rng.integer(1, 6);
    const Matrix a = rng.gaussian(2 * n, 2 * n);
    const Matrix resid = a - embed(nearest_r_structure(StructuredBlocks::split(a)));
    const Matrix y = embed(random_complex(rng, n, n));
    EXPECT_LT(std::abs(resid.cwiseProduct(y).sum()), 1e-10);
  }
}

TEST(NearestStructuredParts, Examples) {
  Rng rng(86);
  const Cx h = random_hermitian_psd(rng, 3, 3) - Cx::Identity(3, 3);
  const StructuredBlocks hb = StructuredBlocks::split(embed(ComplexDense::from_eigen(h)));
  EXPECT_LT((nearest_structured_hermitian(hb).to_eigen() - h).norm(), 1e-14);
  const Cx s = random_skew_hermitian(rng, 3);
  const StructuredBlocks sb = StructuredBlocks::split(embed(ComplexDense::from_eigen(s)));
  EXPECT_LT((nearest_structured_skew(sb).to_eigen() - s).norm(), 1e-14);
}

TEST(NearestStructuredParts, HermitianAndSkewSumToNearestR) {
  Rng rng(87);
  for (int draw = 0; draw < 20; ++draw) {
    const StructuredBlocks b = random_blocks(rng, rng.integer(1, 5));
    const Cx herm = nearest_structured_hermitian(b).to_eigen();
    const Cx skew = nearest_structured_skew(b).to_eigen();
    EXPECT_LT((herm - herm.adjoint()).norm(), 1e-14);
    EXPECT_LT((skew + skew.adjoint()).norm(), 1e-14);
    EXPECT_LT((herm + skew - nearest_r_structure(b).to_eigen()).norm(), 1e-12);
  }
}

TEST(SolveComplex, BundledExample) {
  const ComplexInstance inst = complex_example();
  const ComplexSolution sol = solve_complex(inst.x, inst.b);
  EXPECT_TRUE(sol.full_column_rank);
  EXPECT_NEAR(sol.meta.objective, 3.04, 0.02);
  const Cx a = sol.a.to_eigen();
  const Eigen::VectorXd eig =
      Eigen::SelfAdjointEigenSolver<Cx>(a + a.adjoint()).eigenvalues();
  EXPECT_EQ((eig.array() > 1e-4).count(), 1);
  EXPECT_NEAR(eig.maxCoeff(), 3.04, 0.02);
  EXPECT_LT(sol.meta.objective, 4.19);
  EXPECT_NEAR(complex_objective(sol.a, inst.x, inst.b),
              (a * inst.x.to_eigen() - inst.b.to_eigen()).norm(), 1e-12);
  EXPECT_TRUE(nhpsd_check(sol.a).is_member);
}

TEST(SolveComplex, RealInputAgreesWithRealSolver) {
  Rng rng(88);
  const Matrix x = rng.gaussian(4, 3);
  const Matrix b = rng.gaussian(4, 3);
  const ComplexSolution c = solve_complex(ComplexDense::from_real(x), ComplexDense::from_real(b));
  const Solution r = solve(x, b);
  EXPECT_NEAR(c.meta.objective, r.objective, 1e-8);
  EXPECT_LT(c.a.im.norm(), 1e-8);
  EXPECT_LT((c.a.re - r.a).norm(), 1e-6);
}

TEST(SolveComplex, StructuredAndUnstructuredPathsAgreeAtFullRank) {
  Rng rng(89);
  for (int draw = 0; draw < 5; ++draw) {
    const ComplexDense x = random_complex(rng, 4, 3);
    const ComplexDense b = random_complex(rng, 4, 3);
    const ComplexSolution sol = solve_complex(x, b);
    ASSERT_TRUE(sol.full_column_rank);
    const Matrix rx = embed(x), rb = embed(b);
    SolveOptions opts;
    opts.delta = 1e-14;
    opts.max_iterations = 200000;
    const FgmResult structured = accelerated_projected_gradient(
        QuadraticModel::from_data(rx, rb), Matrix::Zero(8, 8),
        [](const Matrix& a) { return project_structured_nspsd(a); }, opts);
    const double structured_obj = (structured.a * rx - rb).norm() / std::sqrt(2.0);
    EXPECT_NEAR(sol.meta.objective, structured_obj, 1e-5);
    EXPECT_LT(sol.meta.diagnostics.at("symmetry_residual_a1_a4"), 1e-5);
    EXPECT_LT(sol.meta.diagnostics.at("symmetry_residual_a2_a3"), 1e-5);
  }
}

TEST(SolveComplex, RankDeficientReportsBounds) {
  Rng rng(90);
  const Cx g = random_complex(rng, 4, 1).to_eigen() * random_complex(rng, 1, 3).to_eigen() +
               random_complex(rng, 4, 1).to_eigen() * random_complex(rng, 1, 3).to_eigen();
  const ComplexDense x = ComplexDense::from_eigen(g);
  const ComplexDense b = random_complex(rng, 4, 3);
  const ComplexSolution sol = solve_complex(x, b);
  EXPECT_FALSE(sol.full_column_rank);
  EXPECT_EQ(sol.meta.attained, Attainment::bounded);
  ASSERT_TRUE(sol.lower_bound && sol.upper_bound);
  EXPECT_LE(*sol.lower_bound, *sol.upper_bound + 1e-9);
  EXPECT_NEAR(*sol.upper_bound, complex_objective(sol.a, x, b), 1e-12);
  EXPECT_TRUE(nhpsd_check(sol.a).is_member);
  EXPECT_EQ(sol.meta.diagnostics.at("rank"), 2.0);
}

TEST(SolveComplex, WideInputRejected) {
  try {
    solve_complex(ComplexDense(Matrix::Ones(2, 3), Matrix::Zero(2, 3)),
                  ComplexDense(Matrix::Ones(2, 3), Matrix::Zero(2, 3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported_shape);
  }
}

TEST(SolveComplex, ShapeMismatchRejected) {
  EXPECT_THROW(solve_complex(ComplexDense::from_real(Matrix::Ones(3, 2)),
                             ComplexDense::from_real(Matrix::Ones(3, 3))),
               Error);
}
