#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "sylvester/outer_methods.hpp"
#include "sylvester/problem_suite.hpp"
#include "test_util.hpp"

namespace sylv {
namespace {

using testing::random_matrix;
using testing::random_positive_definite;
using testing::relative_difference;

OuterOptions exact_options(double tol = 1e-10, std::size_t maxit = 500) {
  OuterOptions o;
  o.outer_tol = tol;
  o.maxit = maxit;
  o.inner_mode = InnerMode::kExact;
  return o;
}

TEST(Mrhss, ZeroRhsConvergesImmediately) {
  const SylvesterProblem p(DenseMatrix::identity(3), DenseMatrix::identity(2), DenseMatrix(3, 2));
  const SolveResult res = mrhss_solve(p, 1.0);
  EXPECT_TRUE(res.report.converged);
  EXPECT_EQ(res.report.iterations, 0u);
  EXPECT_EQ(res.x, DenseMatrix(3, 2));
  EXPECT_EQ(res.report.residual_history.size(), 1u);
}

TEST(Mrhss, ScalarProblemSolvesInOneStep) {
  const SylvesterProblem p(DenseMatrix(1, 1, 2.0), DenseMatrix(1, 1, 3.0), DenseMatrix(1, 1, 10.0));
  const SolveResult res = mrhss_solve(p, 1.0, exact_options());
  EXPECT_TRUE(res.report.converged);
  EXPECT_EQ(res.report.iterations, 1u);
  EXPECT_NEAR(res.x(0, 0), 2.0, 1e-14);

  const VecReferenceResult ref = mrhss_vec_reference(p.a(), p.b(), p.c(), 2.0, 1e-10, 10);
  ASSERT_EQ(ref.betas.size(), 1u);
  EXPECT_NEAR(ref.betas[0], 7.0 / 5.0, 1e-15);
  EXPECT_EQ(ref.gammas[0], 0.0);
  EXPECT_NEAR(ref.x[0], 2.0, 1e-14);
}

TEST(Mrhss, MatrixFormMatchesVecReference) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const std::size_t m = 3 + trial % 3;
    const SylvesterProblem p(random_positive_definite(rng, n), random_positive_definite(rng, m),
                             random_matrix(rng, n, m));
    const double alpha = 0.6;
    std::vector<double> betas, gammas;
    OuterOptions o = exact_options(0.0, 15);
    o.on_mrhss_step = [&](std::size_t, const MrhssState& s) {
      betas.push_back(s.beta);
      gammas.push_back(s.gamma);
    };
    const SolveResult res = mrhss_solve(p, alpha, o);
    const VecReferenceResult ref = mrhss_vec_reference(p.a(), p.b(), p.c(), 2 * alpha, 0.0, 15);
    ASSERT_EQ(res.report.residual_history.size(), ref.residual_history.size());
    const double r0 = ref.residual_history[0];
    for (std::size_t k = 0; k < ref.residual_history.size(); ++k) {
      // Both sides decay towards roundoff; compare relative to the initial residual.
      EXPECT_NEAR(res.report.residual_history[k], ref.residual_history[k], 1e-10 * r0) << "k=" << k;
    }
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_NEAR(betas[k], ref.betas[k], 1e-10 * std::abs(ref.betas[k]));
      EXPECT_NEAR(gammas[k], ref.gammas[k], 1e-10 * std::max(1.0, std::abs(ref.gammas[k])));
    }
  }
}

TEST(Mrhss, HalfStepsMinimizeTheirNorms) {
  const SylvesterProblem p = gen_example2(16);
  const double alpha = select_alpha(p.a(), p.b());
  const SplittingBundle bundle = build_splitting(p.a(), p.b(), alpha);
  const ExactSubproblemSolver exact(bundle);
  DenseMatrix prev_r = p.c();
  OuterOptions o = exact_options(1e-10, 200);
  std::size_t checked = 0;
  o.on_mrhss_step = [&](std::size_t, const MrhssState& s) {
    EXPECT_LE(frobenius_norm(s.r_half), frobenius_norm(prev_r) * (1 + 1e-12));
    const double m_half = frobenius_norm(exact.solve_hermitian(s.r_half).solution);
    const double m_next = frobenius_norm(exact.solve_hermitian(s.r).solution);
    EXPECT_LE(m_next, m_half * (1 + 1e-12));
    prev_r = s.r;
    ++checked;
  };
  const SolveResult res = mrhss_solve(p, exact, o);
  EXPECT_TRUE(res.report.converged);
  EXPECT_GT(checked, 2u);
}

TEST(Mrhss, RecurrencesMatchDirectEvaluation) {
  const SylvesterProblem p = gen_example1(8, 8);
  const double alpha = select_alpha(p.a(), p.b());
  const SplittingBundle bundle = build_splitting(p.a(), p.b(), alpha);
  const ExactSubproblemSolver exact(bundle);
  OuterOptions o = exact_options(1e-10, 200);
  o.on_mrhss_step = [&](std::size_t, const MrhssState& s) {
    const double scale = frobenius_norm(p.c());
    EXPECT_LE(frobenius_norm(s.r - residual(p, s.x)), 1e-10 * scale);
    EXPECT_LE(frobenius_norm(s.r_half - residual(p, s.x_half)), 1e-10 * scale);
    // Delta^(k+1) solves the Hermitian-shifted equation with R^(k+1).
    const DenseMatrix lhs = bundle.apply_hermitian_shifted(s.delta);
    EXPECT_LE(frobenius_norm(lhs - s.r), 1e-10 * scale);
  };
  EXPECT_TRUE(mrhss_solve(p, exact, o).report.converged);
}

TEST(Mrhss, InexactSolveReachesTolerance) {
  const SylvesterProblem p = gen_example1(16, 16);
  OuterOptions o;
  o.outer_tol = 1e-8;
  const SolveResult res = mrhss_solve(p, select_alpha(p.a(), p.b()), o);
  EXPECT_TRUE(res.report.converged);
  EXPECT_LE(res.report.final_residual, 1e-8 * frobenius_norm(p.c()));
  EXPECT_LT(relative_difference(res.x, DenseMatrix::ones(16, 16)), 1e-6);
  EXPECT_GT(res.report.inner_iteration_total, 0u);
}

TEST(Mrhss, MaxitReportsNotConverged) {
  const SylvesterProblem p = gen_example1(16, 16);
  OuterOptions o;
  o.maxit = 2;
  const SolveResult res = mrhss_solve(p, 1.0, o);
  EXPECT_FALSE(res.report.converged);
  EXPECT_EQ(res.report.status, SolveStatus::kMaxIterations);
  EXPECT_EQ(res.report.iterations, 2u);
  EXPECT_EQ(res.report.residual_history.size(), 3u);
}

TEST(Mrhss, InitialGuessShapeChecked) {
  const SylvesterProblem p = gen_example1(4, 4);
  OuterOptions o;
  o.x0 = DenseMatrix(3, 4);
  EXPECT_THROW(mrhss_solve(p, 1.0, o), DimensionError);
  o.x0 = DenseMatrix::ones(4, 4);
  const SolveResult res = mrhss_solve(p, 1.0, o);
  EXPECT_EQ(res.report.iterations, 0u);
}

TEST(Mrhss, InnerBreakdownCarriesStep) {
  const std::vector<double> da{-5, 1};
  const SylvesterProblem p(DenseMatrix::diagonal(da), DenseMatrix::identity(1), DenseMatrix(2, 1, 1.0));
  try {
    (void)mrhss_solve(p, 0.1);
    FAIL() << "expected InnerSolveError";
  } catch (const InnerSolveError& e) {
    EXPECT_EQ(e.step(), 0u);
  }
}

TEST(Hss, ConvergesToKnownSolution) {
  const SylvesterProblem p = gen_example1(8, 8);
  const double alpha = select_alpha(p.a(), p.b());
  const SolveResult exact = hss_solve(p, alpha, exact_options(1e-10, 1000));
  EXPECT_TRUE(exact.report.converged);
  EXPECT_LT(relative_difference(exact.x, DenseMatrix::ones(8, 8)), 1e-8);
  const SolveResult inexact = hss_solve(p, alpha);
  EXPECT_TRUE(inexact.report.converged);
  EXPECT_LE(inexact.report.final_residual, 1e-8 * frobenius_norm(p.c()));
}

TEST(Hss, ExactResidualDropsBelowTolerance) {
  // Exact solves: the iteration matrix has spectral radius below one.
  const SylvesterProblem p = gen_example1(8, 8);
  const SolveResult res = hss_solve(p, select_alpha(p.a(), p.b()), exact_options(1e-10, 1000));
  EXPECT_LT(res.report.residual_history.back(), 1e-10 * res.report.residual_history.front());
}

TEST(Hss, ZeroRhs) {
  const SylvesterProblem p(DenseMatrix::identity(2), DenseMatrix::identity(2), DenseMatrix(2, 2));
  EXPECT_EQ(hss_solve(p, 1.0).report.iterations, 0u);
}

TEST(Bicgstab, IdentityCoefficientsHalveRhs) {
  std::mt19937_64 rng(22);
  const DenseMatrix c = random_matrix(rng, 3, 4);
  const SylvesterProblem p(DenseMatrix::identity(3), DenseMatrix::identity(4), c);
  const SolveResult res = bicgstab_solve(p, nullptr, 1e-12, 10);
  EXPECT_TRUE(res.report.converged);
  EXPECT_EQ(res.report.iterations, 1u);
  EXPECT_LT(relative_difference(res.x, 0.5 * c), 1e-14);
}

TEST(Bicgstab, UnpreconditionedAndPreconditionedConverge) {
  const SylvesterProblem p = gen_example2(16);
  const double alpha = select_alpha(p.a(), p.b());
  const SolveResult plain = bicgstab_solve(p, nullptr, 1e-8, 2000);
  EXPECT_TRUE(plain.report.converged);
  for (SplittingKind kind : {SplittingKind::kHss, SplittingKind::kMrhss}) {
    const Preconditioner pc = splitting_preconditioner(kind, p, alpha);
    const SolveResult res = bicgstab_solve(p, &pc, 1e-8, 2000);
    EXPECT_TRUE(res.report.converged);
    EXPECT_LE(res.report.final_residual, 1e-8 * frobenius_norm(p.c()));
    EXPECT_LE(res.report.iterations, plain.report.iterations);
    EXPECT_GT(res.report.inner_iteration_total, 0u);
  }
}

TEST(Preconditioner, ZeroInputGivesZero) {
  const SylvesterProblem p = gen_example1(4, 4);
  const Preconditioner pc = splitting_preconditioner(SplittingKind::kMrhss, p, 1.0);
  EXPECT_EQ(pc.apply(DenseMatrix(4, 4)), DenseMatrix(4, 4));
}

TEST(Preconditioner, TightToleranceApproachesInverse) {
  std::mt19937_64 rng(23);
  const SylvesterProblem p = gen_example1(6, 5);
  const DenseMatrix r = random_matrix(rng, 6, 5);
  const DenseMatrix expected = direct_kron_solve(p.a(), p.b(), r);
  PreconditionerOptions o;
  o.eps = 1e-12;
  o.max_sweeps = 500;
  o.inner_mode = InnerMode::kExact;
  for (SplittingKind kind : {SplittingKind::kHss, SplittingKind::kMrhss}) {
    const Preconditioner pc = splitting_preconditioner(kind, p, select_alpha(p.a(), p.b()), o);
    EXPECT_LT(relative_difference(pc.apply(r), expected), 1e-10);
  }
}

TEST(Preconditioner, OneSweepOnExampleOneRhs) {
  const SylvesterProblem p = gen_example1(8, 8);
  PreconditionerOptions o;
  o.max_sweeps = 1;
  const Preconditioner pc = splitting_preconditioner(SplittingKind::kMrhss, p, select_alpha(p.a(), p.b()), o);
  const DenseMatrix z = pc.apply(p.c());
  EXPECT_LT(frobenius_norm(residual(p, z)), frobenius_norm(p.c()));
}

TEST(Preconditioner, OneSweepReducesResidual) {
  std::mt19937_64 rng(24);
  const SylvesterProblem p = gen_example2(8);
  const DenseMatrix r = random_matrix(rng, 8, 8);
  PreconditionerOptions o;
  o.max_sweeps = 1;
  for (SplittingKind kind : {SplittingKind::kHss, SplittingKind::kMrhss}) {
    const Preconditioner pc = splitting_preconditioner(kind, p, select_alpha(p.a(), p.b()), o);
    const DenseMatrix z = pc.apply(r);
    EXPECT_LT(frobenius_norm(r - apply_sylvester(p.a(), p.b(), z)), frobenius_norm(r));
  }
}

TEST(Pipeline, SparseExternalMatrixEndToEnd) {
  // A small nonsymmetric sparse matrix with a positive definite symmetric part,
  // written in coordinate format and loaded as an external problem.
  const std::size_t n = 40;
  const auto path = std::filesystem::temp_directory_path() / "sylv_pipeline_test.mtx";
  {
    std::ofstream out(path);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << n << ' ' << n << ' ' << (3 * n - 2) << '\n';
    for (std::size_t i = 1; i <= n; ++i) {
      out << i << ' ' << i << " 6\n";
      if (i > 1) out << i << ' ' << i - 1 << " -2\n";
      if (i < n) out << i << ' ' << i + 1 << " -1\n";
    }
  }
  ProblemSpec spec;
  spec.family = ProblemFamily::kExternal;
  spec.path = path;
  const SylvesterProblem p = make_problem(spec);
  EXPECT_TRUE(p.a().is_sparse());
  EXPECT_EQ(p.n(), n);
  EXPECT_EQ(p.m(), kExample3BlockSize);
  const double alpha = select_alpha(p.a(), p.b());
  const SolveResult mr = mrhss_solve(p, alpha);
  const SolveResult hs = hss_solve(p, alpha);
  EXPECT_TRUE(mr.report.converged);
  EXPECT_TRUE(hs.report.converged);
  EXPECT_LT(relative_difference(mr.x, DenseMatrix::ones(n, kExample3BlockSize)), 1e-6);
  std::filesystem::remove(path);
}

TEST(VecReference, Errors) {
  EXPECT_THROW(mrhss_vec_reference(DenseMatrix::identity(2), DenseMatrix::identity(2), DenseMatrix(2, 2), 0.0,
                                   1e-8, 10),
               std::invalid_argument);
  EXPECT_THROW(mrhss_vec_reference(DenseMatrix::identity(40), DenseMatrix::identity(40), DenseMatrix(40, 40), 1.0,
                                   1e-8, 10),
               DimensionError);
}

}  // namespace
}  // namespace sylv
