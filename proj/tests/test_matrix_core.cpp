#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sylvester/dense_matrix.hpp"
#include "sylvester/matrix_ops.hpp"
#include "sylvester/problem_suite.hpp"
#include "sylvester/sparse_csr.hpp"
#include "test_util.hpp"

namespace sylv {
namespace {

using testing::random_matrix;

TEST(DenseMatrix, RejectsWrongLengthAndNonFinite) {
  EXPECT_THROW(DenseMatrix(2, 2, std::vector<double>{1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(DenseMatrix(1, 2, std::vector<double>{1, std::nan("")}), std::invalid_argument);
  EXPECT_THROW(DenseMatrix(1, 1, INFINITY), std::invalid_argument);
}

TEST(SparseCsr, RejectsBrokenInvariants) {
  EXPECT_THROW(SparseCsr(2, 2, {0, 1}, {0}, {1.0}), std::invalid_argument);          // row_ptr too short
  EXPECT_THROW(SparseCsr(2, 2, {1, 1, 1}, {0}, {1.0}), std::invalid_argument);       // row_ptr[0] != 0
  EXPECT_THROW(SparseCsr(1, 2, {0, 2}, {1, 0}, {1.0, 2.0}), std::invalid_argument);  // unsorted columns
  EXPECT_THROW(SparseCsr(1, 2, {0, 1}, {2}, {1.0}), std::invalid_argument);          // column out of range
  EXPECT_NO_THROW(SparseCsr(2, 2, {0, 1, 2}, {0, 1}, {1.0, 2.0}));
}

TEST(SparseCsr, TransposeAndLinearCombination) {
  std::mt19937_64 rng(3);
  DenseMatrix d = random_matrix(rng, 5, 4);
  d(1, 2) = 0.0;
  d(3, 0) = 0.0;
  const SparseCsr s = SparseCsr::from_dense(d);
  EXPECT_EQ(s.nnz(), 18u);
  EXPECT_EQ(s.transposed().to_dense(), d.transposed());
  const SparseCsr sum = SparseCsr::linear_combination(2.0, s, -1.0, s);
  EXPECT_EQ(sum.to_dense(), d);
}

TEST(Gemm, IdentityCase) {
  const DenseMatrix x = DenseMatrix::from_rows({{1, 2}, {3, 4}});
  EXPECT_EQ(gemm(DenseMatrix::identity(2), x), x);
}

TEST(Gemm, NilpotentProduct) {
  const DenseMatrix a = DenseMatrix::from_rows({{0, 1}, {0, 0}});
  const DenseMatrix b = DenseMatrix::from_rows({{0, 0}, {1, 0}});
  EXPECT_EQ(gemm(a, b), DenseMatrix::from_rows({{1, 0}, {0, 0}}));
}

TEST(Gemm, TridiagonalTimesOnesByHand) {
  // Row sums of tridiag(-1,2,-1)_3: 2-1, -1+2-1, -1+2.
  const DenseMatrix t = tridiag(3, -1.0, 2.0, -1.0);
  EXPECT_EQ(gemm(t, DenseMatrix::ones(3, 1)), DenseMatrix::from_rows({{1}, {0}, {1}}));
  EXPECT_EQ(gemm(Matrix(SparseCsr::from_dense(t)), DenseMatrix::ones(3, 1)), DenseMatrix::from_rows({{1}, {0}, {1}}));
}

TEST(Gemm, SparseAndDenseRoutesAgree) {
  std::mt19937_64 rng(11);
  const DenseMatrix a = random_matrix(rng, 6, 6);
  const DenseMatrix x = random_matrix(rng, 6, 3);
  const DenseMatrix y = random_matrix(rng, 3, 6);
  const Matrix sparse_a(SparseCsr::from_dense(a));
  EXPECT_LT(testing::relative_difference(gemm(sparse_a, x), gemm(a, x)), 1e-15);
  EXPECT_LT(testing::relative_difference(gemm(y, sparse_a), gemm(y, a)), 1e-15);
}

TEST(Gemm, DimensionMismatchNamesBothShapes) {
  try {
    (void)gemm(DenseMatrix(2, 3), DenseMatrix(4, 5));
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("2x3"), std::string::npos);
    EXPECT_NE(what.find("4x5"), std::string::npos);
  }
}

TEST(Gemm, Deterministic) {
  std::mt19937_64 rng(5);
  const DenseMatrix a = random_matrix(rng, 20, 20);
  const DenseMatrix b = random_matrix(rng, 20, 7);
  EXPECT_EQ(gemm(a, b), gemm(a, b));
}

TEST(Frobenius, Examples) {
  EXPECT_EQ(frobenius_inner(DenseMatrix::identity(2), DenseMatrix::identity(2)), 2.0);
  EXPECT_EQ(frobenius_inner(DenseMatrix::from_rows({{1, 2}, {3, 4}}), DenseMatrix::identity(2)), 5.0);
  EXPECT_EQ(frobenius_norm(DenseMatrix::from_rows({{3, 4}, {0, 0}})), 5.0);
  EXPECT_THROW((void)frobenius_inner(DenseMatrix(2, 2), DenseMatrix(2, 3)), DimensionError);
}

TEST(HermitianSkewSplit, Examples) {
  const auto parts = hermitian_skew_split(DenseMatrix::from_rows({{0, 1}, {0, 0}}));
  EXPECT_EQ(parts.hermitian.to_dense(), DenseMatrix::from_rows({{0, 0.5}, {0.5, 0}}));
  EXPECT_EQ(parts.skew.to_dense(), DenseMatrix::from_rows({{0, 0.5}, {-0.5, 0}}));

  const auto sym = hermitian_skew_split(tridiag(4, -1.0, 2.0, -1.0));
  EXPECT_EQ(sym.skew.to_dense(), DenseMatrix(4, 4));

  EXPECT_THROW(hermitian_skew_split(DenseMatrix(2, 3)), DimensionError);
}

TEST(HermitianSkewSplit, ExampleOnePiecesSeparate) {
  const double r = 0.01;
  const DenseMatrix m = tridiag(8, -1.0, 2.0, -1.0);
  const DenseMatrix n = tridiag(8, 0.5, 0.0, -0.5);
  const auto parts = hermitian_skew_split(m + (2.0 * r) * n);
  const DenseMatrix h = parts.hermitian.to_dense();
  const DenseMatrix s = parts.skew.to_dense();
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      EXPECT_NEAR(h(i, j), m(i, j), 1e-15);
      EXPECT_NEAR(s(i, j), 2.0 * r * n(i, j), 1e-15);
    }
  }
}

TEST(HermitianSkewSplit, PropertyOnRandomDenseAndSparse) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 9;
    const DenseMatrix a = random_matrix(rng, n, n);
    for (const Matrix& input : {Matrix(a), Matrix(SparseCsr::from_dense(a))}) {
      const auto [hm, sm] = hermitian_skew_split(input);
      const DenseMatrix h = hm.to_dense();
      const DenseMatrix s = sm.to_dense();
      EXPECT_EQ(frobenius_norm(h - h.transposed()), 0.0);
      EXPECT_EQ(frobenius_norm(s + s.transposed()), 0.0);
      EXPECT_LE(frobenius_norm((h + s) - a), 1e-15 * frobenius_norm(a));
    }
  }
}

TEST(ExtremeEigs, Examples) {
  const std::vector<double> d{1, 2, 3};
  const EigenRange diag = extreme_eigs_sym(DenseMatrix::diagonal(d));
  EXPECT_NEAR(diag.min, 1.0, 1e-14);
  EXPECT_NEAR(diag.max, 3.0, 1e-14);
  const EigenRange id = extreme_eigs_sym(DenseMatrix::identity(5));
  EXPECT_EQ(id.min, 1.0);
  EXPECT_EQ(id.max, 1.0);
}

double tridiag_eig(std::size_t n, std::size_t k) {
  return 2.0 - 2.0 * std::cos(static_cast<double>(k) * std::numbers::pi / static_cast<double>(n + 1));
}

TEST(ExtremeEigs, TridiagonalClosedFormDense) {
  // The closed form is checked against the full Jacobi spectrum at n = 8.
  const DenseMatrix t = tridiag(8, -1.0, 2.0, -1.0);
  const SymmetricEigen full = jacobi_eigen(t);
  for (std::size_t k = 1; k <= 8; ++k) EXPECT_NEAR(full.values[k - 1], tridiag_eig(8, k), 1e-13);
  const EigenRange e = extreme_eigs_sym(t);
  EXPECT_NEAR(e.min, tridiag_eig(8, 1), 1e-13);
  EXPECT_NEAR(e.max, tridiag_eig(8, 8), 1e-13);
}

TEST(ExtremeEigs, LanczosOnLargeTridiagonal) {
  for (std::size_t n : {100u, 300u}) {
    const DenseMatrix t = tridiag(n, -1.0, 2.0, -1.0);
    const EigenRange dense = extreme_eigs_sym(t, 1e-8);
    const EigenRange sparse = extreme_eigs_sym(Matrix(SparseCsr::from_dense(t)), 1e-8);
    for (const EigenRange& e : {dense, sparse}) {
      EXPECT_NEAR(e.min, tridiag_eig(n, 1), 1e-8 * tridiag_eig(n, 1) * 10) << n;
      EXPECT_NEAR(e.max, tridiag_eig(n, n), 1e-8 * tridiag_eig(n, n)) << n;
    }
  }
}

TEST(ExtremeEigs, LanczosHandlesInvariantStart) {
  const EigenRange e = extreme_eigs_sym(DenseMatrix::identity(80));
  EXPECT_NEAR(e.min, 1.0, 1e-12);
  EXPECT_NEAR(e.max, 1.0, 1e-12);
}

TEST(ExtremeEigs, RejectsNonSymmetric) {
  EXPECT_THROW(extreme_eigs_sym(DenseMatrix::from_rows({{1, 1e-6}, {0, 1}})), std::invalid_argument);
  EXPECT_THROW(extreme_eigs_sym(DenseMatrix(2, 3)), DimensionError);
}

TEST(ExtremeEigs, RayleighQuotientsBracketed) {
  std::mt19937_64 rng(99);
  for (std::size_t n : {12u, 90u}) {
    const DenseMatrix g = random_matrix(rng, n, n);
    const DenseMatrix h = 0.5 * (g + g.transposed());
    const double tol = 1e-8;
    const EigenRange e = extreme_eigs_sym(h, tol);
    const double slack = 1e-6 * std::max(std::abs(e.min), std::abs(e.max));
    for (int trial = 0; trial < 100; ++trial) {
      const DenseMatrix x = random_matrix(rng, n, 1);
      const double rq = frobenius_inner(x, gemm(h, x)) / frobenius_inner(x, x);
      EXPECT_GE(rq, e.min - slack);
      EXPECT_LE(rq, e.max + slack);
    }
  }
}

TEST(Kron, Examples) {
  EXPECT_EQ(kron(DenseMatrix::identity(2), DenseMatrix::identity(2)), DenseMatrix::identity(4));
  EXPECT_EQ(kron(DenseMatrix::from_rows({{1, 2}}), DenseMatrix::from_rows({{3}, {4}})),
            DenseMatrix::from_rows({{3, 6}, {4, 8}}));
}

TEST(Kron, BudgetExceeded) {
  try {
    (void)kron(DenseMatrix(40, 40), DenseMatrix(40, 40));
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    EXPECT_NE(std::string(e.what()).find("oracle-scale only"), std::string::npos);
  }
}

TEST(Kron, SylvesterVecIdentityBruteForce) {
  std::mt19937_64 rng(8);
  const DenseMatrix a = random_matrix(rng, 3, 3);
  const DenseMatrix b = random_matrix(rng, 2, 2);
  const DenseMatrix x = random_matrix(rng, 3, 2);
  const DenseMatrix big = kron(DenseMatrix::identity(2), a) + kron(b.transposed(), DenseMatrix::identity(3));
  const std::vector<double> lhs = matvec(big, vec(x));
  const std::vector<double> rhs = vec(gemm(a, x) + gemm(x, b));
  EXPECT_LT(testing::relative_difference(lhs, rhs), 1e-14);
}

TEST(Kron, VecOfTripleProductProperty) {
  std::mt19937_64 rng(13);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t m = 1; m <= 6; ++m) {
      const DenseMatrix a = random_matrix(rng, n, n);
      const DenseMatrix b = random_matrix(rng, m, m);
      const DenseMatrix x = random_matrix(rng, n, m);
      const std::vector<double> lhs = vec(gemm(gemm(a, x), b.transposed()));
      const std::vector<double> rhs = matvec(kron(b, a), vec(x));
      EXPECT_LT(testing::relative_difference(lhs, rhs), 1e-13) << n << "x" << m;
    }
  }
}

TEST(Vec, ColumnStackingOrder) {
  EXPECT_EQ(vec(DenseMatrix::from_rows({{1, 3}, {2, 4}})), (std::vector<double>{1, 2, 3, 4}));
  EXPECT_EQ(vec(DenseMatrix(2, 2)), (std::vector<double>{0, 0, 0, 0}));
  EXPECT_THROW(unvec(std::vector<double>{1, 2, 3}, 2, 2), DimensionError);
}

TEST(Vec, RoundTripAndNormEquivalence) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix x = random_matrix(rng, 4, 3);
    EXPECT_EQ(unvec(vec(x), 4, 3), x);
    const std::vector<double> v = vec(x);
    double s = 0.0;
    for (double e : v) s += e * e;
    EXPECT_NEAR(std::sqrt(s), frobenius_norm(x), 1e-15 * frobenius_norm(x));
  }
}

}  // namespace
}  // namespace sylv
