#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "sylvester/dense_matrix.hpp"
#include "sylvester/matrix.hpp"

namespace sylv {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Products and inner products. Every kernel uses a fixed row-major loop nest,
// so results are bit-reproducible for fixed inputs.
// ---------------------------------------------------------------------------

/// A * B
DenseMatrix gemm(const DenseMatrix& a, const DenseMatrix& b);
/// A * X with A dense or sparse.
DenseMatrix gemm(const Matrix& a, const DenseMatrix& x);
/// X * B with B dense or sparse.
DenseMatrix gemm(const DenseMatrix& x, const Matrix& b);

double frobenius_inner(const DenseMatrix& a, const DenseMatrix& b);
double frobenius_norm(const DenseMatrix& a);

struct HermitianSkewParts {
  Matrix hermitian;
  Matrix skew;
};

/// H = (A + A^T)/2, S = (A - A^T)/2. Sparse input stays sparse.
HermitianSkewParts hermitian_skew_split(const Matrix& a);

struct EigenRange {
  double min;
  double max;
};

/// Largest |H - H^T| entry.
double symmetry_defect(const Matrix& h);

/// Extreme eigenvalues of a symmetric matrix.
///
/// n <= 64 uses a dense cyclic Jacobi eigensolve. Larger matrices use
/// Lanczos with full reorthogonalization (at most 50 steps per cycle),
/// explicitly restarted from the current extreme Ritz vector until the
/// Ritz residual falls below tol * max(|theta|, 1).
EigenRange extreme_eigs_sym(const Matrix& h, double tol = 1e-8, std::uint64_t seed = 0x5eedULL);

/// Size threshold below which extreme_eigs_sym is an exact dense solve.
inline constexpr std::size_t kDenseEigenThreshold = 64;

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column j pairs with values[j]
};

/// Full eigendecomposition by cyclic Jacobi rotations (small matrices).
SymmetricEigen jacobi_eigen(const DenseMatrix& h, double tol = 1e-14, int max_sweeps = 100);

/// Entry budget for materialized Kronecker products.
inline constexpr std::size_t kKronEntryBudget = 1'000'000;

/// A (x) B = [a_ij B]. Oracle scale only.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// Column-stacking: (x11, x21, ..., xn1, x12, ...).
std::vector<double> vec(const DenseMatrix& x);
DenseMatrix unvec(std::span<const double> x, std::size_t rows, std::size_t cols);

/// Dense matrix-vector product.
std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x);

}  // namespace sylv
