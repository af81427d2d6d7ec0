#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "sylvester/dense_matrix.hpp"
#include "sylvester/matrix.hpp"
#include "sylvester/sylvester_operator.hpp"

namespace sylv {

/// A recurrence scalar hit zero (or lost positivity) where the method needs it nonzero.
class BreakdownError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InnerStats {
  std::size_t iterations = 0;
  double final_relative_residual = 0.0;
  bool converged = false;
};

struct InnerResult {
  DenseMatrix solution;
  InnerStats stats;
};

inline constexpr double kDefaultInnerTol = 1e-3;
inline constexpr std::size_t kDefaultCgMaxit = 500;
inline constexpr std::size_t kDefaultGmresRestart = 30;
inline constexpr std::size_t kDefaultGmresCycles = 20;

/// Conjugate gradients on H_A(alpha) D + D H_B(alpha) = R in matrix form.
///
/// The operator is symmetric positive definite under the Frobenius inner
/// product whenever lambda_min(H_A) + lambda_min(H_B) + alpha_hat > 0.
/// Starts from zero. Non-convergence returns the last iterate with
/// converged = false; a non-positive curvature p:Ap throws BreakdownError.
InnerResult cg_hpd_sylvester(const SplittingBundle& bundle, const DenseMatrix& rhs, double tol = kDefaultInnerTol,
                             std::size_t maxit = kDefaultCgMaxit);

/// Restarted GMRES on S_A(alpha) D + D S_B(alpha) = R in matrix form.
///
/// Arnoldi basis elements are n x m matrices orthogonalized with the
/// Frobenius inner product (modified Gram-Schmidt). `max_cycles` bounds the
/// number of restart cycles. Happy breakdown counts as exact convergence.
/// When `history` is non-null it receives the estimated relative residual
/// after every Arnoldi step.
InnerResult gmres_skew_sylvester(const SplittingBundle& bundle, const DenseMatrix& rhs,
                                 double tol = kDefaultInnerTol, std::size_t restart = kDefaultGmresRestart,
                                 std::size_t max_cycles = kDefaultGmresCycles, std::vector<double>* history = nullptr);

/// LU factorization with partial pivoting of a dense square matrix.
///
/// Throws BreakdownError when a pivot falls below pivot_tol * max|entry|.
class LuFactorization {
 public:
  explicit LuFactorization(DenseMatrix a, double pivot_tol = 1e-14);

  [[nodiscard]] std::size_t size() const noexcept { return lu_.rows(); }
  [[nodiscard]] std::vector<double> solve(std::span<const double> b) const;

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
};

/// Unknown-count budget for the materialized Kronecker direct solve.
inline constexpr std::size_t kDirectSolveBudget = 1000;

/// Solves A X + X B = C through (I_m (x) A + B^T (x) I_n) vec(X) = vec(C).
///
/// Oracle route for small problems (n m <= 1000). A singular Kronecker
/// matrix, meaning A and -B share an eigenvalue, throws BreakdownError.
DenseMatrix direct_kron_solve(const Matrix& a, const Matrix& b, const DenseMatrix& c);

// ---------------------------------------------------------------------------
// Solvers for the two shifted sub-equations, as used by the outer methods.
// ---------------------------------------------------------------------------

struct InnerOptions {
  double tol = kDefaultInnerTol;
  std::size_t cg_maxit = kDefaultCgMaxit;
  std::size_t gmres_restart = kDefaultGmresRestart;
  std::size_t gmres_cycles = kDefaultGmresCycles;
};

class SubproblemSolver {
 public:
  virtual ~SubproblemSolver() = default;
  /// Solves H_A(alpha) D + D H_B(alpha) = R.
  virtual InnerResult solve_hermitian(const DenseMatrix& rhs) const = 0;
  /// Solves S_A(alpha) D + D S_B(alpha) = R.
  virtual InnerResult solve_skew(const DenseMatrix& rhs) const = 0;
};

/// CG for the Hermitian sub-equation, GMRES for the skew one.
class IterativeSubproblemSolver final : public SubproblemSolver {
 public:
  IterativeSubproblemSolver(const SplittingBundle& bundle, InnerOptions options)
      : bundle_(bundle), options_(options) {}

  InnerResult solve_hermitian(const DenseMatrix& rhs) const override;
  InnerResult solve_skew(const DenseMatrix& rhs) const override;

 private:
  const SplittingBundle& bundle_;
  InnerOptions options_;
};

/// Unknown-count budget of the exact sub-equation solver.
inline constexpr std::size_t kExactSubproblemBudget = 1024;

/// Exact sub-equation solves from LU factors of the materialized shifted
/// Kronecker matrices, factored once at construction (n m <= 1024).
class ExactSubproblemSolver final : public SubproblemSolver {
 public:
  explicit ExactSubproblemSolver(const SplittingBundle& bundle);

  InnerResult solve_hermitian(const DenseMatrix& rhs) const override;
  InnerResult solve_skew(const DenseMatrix& rhs) const override;

 private:
  std::size_t n_;
  std::size_t m_;
  LuFactorization hermitian_;
  LuFactorization skew_;
};

enum class InnerMode { kIterative, kExact };

std::unique_ptr<SubproblemSolver> make_subproblem_solver(const SplittingBundle& bundle, InnerMode mode,
                                                         const InnerOptions& options);

}  // namespace sylv
