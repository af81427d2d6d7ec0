#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sylvester/dense_matrix.hpp"
#include "sylvester/inner_solvers.hpp"
#include "sylvester/sylvester_operator.hpp"

namespace sylv {

inline constexpr double kDefaultOuterTol = 1e-8;
inline constexpr std::size_t kDefaultOuterMaxit = 10000;

/// beta or gamma would divide by a zero-norm direction while the residual is nonzero.
class StagnationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An inner sub-equation solve failed; carries the outer step index.
class InnerSolveError : public std::runtime_error {
 public:
  InnerSolveError(std::size_t step, const std::string& what)
      : std::runtime_error("outer step " + std::to_string(step) + ": " + what), step_(step) {}
  [[nodiscard]] std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

enum class SolveStatus { kConverged, kMaxIterations, kDiverged };

struct SolveReport {
  bool converged = false;
  SolveStatus status = SolveStatus::kMaxIterations;
  std::size_t iterations = 0;
  std::vector<double> residual_history;  // ||R^(k)||_F, entry 0 is the initial residual
  double final_residual = 0.0;           // ||C - A X - X B||_F of the returned iterate
  std::chrono::duration<double> wall_time{0.0};
  std::size_t inner_iteration_total = 0;
};

struct SolveResult {
  DenseMatrix x;
  SolveReport report;
};

/// Every quantity of one MRHSS outer step, named after the algorithm's slots.
///
/// After a completed step k: `x`, `r`, `delta` hold X^(k+1), R^(k+1),
/// Delta^(k+1); the half-step slots hold their step-k values.
struct MrhssState {
  DenseMatrix x;
  DenseMatrix r;
  DenseMatrix delta;
  double beta = 0.0;
  double gamma = 0.0;
  DenseMatrix x_half;
  DenseMatrix r_half;
  DenseMatrix w;
  DenseMatrix delta_half;
  DenseMatrix v_half;
  DenseMatrix w_half;
  DenseMatrix u_half;
};

struct OuterOptions {
  double outer_tol = kDefaultOuterTol;
  std::size_t maxit = kDefaultOuterMaxit;
  InnerMode inner_mode = InnerMode::kIterative;
  InnerOptions inner;
  std::optional<DenseMatrix> x0;  // zero matrix when empty
  /// Called after every completed MRHSS step with the step index k.
  std::function<void(std::size_t, const MrhssState&)> on_mrhss_step;
};

/// Minimal-residual HSS iteration for A X + X B = C.
///
/// Per outer step: one skew-shifted and two Hermitian-shifted sub-equation
/// solves. beta minimizes ||R^(k) - beta W^(k)||_F; gamma minimizes the
/// residual in the norm ||R||_M = ||Hermitian-shifted solve of R||_F.
/// Stops when ||R^(k)||_F <= outer_tol * ||R^(0)||_F.
SolveResult mrhss_solve(const SylvesterProblem& problem, double alpha, const OuterOptions& options = {});

/// Same iteration with a caller-owned sub-equation solver.
SolveResult mrhss_solve(const SylvesterProblem& problem, const SubproblemSolver& solver,
                        const OuterOptions& options);

/// Classical HSS iteration, alternating the Hermitian-shifted and the
/// skew-shifted half steps. Run in correction form
/// X^(k+1/2) = X^(k) + solve_H(R^(k)), which is algebraically the same as
/// solving H_A(a) X' + X' H_B(a) = (aI - S_A) X + X (aI - S_B) + C, and keeps
/// inexact inner solves relative to the current residual.
SolveResult hss_solve(const SylvesterProblem& problem, double alpha, const OuterOptions& options = {});

SolveResult hss_solve(const SylvesterProblem& problem, const SubproblemSolver& solver,
                      const OuterOptions& options);

/// Approximate inverse Z ~ L^{-1}(R) of the Sylvester operator.
struct Preconditioner {
  std::function<DenseMatrix(const DenseMatrix&)> apply;
  /// Inner iterations accumulated over all applications.
  std::function<std::size_t()> inner_iterations = [] { return std::size_t{0}; };
};

enum class SplittingKind { kHss, kMrhss };

struct PreconditionerOptions {
  double eps = kDefaultInnerTol;
  std::size_t max_sweeps = 10;
  InnerMode inner_mode = InnerMode::kIterative;
  InnerOptions inner;
};

/// Runs the chosen splitting iteration from zero on L(Z) = R until the
/// relative residual drops to eps or max_sweeps sweeps are done.
Preconditioner splitting_preconditioner(SplittingKind kind, const SylvesterProblem& problem, double alpha,
                                        const PreconditionerOptions& options = {});

/// BiCGSTAB over n x m matrices with the Frobenius inner product, optionally
/// right-preconditioned. Non-finite recurrence scalars end the run with
/// status kDiverged; |rho| below 1e-30 ||r_hat|| ||r|| throws BreakdownError.
SolveResult bicgstab_solve(const SylvesterProblem& problem, const Preconditioner* precond,
                           double tol = kDefaultOuterTol, std::size_t maxit = kDefaultOuterMaxit);

struct VecReferenceResult {
  std::vector<double> x;
  std::vector<double> residual_history;
  std::vector<double> betas;
  std::vector<double> gammas;
  bool converged = false;
};

/// The MRHSS scheme on the Kronecker system A_kron x = c with materialized
/// matrices and direct shifted solves (n m <= 1000). Oracle for mrhss_solve.
VecReferenceResult mrhss_vec_reference(const Matrix& a, const Matrix& b, const DenseMatrix& c, double alpha_hat,
                                       double outer_tol, std::size_t maxit);

}  // namespace sylv
