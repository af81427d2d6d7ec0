#pragma once

#include <cstddef>
#include <cstdint>

#include "sylvester/dense_matrix.hpp"
#include "sylvester/matrix.hpp"
#include "sylvester/matrix_ops.hpp"

namespace sylv {

/// The continuous Sylvester equation A X + X B = C.
///
/// A is n x n, B is m x m, C and X are n x m. Unique solvability (A and -B
/// share no eigenvalue) is assumed, not checked.
class SylvesterProblem {
 public:
  SylvesterProblem(Matrix a, Matrix b, DenseMatrix c);

  [[nodiscard]] const Matrix& a() const noexcept { return a_; }
  [[nodiscard]] const Matrix& b() const noexcept { return b_; }
  [[nodiscard]] const DenseMatrix& c() const noexcept { return c_; }
  [[nodiscard]] std::size_t n() const noexcept { return a_.rows(); }
  [[nodiscard]] std::size_t m() const noexcept { return b_.rows(); }

  /// Same coefficients, new right-hand side.
  [[nodiscard]] SylvesterProblem with_rhs(DenseMatrix c) const { return {a_, b_, std::move(c)}; }

 private:
  Matrix a_;
  Matrix b_;
  DenseMatrix c_;
};

/// A X + X B
DenseMatrix apply_sylvester(const Matrix& a, const Matrix& b, const DenseMatrix& x);

/// C - A X - X B
DenseMatrix residual(const SylvesterProblem& problem, const DenseMatrix& x);

/// Hermitian/skew-Hermitian parts of A and B with the half-shift alpha.
///
/// The shifted operators act matrix-free:
///   hermitian: X -> H_A(alpha) X + X H_B(alpha) = (alpha_hat I + H) vec(X)
///   skew:      X -> S_A(alpha) X + X S_B(alpha) = (alpha_hat I + S) vec(X)
/// where H, S are the parts of the Kronecker matrix I (x) A + B^T (x) I and
/// alpha_hat = 2 alpha. The B-side uses H_B and S_B directly: for real B,
/// H_{B^T} = H_B and right-multiplication by S_B realizes S_{B^T} (x) I.
class SplittingBundle {
 public:
  SplittingBundle(Matrix h_a, Matrix s_a, Matrix h_b, Matrix s_b, double alpha);

  [[nodiscard]] const Matrix& h_a() const noexcept { return h_a_; }
  [[nodiscard]] const Matrix& s_a() const noexcept { return s_a_; }
  [[nodiscard]] const Matrix& h_b() const noexcept { return h_b_; }
  [[nodiscard]] const Matrix& s_b() const noexcept { return s_b_; }
  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double alpha_hat() const noexcept { return 2.0 * alpha_; }
  [[nodiscard]] std::size_t n() const noexcept { return h_a_.rows(); }
  [[nodiscard]] std::size_t m() const noexcept { return h_b_.rows(); }

  [[nodiscard]] DenseMatrix apply_hermitian_shifted(const DenseMatrix& x) const;
  [[nodiscard]] DenseMatrix apply_skew_shifted(const DenseMatrix& x) const;

  /// (alpha I - S_A) X + X (alpha I - S_B), the HSS right-hand side operator.
  [[nodiscard]] DenseMatrix apply_skew_reflected(const DenseMatrix& x) const;
  /// (alpha I - H_A) X + X (alpha I - H_B)
  [[nodiscard]] DenseMatrix apply_hermitian_reflected(const DenseMatrix& x) const;

  /// Materialized alpha_hat I + H and alpha_hat I + S (oracle scale only).
  [[nodiscard]] DenseMatrix kron_hermitian_shifted() const;
  [[nodiscard]] DenseMatrix kron_skew_shifted() const;

 private:
  Matrix h_a_;
  Matrix s_a_;
  Matrix h_b_;
  Matrix s_b_;
  double alpha_;
};

SplittingBundle build_splitting(const Matrix& a, const Matrix& b, double alpha);

/// Unknown-count budget of kron_sylvester (a 1024 x 1024 dense matrix).
inline constexpr std::size_t kKronSylvesterBudget = 1024;

/// I_m (x) A + B^T (x) I_n, filled directly (oracle scale only, n m <= 1024).
DenseMatrix kron_sylvester(const Matrix& a, const Matrix& b);

struct AlphaSelection {
  double alpha;      // half-shift, alpha_hat / 2
  double alpha_hat;  // sqrt(lambda_min(H) * lambda_max(H))
  double lambda_min;
  double lambda_max;
};

/// HSS-optimal shift for the Kronecker Hermitian part H = I (x) H_A + H_B (x) I.
///
/// The spectrum of H is {lambda_i(H_A) + mu_j(H_B)}, so the extremes come from
/// the extremes of H_A and H_B without forming H. Throws std::domain_error
/// when lambda_min(H) <= 0.
AlphaSelection select_alpha_detailed(const Matrix& a, const Matrix& b, double eig_tol = 1e-8,
                                     std::uint64_t seed = 0x5eedULL);

inline double select_alpha(const Matrix& a, const Matrix& b, double eig_tol = 1e-8,
                           std::uint64_t seed = 0x5eedULL) {
  return select_alpha_detailed(a, b, eig_tol, seed).alpha;
}

}  // namespace sylv
