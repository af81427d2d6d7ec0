#include "sylvester/sylvester_operator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sylv {

namespace {

// M X + X N + shift * X
DenseMatrix two_sided(const Matrix& left, const Matrix& right, const DenseMatrix& x, double shift) {
  DenseMatrix out = gemm(left, x);
  out += gemm(x, right);
  if (shift != 0.0) out.axpy(shift, x);
  return out;
}

}  // namespace

SylvesterProblem::SylvesterProblem(Matrix a, Matrix b, DenseMatrix c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (!a_.is_square()) throw DimensionError("SylvesterProblem: A is " + shape_string(a_.rows(), a_.cols()));
  if (!b_.is_square()) throw DimensionError("SylvesterProblem: B is " + shape_string(b_.rows(), b_.cols()));
  if (c_.rows() != a_.rows() || c_.cols() != b_.rows()) {
    throw DimensionError("SylvesterProblem: C is " + shape_string(c_) + ", expected " +
                         shape_string(a_.rows(), b_.rows()));
  }
}

DenseMatrix apply_sylvester(const Matrix& a, const Matrix& b, const DenseMatrix& x) {
  if (!a.is_square() || !b.is_square() || x.rows() != a.rows() || x.cols() != b.rows()) {
    throw DimensionError("apply_sylvester: A " + shape_string(a.rows(), a.cols()) + ", B " +
                         shape_string(b.rows(), b.cols()) + ", X " + shape_string(x));
  }
  return two_sided(a, b, x, 0.0);
}

DenseMatrix residual(const SylvesterProblem& problem, const DenseMatrix& x) {
  DenseMatrix r = problem.c();
  r -= apply_sylvester(problem.a(), problem.b(), x);
  return r;
}

SplittingBundle::SplittingBundle(Matrix h_a, Matrix s_a, Matrix h_b, Matrix s_b, double alpha)
    : h_a_(std::move(h_a)), s_a_(std::move(s_a)), h_b_(std::move(h_b)), s_b_(std::move(s_b)), alpha_(alpha) {
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) {
    throw std::invalid_argument("SplittingBundle: alpha must be positive and finite, got " + std::to_string(alpha_));
  }
  if (!h_a_.is_square() || h_a_.rows() != s_a_.rows() || !s_a_.is_square() || !h_b_.is_square() ||
      h_b_.rows() != s_b_.rows() || !s_b_.is_square()) {
    throw DimensionError("SplittingBundle: inconsistent part shapes");
  }
}

DenseMatrix SplittingBundle::apply_hermitian_shifted(const DenseMatrix& x) const {
  return two_sided(h_a_, h_b_, x, alpha_hat());
}

DenseMatrix SplittingBundle::apply_skew_shifted(const DenseMatrix& x) const {
  return two_sided(s_a_, s_b_, x, alpha_hat());
}

DenseMatrix SplittingBundle::apply_skew_reflected(const DenseMatrix& x) const {
  DenseMatrix out = two_sided(s_a_, s_b_, x, 0.0);
  out *= -1.0;
  out.axpy(alpha_hat(), x);
  return out;
}

DenseMatrix SplittingBundle::apply_hermitian_reflected(const DenseMatrix& x) const {
  DenseMatrix out = two_sided(h_a_, h_b_, x, 0.0);
  out *= -1.0;
  out.axpy(alpha_hat(), x);
  return out;
}

DenseMatrix SplittingBundle::kron_hermitian_shifted() const {
  DenseMatrix k = kron_sylvester(h_a_, h_b_);
  for (std::size_t i = 0; i < k.rows(); ++i) k(i, i) += alpha_hat();
  return k;
}

DenseMatrix SplittingBundle::kron_skew_shifted() const {
  DenseMatrix k = kron_sylvester(s_a_, s_b_);
  for (std::size_t i = 0; i < k.rows(); ++i) k(i, i) += alpha_hat();
  return k;
}

SplittingBundle build_splitting(const Matrix& a, const Matrix& b, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("build_splitting: alpha must be positive, got " + std::to_string(alpha));
  auto [h_a, s_a] = hermitian_skew_split(a);
  auto [h_b, s_b] = hermitian_skew_split(b);
  return {std::move(h_a), std::move(s_a), std::move(h_b), std::move(s_b), alpha};
}

DenseMatrix kron_sylvester(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.rows();
  const std::size_t m = b.rows();
  if (n * m > kKronSylvesterBudget) {
    throw DimensionError("kron_sylvester: n*m = " + std::to_string(n * m) + " exceeds the oracle-scale only budget of " +
                         std::to_string(kKronSylvesterBudget) + " unknowns");
  }
  const DenseMatrix ad = a.to_dense();
  const DenseMatrix bd = b.to_dense();
  // Filled blockwise: block (j,l) is delta_jl A + B(l,j) I.
  DenseMatrix out(n * m, n * m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) out(j * n + i, j * n + k) = ad(i, k);
      for (std::size_t l = 0; l < m; ++l) out(j * n + i, l * n + i) += bd(l, j);
    }
  }
  return out;
}

AlphaSelection select_alpha_detailed(const Matrix& a, const Matrix& b, double eig_tol, std::uint64_t seed) {
  const auto split_a = hermitian_skew_split(a);
  const auto split_b = hermitian_skew_split(b);
  const EigenRange ea = extreme_eigs_sym(split_a.hermitian, eig_tol, seed);
  const EigenRange eb = extreme_eigs_sym(split_b.hermitian, eig_tol, seed);
  const double lmin = ea.min + eb.min;
  const double lmax = ea.max + eb.max;
  if (!(lmin > 0.0)) {
    throw std::domain_error("select_alpha: Hermitian part of the Kronecker operator is not positive definite "
                            "(lambda_min = " + std::to_string(lmin) + ")");
  }
  const double alpha_hat = std::sqrt(lmin * lmax);
  return {alpha_hat / 2.0, alpha_hat, lmin, lmax};
}

}  // namespace sylv
