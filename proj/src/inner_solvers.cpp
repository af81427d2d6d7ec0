#include "sylvester/inner_solvers.hpp"

#include <cmath>
#include <string>

#include "sylvester/matrix_ops.hpp"

namespace sylv {

InnerResult cg_hpd_sylvester(const SplittingBundle& bundle, const DenseMatrix& rhs, double tol, std::size_t maxit) {
  if (rhs.rows() != bundle.n() || rhs.cols() != bundle.m()) {
    throw DimensionError("cg_hpd_sylvester: right-hand side is " + shape_string(rhs) + ", expected " +
                         shape_string(bundle.n(), bundle.m()));
  }
  InnerResult out{DenseMatrix(rhs.rows(), rhs.cols()), {}};
  const double rhs_norm = frobenius_norm(rhs);
  if (rhs_norm == 0.0) {
    out.stats.converged = true;
    return out;
  }

  DenseMatrix r = rhs;
  DenseMatrix p = r;
  double rr = frobenius_inner(r, r);
  for (std::size_t it = 1; it <= maxit; ++it) {
    const DenseMatrix q = bundle.apply_hermitian_shifted(p);
    const double pq = frobenius_inner(p, q);
    if (!(pq > 0.0)) {
      throw BreakdownError("cg_hpd_sylvester: non-positive curvature " + std::to_string(pq) + " at iteration " +
                           std::to_string(it));
    }
    const double step = rr / pq;
    out.solution.axpy(step, p);
    r.axpy(-step, q);
    const double rr_next = frobenius_inner(r, r);
    out.stats.iterations = it;
    out.stats.final_relative_residual = std::sqrt(rr_next) / rhs_norm;
    if (out.stats.final_relative_residual <= tol) {
      out.stats.converged = true;
      return out;
    }
    const double beta = rr_next / rr;
    rr = rr_next;
    p *= beta;
    p += r;
  }
  return out;
}

InnerResult gmres_skew_sylvester(const SplittingBundle& bundle, const DenseMatrix& rhs, double tol,
                                 std::size_t restart, std::size_t max_cycles, std::vector<double>* history) {
  if (rhs.rows() != bundle.n() || rhs.cols() != bundle.m()) {
    throw DimensionError("gmres_skew_sylvester: right-hand side is " + shape_string(rhs) + ", expected " +
                         shape_string(bundle.n(), bundle.m()));
  }
  if (restart == 0) throw std::invalid_argument("gmres_skew_sylvester: restart must be positive");

  InnerResult out{DenseMatrix(rhs.rows(), rhs.cols()), {}};
  const double rhs_norm = frobenius_norm(rhs);
  if (rhs_norm == 0.0) {
    out.stats.converged = true;
    return out;
  }

  bool happy = false;
  DenseMatrix r = rhs;
  for (std::size_t cycle = 0; cycle < max_cycles; ++cycle) {
    if (cycle > 0) {
      r = rhs;
      r -= bundle.apply_skew_shifted(out.solution);
    }
    const double beta = frobenius_norm(r);
    if (beta <= tol * rhs_norm) break;

    std::vector<DenseMatrix> basis;
    basis.reserve(restart + 1);
    basis.push_back((1.0 / beta) * r);
    // Column-major Hessenberg, (restart+1) x restart.
    std::vector<std::vector<double>> h(restart, std::vector<double>(restart + 1, 0.0));
    std::vector<double> cs(restart, 0.0);
    std::vector<double> sn(restart, 0.0);
    std::vector<double> g(restart + 1, 0.0);
    g[0] = beta;

    std::size_t used = 0;
    for (std::size_t j = 0; j < restart; ++j) {
      DenseMatrix w = bundle.apply_skew_shifted(basis[j]);
      for (std::size_t i = 0; i <= j; ++i) {
        h[j][i] = frobenius_inner(w, basis[i]);
        w.axpy(-h[j][i], basis[i]);
      }
      const double w_norm = frobenius_norm(w);
      h[j][j + 1] = w_norm;
      for (std::size_t i = 0; i < j; ++i) {
        const double t = cs[i] * h[j][i] + sn[i] * h[j][i + 1];
        h[j][i + 1] = -sn[i] * h[j][i] + cs[i] * h[j][i + 1];
        h[j][i] = t;
      }
      const double denom = std::hypot(h[j][j], h[j][j + 1]);
      cs[j] = h[j][j] / denom;
      sn[j] = h[j][j + 1] / denom;
      h[j][j] = denom;
      h[j][j + 1] = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];

      used = j + 1;
      ++out.stats.iterations;
      const double estimate = std::abs(g[j + 1]) / rhs_norm;
      if (history != nullptr) history->push_back(estimate);
      if (w_norm <= 1e-14 * denom) {
        happy = true;
        break;
      }
      if (estimate <= tol) break;
      basis.push_back((1.0 / w_norm) * w);
    }

    std::vector<double> y(used, 0.0);
    for (std::size_t i = used; i-- > 0;) {
      double s = g[i];
      for (std::size_t k = i + 1; k < used; ++k) s -= h[k][i] * y[k];
      y[i] = s / h[i][i];
    }
    for (std::size_t i = 0; i < used; ++i) out.solution.axpy(y[i], basis[i]);
    if (happy) break;
    if (std::abs(g[used]) <= tol * rhs_norm) break;
  }

  DenseMatrix true_residual = rhs;
  true_residual -= bundle.apply_skew_shifted(out.solution);
  out.stats.final_relative_residual = frobenius_norm(true_residual) / rhs_norm;
  out.stats.converged = out.stats.final_relative_residual <= tol;
  return out;
}

LuFactorization::LuFactorization(DenseMatrix a, double pivot_tol) : lu_(std::move(a)), perm_(lu_.rows()) {
  if (!lu_.is_square()) throw DimensionError("LuFactorization: matrix is " + shape_string(lu_));
  const std::size_t n = lu_.rows();
  const double scale = lu_.max_abs();
  if (n > 0 && scale == 0.0) throw BreakdownError("LuFactorization: zero matrix is singular");
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > std::abs(lu_(piv, k))) piv = i;
    if (std::abs(lu_(piv, k)) < pivot_tol * scale) {
      throw BreakdownError("LuFactorization: pivot " + std::to_string(lu_(piv, k)) + " at column " +
                           std::to_string(k) + " below threshold; matrix is numerically singular");
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
    }
    const double inv = 1.0 / lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = lu_(i, k) * inv;
      lu_(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= l * lu_(k, j);
    }
  }
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) {
    throw DimensionError("LuFactorization::solve: right-hand side length " + std::to_string(b.size()) +
                         ", expected " + std::to_string(n));
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

DenseMatrix direct_kron_solve(const Matrix& a, const Matrix& b, const DenseMatrix& c) {
  if (!a.is_square() || !b.is_square() || c.rows() != a.rows() || c.cols() != b.rows()) {
    throw DimensionError("direct_kron_solve: A " + shape_string(a.rows(), a.cols()) + ", B " +
                         shape_string(b.rows(), b.cols()) + ", C " + shape_string(c));
  }
  if (c.size() > kDirectSolveBudget) {
    throw DimensionError("direct_kron_solve: n*m = " + std::to_string(c.size()) + " exceeds the budget of " +
                         std::to_string(kDirectSolveBudget) + " unknowns");
  }
  try {
    const LuFactorization lu(kron_sylvester(a, b));
    return unvec(lu.solve(vec(c)), c.rows(), c.cols());
  } catch (const BreakdownError& e) {
    throw BreakdownError(std::string("direct_kron_solve: Kronecker matrix is singular, A and -B share an "
                                     "eigenvalue (") + e.what() + ")");
  }
}

InnerResult IterativeSubproblemSolver::solve_hermitian(const DenseMatrix& rhs) const {
  return cg_hpd_sylvester(bundle_, rhs, options_.tol, options_.cg_maxit);
}

InnerResult IterativeSubproblemSolver::solve_skew(const DenseMatrix& rhs) const {
  return gmres_skew_sylvester(bundle_, rhs, options_.tol, options_.gmres_restart, options_.gmres_cycles);
}

namespace {

LuFactorization factor_within_budget(const SplittingBundle& bundle, bool hermitian) {
  const std::size_t unknowns = bundle.n() * bundle.m();
  if (unknowns > kExactSubproblemBudget) {
    throw DimensionError("ExactSubproblemSolver: n*m = " + std::to_string(unknowns) + " exceeds the budget of " +
                         std::to_string(kExactSubproblemBudget) + " unknowns");
  }
  return LuFactorization(hermitian ? bundle.kron_hermitian_shifted() : bundle.kron_skew_shifted());
}

InnerResult exact_result(const LuFactorization& lu, const DenseMatrix& rhs, std::size_t n, std::size_t m) {
  if (rhs.rows() != n || rhs.cols() != m) {
    throw DimensionError("ExactSubproblemSolver: right-hand side is " + shape_string(rhs) + ", expected " +
                         shape_string(n, m));
  }
  InnerResult out{unvec(lu.solve(vec(rhs)), n, m), {}};
  out.stats.iterations = 1;
  out.stats.converged = true;
  return out;
}

}  // namespace

ExactSubproblemSolver::ExactSubproblemSolver(const SplittingBundle& bundle)
    : n_(bundle.n()), m_(bundle.m()), hermitian_(factor_within_budget(bundle, true)),
      skew_(factor_within_budget(bundle, false)) {}

InnerResult ExactSubproblemSolver::solve_hermitian(const DenseMatrix& rhs) const {
  return exact_result(hermitian_, rhs, n_, m_);
}

InnerResult ExactSubproblemSolver::solve_skew(const DenseMatrix& rhs) const {
  return exact_result(skew_, rhs, n_, m_);
}

std::unique_ptr<SubproblemSolver> make_subproblem_solver(const SplittingBundle& bundle, InnerMode mode,
                                                         const InnerOptions& options) {
  if (mode == InnerMode::kExact) return std::make_unique<ExactSubproblemSolver>(bundle);
  return std::make_unique<IterativeSubproblemSolver>(bundle, options);
}

}  // namespace sylv
