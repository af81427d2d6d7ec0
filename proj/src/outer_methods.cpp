#include "sylvester/outer_methods.hpp"

#include <cmath>
#include <memory>

#include "sylvester/matrix_ops.hpp"

namespace sylv {

namespace {

using Clock = std::chrono::steady_clock;

DenseMatrix residual_of(const Matrix& a, const Matrix& b, const DenseMatrix& c, const DenseMatrix& x) {
  DenseMatrix r = c;
  r -= apply_sylvester(a, b, x);
  return r;
}

DenseMatrix initial_guess(const DenseMatrix& c, const OuterOptions& options) {
  if (!options.x0) return DenseMatrix(c.rows(), c.cols());
  if (!options.x0->same_shape(c)) {
    throw DimensionError("initial guess is " + shape_string(*options.x0) + ", expected " + shape_string(c));
  }
  return *options.x0;
}

template <typename Solve>
InnerResult guarded(std::size_t step, Solve&& solve) {
  try {
    return solve();
  } catch (const BreakdownError& e) {
    throw InnerSolveError(step, e.what());
  }
}

// Algorithm: select X0, R0 = C - A X0 - X0 B, solve H(Delta0) = R0, then per step
// W = L(Delta); beta = <R,W>/<W,W>; X', R' = X + beta Delta, R - beta W;
// solve S(Delta') = R', H(V) = R'; W' = L(Delta'); solve H(U) = W';
// gamma = <V,U>/<U,U>; X, R, Delta = X' + gamma Delta', R' - gamma W', V - gamma U.
SolveResult mrhss_core(const Matrix& a, const Matrix& b, const DenseMatrix& c, const SubproblemSolver& solver,
                       const OuterOptions& options) {
  const auto start = Clock::now();
  SolveResult out;
  SolveReport& report = out.report;

  MrhssState s;
  s.x = initial_guess(c, options);
  s.r = residual_of(a, b, c, s.x);
  const double r0 = frobenius_norm(s.r);
  report.residual_history.push_back(r0);

  auto finish = [&](SolveStatus status) {
    report.status = status;
    report.converged = status == SolveStatus::kConverged;
    report.final_residual = frobenius_norm(residual_of(a, b, c, s.x));
    report.wall_time = Clock::now() - start;
    out.x = std::move(s.x);
    return std::move(out);
  };

  if (r0 == 0.0) return finish(SolveStatus::kConverged);

  {
    InnerResult d0 = guarded(0, [&] { return solver.solve_hermitian(s.r); });
    report.inner_iteration_total += d0.stats.iterations;
    s.delta = std::move(d0.solution);
  }

  for (std::size_t k = 0; k < options.maxit; ++k) {
    s.w = apply_sylvester(a, b, s.delta);
    const double ww = frobenius_inner(s.w, s.w);
    if (ww == 0.0) {
      throw StagnationError("mrhss: W^(k) vanished with nonzero residual at step " + std::to_string(k));
    }
    s.beta = frobenius_inner(s.r, s.w) / ww;
    s.x_half = s.x;
    s.x_half.axpy(s.beta, s.delta);
    s.r_half = s.r;
    s.r_half.axpy(-s.beta, s.w);

    InnerResult skew = guarded(k, [&] { return solver.solve_skew(s.r_half); });
    InnerResult v = guarded(k, [&] { return solver.solve_hermitian(s.r_half); });
    report.inner_iteration_total += skew.stats.iterations + v.stats.iterations;
    s.delta_half = std::move(skew.solution);
    s.v_half = std::move(v.solution);
    s.w_half = apply_sylvester(a, b, s.delta_half);
    InnerResult u = guarded(k, [&] { return solver.solve_hermitian(s.w_half); });
    report.inner_iteration_total += u.stats.iterations;
    s.u_half = std::move(u.solution);

    const double uu = frobenius_inner(s.u_half, s.u_half);
    if (uu == 0.0) {
      if (frobenius_norm(s.r_half) != 0.0) {
        throw StagnationError("mrhss: U^(k+1/2) vanished with nonzero residual at step " + std::to_string(k));
      }
      s.gamma = 0.0;
    } else {
      s.gamma = frobenius_inner(s.v_half, s.u_half) / uu;
    }

    s.x = s.x_half;
    s.x.axpy(s.gamma, s.delta_half);
    s.r = s.r_half;
    s.r.axpy(-s.gamma, s.w_half);
    s.delta = s.v_half;
    s.delta.axpy(-s.gamma, s.u_half);

    const double rk = frobenius_norm(s.r);
    report.residual_history.push_back(rk);
    report.iterations = k + 1;
    if (options.on_mrhss_step) options.on_mrhss_step(k, s);

    if (!std::isfinite(rk) || !std::isfinite(s.beta) || !std::isfinite(s.gamma)) {
      return finish(SolveStatus::kDiverged);
    }
    if (rk <= options.outer_tol * r0) {
      DenseMatrix true_r = residual_of(a, b, c, s.x);
      if (frobenius_norm(true_r) <= options.outer_tol * r0) return finish(SolveStatus::kConverged);
      // Recurrence drifted from the true residual: restart the recurrences from it.
      s.r = std::move(true_r);
      InnerResult d = guarded(k, [&] { return solver.solve_hermitian(s.r); });
      report.inner_iteration_total += d.stats.iterations;
      s.delta = std::move(d.solution);
    }
  }
  return finish(SolveStatus::kMaxIterations);
}

SolveResult hss_core(const Matrix& a, const Matrix& b, const DenseMatrix& c, const SubproblemSolver& solver,
                     const OuterOptions& options) {
  const auto start = Clock::now();
  SolveResult out;
  SolveReport& report = out.report;
  DenseMatrix x = initial_guess(c, options);
  DenseMatrix r = residual_of(a, b, c, x);
  const double r0 = frobenius_norm(r);
  report.residual_history.push_back(r0);

  auto finish = [&](SolveStatus status, double final_norm) {
    report.status = status;
    report.converged = status == SolveStatus::kConverged;
    report.final_residual = final_norm;
    report.wall_time = Clock::now() - start;
    out.x = std::move(x);
    return std::move(out);
  };

  if (r0 == 0.0) return finish(SolveStatus::kConverged, 0.0);
  for (std::size_t k = 0; k < options.maxit; ++k) {
    InnerResult h = guarded(k, [&] { return solver.solve_hermitian(r); });
    x += h.solution;
    r = residual_of(a, b, c, x);
    InnerResult s = guarded(k, [&] { return solver.solve_skew(r); });
    x += s.solution;
    r = residual_of(a, b, c, x);
    report.inner_iteration_total += h.stats.iterations + s.stats.iterations;

    const double rk = frobenius_norm(r);
    report.residual_history.push_back(rk);
    report.iterations = k + 1;
    if (!std::isfinite(rk)) return finish(SolveStatus::kDiverged, rk);
    if (rk <= options.outer_tol * r0) return finish(SolveStatus::kConverged, rk);
  }
  return finish(SolveStatus::kMaxIterations, report.residual_history.back());
}

bool finite_all(std::initializer_list<double> values) {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

SolveResult mrhss_solve(const SylvesterProblem& problem, const SubproblemSolver& solver,
                        const OuterOptions& options) {
  return mrhss_core(problem.a(), problem.b(), problem.c(), solver, options);
}

SolveResult mrhss_solve(const SylvesterProblem& problem, double alpha, const OuterOptions& options) {
  const SplittingBundle bundle = build_splitting(problem.a(), problem.b(), alpha);
  const auto solver = make_subproblem_solver(bundle, options.inner_mode, options.inner);
  return mrhss_solve(problem, *solver, options);
}

SolveResult hss_solve(const SylvesterProblem& problem, const SubproblemSolver& solver,
                      const OuterOptions& options) {
  return hss_core(problem.a(), problem.b(), problem.c(), solver, options);
}

SolveResult hss_solve(const SylvesterProblem& problem, double alpha, const OuterOptions& options) {
  const SplittingBundle bundle = build_splitting(problem.a(), problem.b(), alpha);
  const auto solver = make_subproblem_solver(bundle, options.inner_mode, options.inner);
  return hss_solve(problem, *solver, options);
}

Preconditioner splitting_preconditioner(SplittingKind kind, const SylvesterProblem& problem, double alpha,
                                        const PreconditionerOptions& options) {
  struct Shared {
    Matrix a;
    Matrix b;
    SplittingBundle bundle;
    std::unique_ptr<SubproblemSolver> solver;
    std::size_t inner_iterations = 0;
  };
  auto shared = std::make_shared<Shared>(
      Shared{problem.a(), problem.b(), build_splitting(problem.a(), problem.b(), alpha), nullptr, 0});
  shared->solver = make_subproblem_solver(shared->bundle, options.inner_mode, options.inner);

  OuterOptions sweep;
  sweep.outer_tol = options.eps;
  sweep.maxit = options.max_sweeps;

  Preconditioner p;
  p.apply = [shared, sweep, kind](const DenseMatrix& rhs) {
    SolveResult z = kind == SplittingKind::kMrhss ? mrhss_core(shared->a, shared->b, rhs, *shared->solver, sweep)
                                                  : hss_core(shared->a, shared->b, rhs, *shared->solver, sweep);
    shared->inner_iterations += z.report.inner_iteration_total;
    return std::move(z.x);
  };
  p.inner_iterations = [shared] { return shared->inner_iterations; };
  return p;
}

SolveResult bicgstab_solve(const SylvesterProblem& problem, const Preconditioner* precond, double tol,
                           std::size_t maxit) {
  const auto start = Clock::now();
  const Matrix& a = problem.a();
  const Matrix& b = problem.b();
  const std::size_t inner_before = precond != nullptr ? precond->inner_iterations() : 0;
  auto apply_precond = [&](const DenseMatrix& v) { return precond != nullptr ? precond->apply(v) : v; };

  SolveResult out;
  SolveReport& report = out.report;
  DenseMatrix x(problem.n(), problem.m());
  DenseMatrix r = problem.c();
  const double r0 = frobenius_norm(r);
  report.residual_history.push_back(r0);

  auto finish = [&](SolveStatus status) {
    report.status = status;
    report.converged = status == SolveStatus::kConverged;
    report.final_residual = status == SolveStatus::kDiverged ? std::nan("") : frobenius_norm(residual(problem, x));
    report.wall_time = Clock::now() - start;
    if (precond != nullptr) report.inner_iteration_total = precond->inner_iterations() - inner_before;
    out.x = std::move(x);
    return std::move(out);
  };

  if (r0 == 0.0) return finish(SolveStatus::kConverged);

  const DenseMatrix r_hat = r;
  const double r_hat_norm = frobenius_norm(r_hat);
  DenseMatrix p(x.rows(), x.cols());
  DenseMatrix v(x.rows(), x.cols());
  double rho_prev = 1.0;
  double step = 1.0;
  double omega = 1.0;

  for (std::size_t it = 1; it <= maxit; ++it) {
    const double rho = frobenius_inner(r_hat, r);
    if (!std::isfinite(rho)) return finish(SolveStatus::kDiverged);
    if (std::abs(rho) < 1e-30 * r_hat_norm * frobenius_norm(r)) {
      throw BreakdownError("bicgstab: rho breakdown at iteration " + std::to_string(it));
    }
    if (it == 1) {
      p = r;
    } else {
      if (omega == 0.0) throw BreakdownError("bicgstab: omega vanished at iteration " + std::to_string(it));
      const double beta = (rho / rho_prev) * (step / omega);
      p.axpy(-omega, v);
      p *= beta;
      p += r;
    }
    const DenseMatrix p_hat = apply_precond(p);
    v = apply_sylvester(a, b, p_hat);
    step = rho / frobenius_inner(r_hat, v);
    if (!std::isfinite(step)) return finish(SolveStatus::kDiverged);

    DenseMatrix s = r;
    s.axpy(-step, v);
    report.iterations = it;
    const double s_norm = frobenius_norm(s);
    if (!std::isfinite(s_norm)) return finish(SolveStatus::kDiverged);
    if (s_norm <= tol * r0) {
      x.axpy(step, p_hat);
      r = std::move(s);
      report.residual_history.push_back(s_norm);
      if (frobenius_norm(residual(problem, x)) <= tol * r0) return finish(SolveStatus::kConverged);
      r = residual(problem, x);
      rho_prev = rho;
      continue;
    }

    const DenseMatrix s_hat = apply_precond(s);
    const DenseMatrix t = apply_sylvester(a, b, s_hat);
    omega = frobenius_inner(t, s) / frobenius_inner(t, t);
    if (!finite_all({omega})) return finish(SolveStatus::kDiverged);

    x.axpy(step, p_hat);
    x.axpy(omega, s_hat);
    r = std::move(s);
    r.axpy(-omega, t);
    const double r_norm = frobenius_norm(r);
    report.residual_history.push_back(r_norm);
    if (!std::isfinite(r_norm)) return finish(SolveStatus::kDiverged);
    if (r_norm <= tol * r0) {
      DenseMatrix true_r = residual(problem, x);
      if (frobenius_norm(true_r) <= tol * r0) return finish(SolveStatus::kConverged);
      r = std::move(true_r);
    }
    rho_prev = rho;
  }
  return finish(SolveStatus::kMaxIterations);
}

VecReferenceResult mrhss_vec_reference(const Matrix& a, const Matrix& b, const DenseMatrix& c, double alpha_hat,
                                       double outer_tol, std::size_t maxit) {
  if (c.size() > kDirectSolveBudget) {
    throw DimensionError("mrhss_vec_reference: n*m = " + std::to_string(c.size()) + " exceeds the budget of " +
                         std::to_string(kDirectSolveBudget) + " unknowns");
  }
  if (!(alpha_hat > 0.0)) throw std::invalid_argument("mrhss_vec_reference: alpha_hat must be positive");

  const DenseMatrix big = kron_sylvester(a, b);
  const std::size_t nm = big.rows();
  DenseMatrix herm_shifted(nm, nm);
  DenseMatrix skew_shifted(nm, nm);
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t j = 0; j < nm; ++j) {
      herm_shifted(i, j) = 0.5 * (big(i, j) + big(j, i));
      skew_shifted(i, j) = 0.5 * (big(i, j) - big(j, i));
    }
    herm_shifted(i, i) += alpha_hat;
    skew_shifted(i, i) += alpha_hat;
  }
  const LuFactorization m_inv(std::move(herm_shifted));   // M = (alpha_hat I + H)^-1
  const LuFactorization s_inv(std::move(skew_shifted));   // (alpha_hat I + S)^-1

  auto dot = [](const std::vector<double>& u, const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * w[i];
    return s;
  };
  auto axpy = [](std::vector<double>& y, double k, const std::vector<double>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += k * x[i];
  };

  VecReferenceResult out;
  out.x.assign(nm, 0.0);
  std::vector<double> r = vec(c);
  const double r0 = std::sqrt(dot(r, r));
  out.residual_history.push_back(r0);
  if (r0 == 0.0) {
    out.converged = true;
    return out;
  }
  std::vector<double> delta = m_inv.solve(r);  // delta = M r
  for (std::size_t k = 0; k < maxit; ++k) {
    const std::vector<double> m1r = matvec(big, delta);  // M1 r = A M r
    const double beta = dot(r, m1r) / dot(m1r, m1r);
    axpy(out.x, beta, delta);
    std::vector<double> r_half = r;
    axpy(r_half, -beta, m1r);

    const std::vector<double> delta_half = s_inv.solve(r_half);
    const std::vector<double> m2r = matvec(big, delta_half);  // M2 r' = A (alpha_hat I + S)^-1 r'
    const std::vector<double> zeta = m_inv.solve(r_half);     // M r'
    const std::vector<double> mm2r = m_inv.solve(m2r);        // M M2 r'
    const double denom = dot(mm2r, mm2r);
    double gamma = 0.0;
    if (denom != 0.0) {
      gamma = dot(zeta, mm2r) / denom;
    } else if (dot(r_half, r_half) != 0.0) {
      throw StagnationError("mrhss_vec_reference: M M2 r vanished with nonzero residual");
    }
    axpy(out.x, gamma, delta_half);
    r = std::move(r_half);
    axpy(r, -gamma, m2r);
    delta = zeta;
    axpy(delta, -gamma, mm2r);  // delta^(k+1) = zeta - gamma v

    out.betas.push_back(beta);
    out.gammas.push_back(gamma);
    const double rk = std::sqrt(dot(r, r));
    out.residual_history.push_back(rk);
    if (rk <= outer_tol * r0) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace sylv
