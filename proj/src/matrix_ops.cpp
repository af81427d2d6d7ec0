#include "sylvester/matrix_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace sylv {

namespace {

void require_inner_dims(std::size_t a_rows, std::size_t a_cols, std::size_t b_rows, std::size_t b_cols) {
  if (a_cols != b_rows) {
    throw DimensionError("gemm: inner dimensions disagree, " + shape_string(a_rows, a_cols) + " * " +
                         shape_string(b_rows, b_cols));
  }
}

DenseMatrix sparse_times_dense(const SparseCsr& a, const DenseMatrix& x) {
  require_inner_dims(a.rows(), a.cols(), x.rows(), x.cols());
  DenseMatrix out(a.rows(), x.cols());
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  const auto va = a.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) {
      const double aik = va[k];
      const auto x_row = x.row(ci[k]);
      for (std::size_t j = 0; j < x.cols(); ++j) out_row[j] += aik * x_row[j];
    }
  }
  return out;
}

DenseMatrix dense_times_sparse(const DenseMatrix& x, const SparseCsr& b) {
  require_inner_dims(x.rows(), x.cols(), b.rows(), b.cols());
  DenseMatrix out(x.rows(), b.cols());
  const auto rp = b.row_ptr();
  const auto ci = b.col_idx();
  const auto vb = b.values();
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto x_row = x.row(i);
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < b.rows(); ++k) {
      const double xik = x_row[k];
      if (xik == 0.0) continue;
      for (std::size_t p = rp[k]; p < rp[k + 1]; ++p) out_row[ci[p]] += xik * vb[p];
    }
  }
  return out;
}

std::vector<double> matrix_apply(const Matrix& h, std::span<const double> x) {
  if (const auto* d = h.dense()) return matvec(*d, x);
  const SparseCsr& s = *h.sparse();
  std::vector<double> y(s.rows(), 0.0);
  const auto rp = s.row_ptr();
  const auto ci = s.col_idx();
  const auto va = s.values();
  for (std::size_t i = 0; i < s.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) acc += va[k] * x[ci[k]];
    y[i] = acc;
  }
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

enum class Extreme { kMin, kMax };

// One explicitly restarted Lanczos run targeting a single extreme eigenvalue.
double lanczos_extreme(const Matrix& h, Extreme which, double tol, std::uint64_t seed) {
  const std::size_t n = h.rows();
  const std::size_t steps = std::min<std::size_t>(n, 50);
  constexpr int kMaxRestarts = 2000;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> start(n);
  for (double& v : start) v = gauss(rng);

  double theta = 0.0;
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    const double start_norm = norm2(start);
    if (start_norm == 0.0) throw ConvergenceError("extreme_eigs_sym: zero Lanczos start vector");
    for (double& v : start) v /= start_norm;

    std::vector<std::vector<double>> basis;
    std::vector<double> alpha;
    std::vector<double> beta;  // beta[j] couples basis[j] and basis[j+1]
    basis.push_back(start);
    double last_beta = 0.0;
    for (std::size_t j = 0; j < steps; ++j) {
      std::vector<double> w = matrix_apply(h, basis[j]);
      alpha.push_back(dot(w, basis[j]));
      // Full reorthogonalization, two passes of classical Gram-Schmidt.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) {
          const double c = dot(w, q);
          for (std::size_t i = 0; i < n; ++i) w[i] -= c * q[i];
        }
      }
      last_beta = norm2(w);
      const double scale = std::abs(alpha.back()) + (beta.empty() ? 0.0 : beta.back());
      if (j + 1 == steps || last_beta <= 1e-14 * std::max(scale, 1e-300)) {
        if (j + 1 < steps) last_beta = 0.0;  // invariant subspace found
        break;
      }
      beta.push_back(last_beta);
      for (double& v : w) v /= last_beta;
      basis.push_back(std::move(w));
    }

    const std::size_t k = alpha.size();
    DenseMatrix t(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    const SymmetricEigen ritz = jacobi_eigen(t);
    const std::size_t idx = which == Extreme::kMin ? 0 : k - 1;
    theta = ritz.values[idx];
    const double residual = std::abs(last_beta * ritz.vectors(k - 1, idx));
    const double spread = std::max(std::abs(ritz.values.front()), std::abs(ritz.values.back()));
    double gap = spread;
    if (k > 1) {
      gap = which == Extreme::kMin ? ritz.values[1] - ritz.values[0] : ritz.values[k - 1] - ritz.values[k - 2];
    }
    const double target = tol * std::max(std::abs(theta), 1e-12 * spread);
    if (residual <= target || (gap > 0.0 && residual * residual / gap <= target)) return theta;

    std::fill(start.begin(), start.end(), 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      const double c = ritz.vectors(j, idx);
      for (std::size_t i = 0; i < n; ++i) start[i] += c * basis[j][i];
    }
  }
  throw ConvergenceError("extreme_eigs_sym: Lanczos did not converge after " + std::to_string(kMaxRestarts) +
                         " restarts (last estimate " + std::to_string(theta) + ")");
}

}  // namespace

DenseMatrix gemm(const DenseMatrix& a, const DenseMatrix& b) {
  require_inner_dims(a.rows(), a.cols(), b.rows(), b.cols());
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const auto b_row = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aik * b_row[j];
    }
  }
  return out;
}

DenseMatrix gemm(const Matrix& a, const DenseMatrix& x) {
  if (const auto* d = a.dense()) return gemm(*d, x);
  return sparse_times_dense(*a.sparse(), x);
}

DenseMatrix gemm(const DenseMatrix& x, const Matrix& b) {
  if (const auto* d = b.dense()) return gemm(x, *d);
  return dense_times_sparse(x, *b.sparse());
}

double frobenius_inner(const DenseMatrix& a, const DenseMatrix& b) {
  if (!a.same_shape(b)) {
    throw DimensionError("frobenius_inner: shape mismatch " + shape_string(a) + " vs " + shape_string(b));
  }
  const auto x = a.data();
  const auto y = b.data();
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

double frobenius_norm(const DenseMatrix& a) { return std::sqrt(frobenius_inner(a, a)); }

HermitianSkewParts hermitian_skew_split(const Matrix& a) {
  if (!a.is_square()) {
    throw DimensionError("hermitian_skew_split: matrix is not square (" + shape_string(a.rows(), a.cols()) + ")");
  }
  if (const auto* s = a.sparse()) {
    const SparseCsr t = s->transposed();
    return {Matrix(SparseCsr::linear_combination(0.5, *s, 0.5, t)),
            Matrix(SparseCsr::linear_combination(0.5, *s, -0.5, t))};
  }
  const DenseMatrix& d = *a.dense();
  const std::size_t n = d.rows();
  DenseMatrix h(n, n);
  DenseMatrix k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h(i, j) = 0.5 * (d(i, j) + d(j, i));
      k(i, j) = 0.5 * (d(i, j) - d(j, i));
    }
  }
  return {Matrix(std::move(h)), Matrix(std::move(k))};
}

double symmetry_defect(const Matrix& h) {
  if (!h.is_square()) return std::numeric_limits<double>::infinity();
  if (const auto* s = h.sparse()) {
    const SparseCsr diff = SparseCsr::linear_combination(1.0, *s, -1.0, s->transposed());
    double m = 0.0;
    for (double v : diff.values()) m = std::max(m, std::abs(v));
    return m;
  }
  const DenseMatrix& d = *h.dense();
  double m = 0.0;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = i + 1; j < d.cols(); ++j) m = std::max(m, std::abs(d(i, j) - d(j, i)));
  return m;
}

SymmetricEigen jacobi_eigen(const DenseMatrix& h, double tol, int max_sweeps) {
  if (!h.is_square()) throw DimensionError("jacobi_eigen: matrix is not square (" + shape_string(h) + ")");
  const std::size_t n = h.rows();
  DenseMatrix a = h;
  DenseMatrix v = DenseMatrix::identity(n);
  const double total = frobenius_norm(a);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < max_sweeps && off_norm() > tol * total; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymmetricEigen out{std::vector<double>(n), DenseMatrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

EigenRange extreme_eigs_sym(const Matrix& h, double tol, std::uint64_t seed) {
  if (!h.is_square()) {
    throw DimensionError("extreme_eigs_sym: matrix is not square (" + shape_string(h.rows(), h.cols()) + ")");
  }
  if (h.rows() == 0) throw DimensionError("extreme_eigs_sym: empty matrix");
  if (symmetry_defect(h) > 1e-12) {
    throw std::invalid_argument("extreme_eigs_sym: matrix is not symmetric (defect " +
                                std::to_string(symmetry_defect(h)) + ")");
  }
  if (h.rows() <= kDenseEigenThreshold) {
    const SymmetricEigen e = jacobi_eigen(h.to_dense());
    return {e.values.front(), e.values.back()};
  }
  return {lanczos_extreme(h, Extreme::kMin, tol, seed), lanczos_extreme(h, Extreme::kMax, tol, seed + 1)};
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows * cols > kKronEntryBudget) {
    throw DimensionError("kron: result " + shape_string(rows, cols) +
                         " exceeds the oracle-scale only budget of " + std::to_string(kKronEntryBudget) +
                         " entries");
  }
  DenseMatrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

std::vector<double> vec(const DenseMatrix& x) {
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.cols(); ++j)
    for (std::size_t i = 0; i < x.rows(); ++i) out[j * x.rows() + i] = x(i, j);
  return out;
}

DenseMatrix unvec(std::span<const double> x, std::size_t rows, std::size_t cols) {
  if (x.size() != rows * cols) {
    throw DimensionError("unvec: length " + std::to_string(x.size()) + " does not match shape " +
                         shape_string(rows, cols));
  }
  DenseMatrix out(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = x[j * rows + i];
  return out;
}

std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    throw DimensionError("matvec: " + shape_string(a) + " times vector of length " + std::to_string(x.size()));
  }
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

}  // namespace sylv
