#include "sylvester/dense_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sylv {

std::string shape_string(std::size_t rows, std::size_t cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (!std::isfinite(fill)) {
    throw std::invalid_argument("DenseMatrix: non-finite fill value");
  }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("DenseMatrix: data length " + std::to_string(data_.size()) +
                                " does not match shape " + shape_string(rows, cols));
  }
  if (!all_finite()) {
    throw std::invalid_argument("DenseMatrix: non-finite entry in input data");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
  DenseMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  if (!m.all_finite()) throw std::invalid_argument("DenseMatrix: non-finite diagonal entry");
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("DenseMatrix::from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return {r, c, std::move(data)};
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool DenseMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double DenseMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

DenseMatrix& DenseMatrix::axpy(double a, const DenseMatrix& x) {
  if (!same_shape(x)) {
    throw std::invalid_argument("axpy: shape mismatch " + shape_string(*this) + " vs " + shape_string(x));
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += a * x.data_[k];
  return *this;
}

void DenseMatrix::set_zero() noexcept { std::fill(data_.begin(), data_.end(), 0.0); }

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& rhs) {
  if (!same_shape(rhs)) {
    throw std::invalid_argument("operator+=: shape mismatch " + shape_string(*this) + " vs " +
                                shape_string(rhs));
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& rhs) {
  if (!same_shape(rhs)) {
    throw std::invalid_argument("operator-=: shape mismatch " + shape_string(*this) + " vs " +
                                shape_string(rhs));
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

}  // namespace sylv
