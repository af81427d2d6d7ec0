#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace sylv {

/// Row-major dense matrix of doubles.
///
/// Holds iterates, residuals and search directions of the splitting
/// methods, and small coefficient matrices. Construction from external
/// data rejects non-finite entries; arithmetic on a constructed matrix may
/// still produce NaN/Inf (divergence is detected by the solvers).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static DenseMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols, 0.0}; }
  static DenseMatrix ones(std::size_t rows, std::size_t cols) { return {rows, cols, 1.0}; }
  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> diag);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
  [[nodiscard]] bool same_shape(const DenseMatrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<double> data() noexcept { return data_; }
  [[nodiscard]] std::span<const double> data() const noexcept { return data_; }
  [[nodiscard]] std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  [[nodiscard]] DenseMatrix transposed() const;
  [[nodiscard]] bool all_finite() const noexcept;
  [[nodiscard]] double max_abs() const noexcept;

  /// this += a * x
  DenseMatrix& axpy(double a, const DenseMatrix& x);
  void set_zero() noexcept;

  DenseMatrix& operator+=(const DenseMatrix& rhs);
  DenseMatrix& operator-=(const DenseMatrix& rhs);
  DenseMatrix& operator*=(double s) noexcept;

  friend DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs += rhs; }
  friend DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs -= rhs; }
  friend DenseMatrix operator*(double s, DenseMatrix m) { return m *= s; }
  friend DenseMatrix operator*(DenseMatrix m, double s) { return m *= s; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// "RxC" formatting used in error messages.
std::string shape_string(std::size_t rows, std::size_t cols);
inline std::string shape_string(const DenseMatrix& m) { return shape_string(m.rows(), m.cols()); }

}  // namespace sylv
