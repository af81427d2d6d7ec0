#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sylvester/dense_matrix.hpp"

namespace sylv {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix with strictly increasing column indices per row.
class SparseCsr {
 public:
  SparseCsr() = default;
  /// Validates the CSR invariants; throws std::invalid_argument on violation.
  SparseCsr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
            std::vector<std::size_t> col_idx, std::vector<double> vals);

  /// Builds from unordered triplets; duplicates are summed.
  static SparseCsr from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
  /// Keeps exact zeros out of the pattern.
  static SparseCsr from_dense(const DenseMatrix& dense);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t nnz() const noexcept { return vals_.size(); }
  [[nodiscard]] std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  [[nodiscard]] std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return vals_; }

  /// Entry lookup by binary search within the row; zero when not stored.
  [[nodiscard]] double at(std::size_t i, std::size_t j) const;

  [[nodiscard]] SparseCsr transposed() const;
  [[nodiscard]] DenseMatrix to_dense() const;

  /// a*x + b*y on the union pattern.
  static SparseCsr linear_combination(double a, const SparseCsr& x, double b, const SparseCsr& y);

  friend bool operator==(const SparseCsr&, const SparseCsr&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> vals_;
};

}  // namespace sylv
