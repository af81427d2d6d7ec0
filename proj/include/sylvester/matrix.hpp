#pragma once

#include <cstddef>
#include <variant>

#include "sylvester/dense_matrix.hpp"
#include "sylvester/sparse_csr.hpp"

namespace sylv {

/// A coefficient matrix that is either dense or sparse.
///
/// Iterates are always dense; coefficient matrices keep whatever storage
/// they arrived in so that large sparse problems never get densified.
class Matrix {
 public:
  Matrix() = default;
  Matrix(DenseMatrix dense) : storage_(std::move(dense)) {}  // NOLINT(google-explicit-constructor)
  Matrix(SparseCsr sparse) : storage_(std::move(sparse)) {}  // NOLINT(google-explicit-constructor)

  [[nodiscard]] std::size_t rows() const noexcept;
  [[nodiscard]] std::size_t cols() const noexcept;
  [[nodiscard]] bool is_square() const noexcept { return rows() == cols(); }
  [[nodiscard]] bool is_sparse() const noexcept { return std::holds_alternative<SparseCsr>(storage_); }

  [[nodiscard]] const DenseMatrix* dense() const noexcept { return std::get_if<DenseMatrix>(&storage_); }
  [[nodiscard]] const SparseCsr* sparse() const noexcept { return std::get_if<SparseCsr>(&storage_); }

  [[nodiscard]] DenseMatrix to_dense() const;
  [[nodiscard]] Matrix transposed() const;
  [[nodiscard]] double at(std::size_t i, std::size_t j) const;

 private:
  std::variant<DenseMatrix, SparseCsr> storage_;
};

}  // namespace sylv
