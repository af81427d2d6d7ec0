#include "sylvester/matrix.hpp"

namespace sylv {

std::size_t Matrix::rows() const noexcept {
  return std::visit([](const auto& m) { return m.rows(); }, storage_);
}

std::size_t Matrix::cols() const noexcept {
  return std::visit([](const auto& m) { return m.cols(); }, storage_);
}

DenseMatrix Matrix::to_dense() const {
  if (const auto* d = dense()) return *d;
  return sparse()->to_dense();
}

Matrix Matrix::transposed() const {
  return std::visit([](const auto& m) { return Matrix(m.transposed()); }, storage_);
}

double Matrix::at(std::size_t i, std::size_t j) const {
  if (const auto* d = dense()) return (*d)(i, j);
  return sparse()->at(i, j);
}

}  // namespace sylv
