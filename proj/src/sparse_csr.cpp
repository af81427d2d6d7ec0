#include "sylvester/sparse_csr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sylv {

SparseCsr::SparseCsr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                     std::vector<std::size_t> col_idx, std::vector<double> vals)
    : rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)),
      vals_(std::move(vals)) {
  if (row_ptr_.size() != rows_ + 1) {
    throw std::invalid_argument("SparseCsr: row_ptr length " + std::to_string(row_ptr_.size()) +
                                " != rows+1 = " + std::to_string(rows_ + 1));
  }
  if (row_ptr_.front() != 0) throw std::invalid_argument("SparseCsr: row_ptr[0] must be 0");
  if (row_ptr_.back() != vals_.size() || col_idx_.size() != vals_.size()) {
    throw std::invalid_argument("SparseCsr: row_ptr[rows], col_idx and vals lengths disagree");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1]) throw std::invalid_argument("SparseCsr: row_ptr decreasing");
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] >= cols_) {
        throw std::invalid_argument("SparseCsr: column index out of range in row " + std::to_string(i));
      }
      if (k > row_ptr_[i] && col_idx_[k] <= col_idx_[k - 1]) {
        throw std::invalid_argument("SparseCsr: column indices not strictly increasing in row " +
                                    std::to_string(i));
      }
      if (!std::isfinite(vals_[k])) throw std::invalid_argument("SparseCsr: non-finite value");
    }
  }
}

SparseCsr SparseCsr::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row >= rows || t.col >= cols) {
      throw std::invalid_argument("SparseCsr::from_triplets: entry (" + std::to_string(t.row) + "," +
                                  std::to_string(t.col) + ") outside " + shape_string(rows, cols));
    }
  }
  // Stable sort keeps the summation order of duplicates equal to input order.
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<std::size_t> row_ptr(rows + 1, 0);
  std::vector<std::size_t> col_idx;
  std::vector<double> vals;
  col_idx.reserve(triplets.size());
  vals.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size(); ++k) {
    const auto& t = triplets[k];
    if (k > 0 && triplets[k - 1].row == t.row && triplets[k - 1].col == t.col) {
      vals.back() += t.value;
      continue;
    }
    col_idx.push_back(t.col);
    vals.push_back(t.value);
    ++row_ptr[t.row + 1];
  }
  for (std::size_t i = 0; i < rows; ++i) row_ptr[i + 1] += row_ptr[i];
  return {rows, cols, std::move(row_ptr), std::move(col_idx), std::move(vals)};
}

SparseCsr SparseCsr::from_dense(const DenseMatrix& dense) {
  std::vector<std::size_t> row_ptr(dense.rows() + 1, 0);
  std::vector<std::size_t> col_idx;
  std::vector<double> vals;
  for (std::size_t i = 0; i < dense.rows(); ++i) {
    for (std::size_t j = 0; j < dense.cols(); ++j) {
      if (dense(i, j) != 0.0) {
        col_idx.push_back(j);
        vals.push_back(dense(i, j));
      }
    }
    row_ptr[i + 1] = vals.size();
  }
  return {dense.rows(), dense.cols(), std::move(row_ptr), std::move(col_idx), std::move(vals)};
}

double SparseCsr::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("SparseCsr::at: index out of range");
  const auto first = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return vals_[static_cast<std::size_t>(it - col_idx_.begin())];
}

SparseCsr SparseCsr::transposed() const {
  std::vector<std::size_t> row_ptr(cols_ + 1, 0);
  for (std::size_t c : col_idx_) ++row_ptr[c + 1];
  for (std::size_t j = 0; j < cols_; ++j) row_ptr[j + 1] += row_ptr[j];
  std::vector<std::size_t> next(row_ptr.begin(), row_ptr.end() - 1);
  std::vector<std::size_t> col_idx(nnz());
  std::vector<double> vals(nnz());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const std::size_t dst = next[col_idx_[k]]++;
      col_idx[dst] = i;
      vals[dst] = vals_[k];
    }
  }
  return {cols_, rows_, std::move(row_ptr), std::move(col_idx), std::move(vals)};
}

DenseMatrix SparseCsr::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) d(i, col_idx_[k]) = vals_[k];
  return d;
}

SparseCsr SparseCsr::linear_combination(double a, const SparseCsr& x, double b, const SparseCsr& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) {
    throw std::invalid_argument("SparseCsr::linear_combination: shape mismatch " +
                                shape_string(x.rows_, x.cols_) + " vs " + shape_string(y.rows_, y.cols_));
  }
  std::vector<std::size_t> row_ptr(x.rows_ + 1, 0);
  std::vector<std::size_t> col_idx;
  std::vector<double> vals;
  col_idx.reserve(x.nnz() + y.nnz());
  vals.reserve(x.nnz() + y.nnz());
  for (std::size_t i = 0; i < x.rows_; ++i) {
    std::size_t p = x.row_ptr_[i];
    std::size_t q = y.row_ptr_[i];
    const std::size_t pe = x.row_ptr_[i + 1];
    const std::size_t qe = y.row_ptr_[i + 1];
    while (p < pe || q < qe) {
      if (q == qe || (p < pe && x.col_idx_[p] < y.col_idx_[q])) {
        col_idx.push_back(x.col_idx_[p]);
        vals.push_back(a * x.vals_[p++]);
      } else if (p == pe || y.col_idx_[q] < x.col_idx_[p]) {
        col_idx.push_back(y.col_idx_[q]);
        vals.push_back(b * y.vals_[q++]);
      } else {
        col_idx.push_back(x.col_idx_[p]);
        vals.push_back(a * x.vals_[p++] + b * y.vals_[q++]);
      }
    }
    row_ptr[i + 1] = vals.size();
  }
  return {x.rows_, x.cols_, std::move(row_ptr), std::move(col_idx), std::move(vals)};
}

}  // namespace sylv
