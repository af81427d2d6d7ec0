#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "sylvester/dense_matrix.hpp"
#include "sylvester/sparse_csr.hpp"
#include "sylvester/sylvester_operator.hpp"

namespace sylv {

enum class ProblemFamily { kExample1, kExample2, kExternal };

enum class RhsMode {
  kKnownSolution,  // X* = all-ones, C = A X* + X* B
  kExplicitC,
};

inline constexpr double kDefaultR = 0.01;
inline constexpr double kDefaultT = 1.0;
inline constexpr std::size_t kExample3BlockSize = 8;

struct ProblemSpec {
  ProblemFamily family = ProblemFamily::kExample1;
  std::size_t n = 8;
  std::size_t m = 8;
  double r = kDefaultR;
  double t = kDefaultT;
  std::optional<std::filesystem::path> path;  // External family
  RhsMode rhs_mode = RhsMode::kKnownSolution;
  std::optional<DenseMatrix> explicit_c;      // kExplicitC

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Malformed or unsupported Matrix Market input.
class MatrixMarketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// tridiag(sub, diag, super) of order n.
DenseMatrix tridiag(std::size_t n, double sub, double diag, double super);

/// C = A X* + X* B with X* = all-ones.
DenseMatrix known_solution_rhs(const Matrix& a, const Matrix& b);

/// A = M + 2rN + 100/(n+1)^2 I, B likewise of order m, with
/// M = tridiag(-1, 2, -1) and N = tridiag(0.5, 0, -0.5).
SylvesterProblem gen_example1(std::size_t n, std::size_t m, double r = kDefaultR);

/// A = diag(1..n) + r L^T, B = 2^-t I + diag(1..n) + r L^T + 2^-t L, with L
/// strictly lower triangular ones. Square (m = n).
SylvesterProblem gen_example2(std::size_t n, double r = kDefaultR, double t = kDefaultT);

/// Coordinate real/integer Matrix Market, general or symmetric. Symmetric
/// storage is expanded, duplicates are summed, indices become 0-based.
SparseCsr load_matrix_market(const std::filesystem::path& path);
SparseCsr parse_matrix_market(std::istream& in, const std::string& source_name = "<stream>");

/// A from a Matrix Market file, B = tridiag(-1, 4, -2) of order 8.
SylvesterProblem gen_example3(const std::filesystem::path& matrix_path);

/// Dispatches on spec.family and applies spec.rhs_mode.
SylvesterProblem make_problem(const ProblemSpec& spec);

}  // namespace sylv
