#include "sylvester/problem_suite.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "sylvester/matrix_ops.hpp"

namespace sylv {

namespace {

std::string lowercase(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, const std::string& what) {
  throw MatrixMarketError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

void ProblemSpec::validate() const {
  // External problems take their dimensions from the file.
  if (family != ProblemFamily::kExternal && (n < 1 || m < 1)) throw std::invalid_argument("ProblemSpec: n and m must be at least 1");
  if (!std::isfinite(r)) throw std::invalid_argument("ProblemSpec: r must be finite");
  if (!std::isfinite(t)) throw std::invalid_argument("ProblemSpec: t must be finite");
  if (family == ProblemFamily::kExample2 && n != m) {
    throw std::invalid_argument("ProblemSpec: Example 2 is square, got n=" + std::to_string(n) +
                                " m=" + std::to_string(m));
  }
  if (family == ProblemFamily::kExternal && !path) {
    throw std::invalid_argument("ProblemSpec: external family needs a matrix path");
  }
  if (rhs_mode == RhsMode::kExplicitC && !explicit_c) {
    throw std::invalid_argument("ProblemSpec: explicit-C mode needs a C matrix");
  }
}

DenseMatrix tridiag(std::size_t n, double sub, double diag, double super) {
  DenseMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    t(i, i) = diag;
    if (i > 0) t(i, i - 1) = sub;
    if (i + 1 < n) t(i, i + 1) = super;
  }
  return t;
}

DenseMatrix known_solution_rhs(const Matrix& a, const Matrix& b) {
  return apply_sylvester(a, b, DenseMatrix::ones(a.rows(), b.rows()));
}

SylvesterProblem gen_example1(std::size_t n, std::size_t m, double r) {
  if (n < 2 || m < 2) throw std::invalid_argument("gen_example1: n and m must be at least 2");
  auto coefficient = [r](std::size_t k) {
    DenseMatrix c = tridiag(k, -1.0, 2.0, -1.0);
    c.axpy(2.0 * r, tridiag(k, 0.5, 0.0, -0.5));
    const double shift = 100.0 / static_cast<double>((k + 1) * (k + 1));
    for (std::size_t i = 0; i < k; ++i) c(i, i) += shift;
    return c;
  };
  Matrix a = coefficient(n);
  Matrix b = coefficient(m);
  DenseMatrix c = known_solution_rhs(a, b);
  return {std::move(a), std::move(b), std::move(c)};
}

SylvesterProblem gen_example2(std::size_t n, double r, double t) {
  if (n < 2) throw std::invalid_argument("gen_example2: n must be at least 2");
  const double tau = std::pow(2.0, -t);
  DenseMatrix a(n, n);
  DenseMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(i + 1);
    a(i, i) = d;
    b(i, i) = d + tau;
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = r;        // r L^T
      b(i, j) = r;
      b(j, i) = tau;      // 2^-t L
    }
  }
  Matrix am = std::move(a);
  Matrix bm = std::move(b);
  DenseMatrix c = known_solution_rhs(am, bm);
  return {std::move(am), std::move(bm), std::move(c)};
}

SparseCsr parse_matrix_market(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) parse_fail(source_name, 1, "empty input");
  ++line_no;

  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") parse_fail(source_name, line_no, "missing %%MatrixMarket banner");
  object = lowercase(object);
  format = lowercase(format);
  field = lowercase(field);
  symmetry = lowercase(symmetry);
  if (object != "matrix") parse_fail(source_name, line_no, "unsupported object '" + object + "'");
  if (format != "coordinate") {
    throw MatrixMarketError(source_name + ": unsupported format '" + format + "' (only coordinate)");
  }
  if (field == "complex" || field == "pattern") {
    throw MatrixMarketError(source_name + ": unsupported field type '" + field + "'");
  }
  if (field != "real" && field != "integer" && field != "double") {
    parse_fail(source_name, line_no, "unknown field type '" + field + "'");
  }
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") {
    throw MatrixMarketError(source_name + ": unsupported symmetry '" + symmetry + "'");
  }

  std::size_t rows = 0, cols = 0, entries = 0;
  bool have_size = false;
  std::vector<Triplet> triplets;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    std::istringstream fields(line);
    if (!have_size) {
      if (!(fields >> rows >> cols >> entries)) parse_fail(source_name, line_no, "malformed size line");
      have_size = true;
      triplets.reserve(symmetric ? 2 * entries : entries);
      continue;
    }
    std::size_t i = 0, j = 0;
    double value = 0.0;
    if (!(fields >> i >> j >> value)) parse_fail(source_name, line_no, "malformed entry");
    if (i < 1 || j < 1 || i > rows || j > cols) {
      parse_fail(source_name, line_no, "index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    }
    if (!std::isfinite(value)) parse_fail(source_name, line_no, "non-finite value");
    if (++seen > entries) parse_fail(source_name, line_no, "more entries than declared");
    triplets.push_back({i - 1, j - 1, value});
    if (symmetric && i != j) triplets.push_back({j - 1, i - 1, value});
  }
  if (!have_size) parse_fail(source_name, line_no, "missing size line");
  if (seen != entries) {
    parse_fail(source_name, line_no,
               "declared " + std::to_string(entries) + " entries, found " + std::to_string(seen));
  }
  return SparseCsr::from_triplets(rows, cols, std::move(triplets));
}

SparseCsr load_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MatrixMarketError("cannot open Matrix Market file " + path.string());
  return parse_matrix_market(in, path.string());
}

SylvesterProblem gen_example3(const std::filesystem::path& matrix_path) {
  SparseCsr a = load_matrix_market(matrix_path);
  if (a.rows() != a.cols()) {
    throw DimensionError("gen_example3: coefficient A must be square, got " + shape_string(a.rows(), a.cols()));
  }
  Matrix am = std::move(a);
  Matrix bm = tridiag(kExample3BlockSize, -1.0, 4.0, -2.0);
  DenseMatrix c = known_solution_rhs(am, bm);
  return {std::move(am), std::move(bm), std::move(c)};
}

SylvesterProblem make_problem(const ProblemSpec& spec) {
  spec.validate();
  SylvesterProblem problem = [&] {
    switch (spec.family) {
      case ProblemFamily::kExample1:
        return gen_example1(spec.n, spec.m, spec.r);
      case ProblemFamily::kExample2:
        return gen_example2(spec.n, spec.r, spec.t);
      case ProblemFamily::kExternal:
        break;
    }
    return gen_example3(*spec.path);
  }();
  if (spec.rhs_mode == RhsMode::kExplicitC) return problem.with_rhs(*spec.explicit_c);
  return problem;
}

}  // namespace sylv
