#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sylvester/inner_solvers.hpp"
#include "sylvester/outer_methods.hpp"
#include "sylvester/problem_suite.hpp"

namespace sylv::bench {

enum class Method { kHss, kMrhss, kBicgstab, kHssBicgstab, kMrhssBicgstab };

/// Canonical lower-case names: hss, mrhss, bicgstab, hss-bicgstab, mrhss-bicgstab.
std::string_view method_name(Method m);
/// Throws std::invalid_argument on unknown names.
Method parse_method(std::string_view name);
std::vector<Method> parse_method_list(std::string_view comma_separated);

std::string example_name(ProblemFamily family);

/// Row outcome beyond the converged flag.
enum class RowStatus { kOk, kNotConverged, kDiverged, kFailed };
std::string_view row_status_name(RowStatus s);
RowStatus parse_row_status(std::string_view name);

struct ExperimentRow {
  std::string example;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string method;
  double alpha = 0.0;
  std::size_t iterations = 0;
  double wall_time_ms = 0.0;
  double res_norm = 0.0;
  bool converged = false;
  // Metadata sufficient to re-run the row.
  double r = 0.0;
  double t = 0.0;
  double inner_tol = 0.0;
  double outer_tol = 0.0;
  std::size_t maxit = 0;
  std::uint64_t seed = 0;
  RowStatus status = RowStatus::kOk;
  std::string error;  // set when status == kFailed
};

struct ExperimentOverrides {
  std::optional<double> alpha;
  double outer_tol = kDefaultOuterTol;
  double inner_tol = kDefaultInnerTol;
  std::size_t maxit = kDefaultOuterMaxit;
  std::uint64_t seed = 0x5eedULL;
  /// Splitting preconditioner settings for the *-bicgstab methods.
  std::size_t precond_sweeps = 10;
};

/// Runs each method on the problem described by spec, in input order.
///
/// alpha comes from select_alpha unless overridden. Problem or alpha
/// failures mark every row failed; per-method errors mark only that row.
std::vector<ExperimentRow> run_experiment(const ProblemSpec& spec, const std::vector<Method>& methods,
                                          const ExperimentOverrides& overrides = {});

enum class TableFormat { kCsv, kMarkdown };

inline constexpr std::string_view kCsvHeader =
    "example,n,m,method,alpha,iterations,wall_time_ms,res_norm,converged,r,t,inner_tol,outer_tol,maxit,seed,status";

void emit_table(const std::vector<ExperimentRow>& rows, TableFormat format, std::ostream& out);
/// Throws std::runtime_error when the destination cannot be written.
void emit_table(const std::vector<ExperimentRow>& rows, TableFormat format, const std::filesystem::path& dest);

/// Inverse of the CSV emitter.
std::vector<ExperimentRow> parse_csv(std::istream& in);

/// Rebuilds the ProblemSpec/overrides pair that produced a row.
ProblemSpec spec_from_row(const ExperimentRow& row, std::optional<std::filesystem::path> external_path = {});
ExperimentOverrides overrides_from_row(const ExperimentRow& row);

}  // namespace sylv::bench
