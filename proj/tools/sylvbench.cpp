// sylvbench: run HSS / MRHSS / BiCGSTAB comparisons on the Sylvester test
// families and print the results as CSV or Markdown tables.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sylvester/bench.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRowFailed = 1;
constexpr int kExitConfig = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace sylv;
  using namespace sylv::bench;

  CLI::App app{"Benchmark HSS, MRHSS and splitting-preconditioned BiCGSTAB on AX + XB = C"};

  int example = 1;
  std::vector<std::size_t> ns{8};
  std::vector<std::size_t> ms;
  double r = kDefaultR;
  double t = kDefaultT;
  std::string methods_arg = "hss,mrhss";
  std::optional<double> alpha;
  double outer_tol = kDefaultOuterTol;
  double inner_tol = kDefaultInnerTol;
  std::size_t maxit = kDefaultOuterMaxit;
  std::size_t sweeps = 10;
  std::string format = "csv";
  std::string out_path;
  std::string sherman_path;
  std::uint64_t seed = 0x5eedULL;

  app.add_option("--example", example, "Problem family: 1, 2 or 3")->check(CLI::IsMember({1, 2, 3}));
  app.add_option("--n", ns, "Row dimension(s) of X; comma-separated for a sweep")->delimiter(',');
  app.add_option("--m", ms, "Column dimension(s) of X; defaults to --n")->delimiter(',');
  app.add_option("--r", r, "Examples 1/2 parameter r");
  app.add_option("--t", t, "Example 2 parameter t");
  app.add_option("--methods", methods_arg, "Comma-separated: hss,mrhss,bicgstab,hss-bicgstab,mrhss-bicgstab");
  app.add_option("--alpha", alpha, "Override the half-shift alpha (default: HSS-optimal estimate)")
      ->check(CLI::PositiveNumber);
  app.add_option("--outer-tol", outer_tol, "Relative residual stopping tolerance");
  app.add_option("--inner-tol", inner_tol, "Inner sub-equation / preconditioner tolerance");
  app.add_option("--maxit", maxit, "Outer iteration cap");
  app.add_option("--precond-sweeps", sweeps, "Splitting sweeps per preconditioner application");
  app.add_option("--format", format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}));
  app.add_option("--out", out_path, "Output file (default: standard output)");
  app.add_option("--sherman-path", sherman_path, "Matrix Market file for Example 3 (e.g. data/sherman3.mtx)");
  app.add_option("--seed", seed, "Seed for the Lanczos start vectors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  std::vector<Method> methods;
  std::vector<ProblemSpec> specs;
  try {
    methods = parse_method_list(methods_arg);
    if (example == 3) {
      if (sherman_path.empty()) throw std::invalid_argument("--example 3 requires --sherman-path");
      ProblemSpec spec;
      spec.family = ProblemFamily::kExternal;
      spec.path = sherman_path;
      spec.n = 0;
      spec.m = kExample3BlockSize;
      specs.push_back(spec);
    } else {
      if (ms.empty()) ms = ns;
      if (ns.size() != ms.size() && ns.size() != 1 && ms.size() != 1) {
        throw std::invalid_argument("--n and --m lists must have equal length (or one of them a single value)");
      }
      const std::size_t count = std::max(ns.size(), ms.size());
      for (std::size_t i = 0; i < count; ++i) {
        ProblemSpec spec;
        spec.family = example == 1 ? ProblemFamily::kExample1 : ProblemFamily::kExample2;
        spec.n = ns[ns.size() == 1 ? 0 : i];
        spec.m = ms[ms.size() == 1 ? 0 : i];
        spec.r = r;
        spec.t = t;
        spec.validate();
        specs.push_back(spec);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "sylvbench: " << e.what() << '\n';
    return kExitConfig;
  }

  ExperimentOverrides overrides;
  overrides.alpha = alpha;
  overrides.outer_tol = outer_tol;
  overrides.inner_tol = inner_tol;
  overrides.maxit = maxit;
  overrides.seed = seed;
  overrides.precond_sweeps = sweeps;

  std::vector<ExperimentRow> rows;
  for (const auto& spec : specs) {
    auto part = run_experiment(spec, methods, overrides);
    rows.insert(rows.end(), part.begin(), part.end());
  }

  bool any_failed = false;
  for (const auto& row : rows) {
    if (row.status == RowStatus::kFailed) {
      any_failed = true;
      std::cerr << "sylvbench: " << row.example << " (" << row.n << ',' << row.m << ") " << row.method
                << " failed: " << row.error << '\n';
    }
  }

  const TableFormat table_format = format == "markdown" ? TableFormat::kMarkdown : TableFormat::kCsv;
  try {
    if (rows.empty() && table_format == TableFormat::kMarkdown) {
      std::cerr << "sylvbench: no rows to print\n";
    } else if (out_path.empty()) {
      emit_table(rows, table_format, std::cout);
    } else {
      emit_table(rows, table_format, std::filesystem::path(out_path));
    }
  } catch (const std::exception& e) {
    std::cerr << "sylvbench: " << e.what() << '\n';
    return kExitRowFailed;
  }
  return any_failed ? kExitRowFailed : kExitOk;
}
