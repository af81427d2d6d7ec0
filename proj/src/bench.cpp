#include "sylvester/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sylv::bench {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "NaN") return std::nan("");
  if (s == "Inf") return INFINITY;
  if (s == "-Inf") return -INFINITY;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("parse_csv: bad number '" + s + "'");
  return v;
}

std::string format_fixed(double v, int digits) {
  if (!std::isfinite(v)) return format_double(v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string format_sci(double v) {
  if (!std::isfinite(v)) return format_double(v);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

bool needs_alpha(Method m) { return m != Method::kBicgstab; }

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kHss: return "hss";
    case Method::kMrhss: return "mrhss";
    case Method::kBicgstab: return "bicgstab";
    case Method::kHssBicgstab: return "hss-bicgstab";
    case Method::kMrhssBicgstab: return "mrhss-bicgstab";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::kHss, Method::kMrhss, Method::kBicgstab, Method::kHssBicgstab, Method::kMrhssBicgstab}) {
    if (method_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected hss, mrhss, bicgstab, hss-bicgstab or mrhss-bicgstab)");
}

std::vector<Method> parse_method_list(std::string_view comma_separated) {
  std::vector<Method> out;
  std::size_t pos = 0;
  while (pos <= comma_separated.size()) {
    const std::size_t next = std::min(comma_separated.find(',', pos), comma_separated.size());
    const std::string_view item = comma_separated.substr(pos, next - pos);
    if (!item.empty()) out.push_back(parse_method(item));
    pos = next + 1;
  }
  return out;
}

std::string example_name(ProblemFamily family) {
  switch (family) {
    case ProblemFamily::kExample1: return "example1";
    case ProblemFamily::kExample2: return "example2";
    case ProblemFamily::kExternal: return "example3";
  }
  return "?";
}

std::string_view row_status_name(RowStatus s) {
  switch (s) {
    case RowStatus::kOk: return "ok";
    case RowStatus::kNotConverged: return "not-converged";
    case RowStatus::kDiverged: return "diverged";
    case RowStatus::kFailed: return "failed";
  }
  return "?";
}

RowStatus parse_row_status(std::string_view name) {
  for (RowStatus s : {RowStatus::kOk, RowStatus::kNotConverged, RowStatus::kDiverged, RowStatus::kFailed}) {
    if (row_status_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown row status '" + std::string(name) + "'");
}

std::vector<ExperimentRow> run_experiment(const ProblemSpec& spec, const std::vector<Method>& methods,
                                          const ExperimentOverrides& overrides) {
  std::vector<ExperimentRow> rows;
  if (methods.empty()) return rows;

  ExperimentRow base;
  base.example = example_name(spec.family);
  base.n = spec.n;
  base.m = spec.m;
  base.r = spec.r;
  base.t = spec.t;
  base.inner_tol = overrides.inner_tol;
  base.outer_tol = overrides.outer_tol;
  base.maxit = overrides.maxit;
  base.seed = overrides.seed;
  base.res_norm = std::nan("");

  auto failed_row = [&](Method m, const std::string& why) {
    ExperimentRow row = base;
    row.method = method_name(m);
    row.status = RowStatus::kFailed;
    row.error = why;
    return row;
  };

  std::optional<SylvesterProblem> problem;
  try {
    problem.emplace(make_problem(spec));
  } catch (const std::exception& e) {
    for (Method m : methods) rows.push_back(failed_row(m, e.what()));
    return rows;
  }
  base.n = problem->n();
  base.m = problem->m();

  std::optional<double> alpha = overrides.alpha;
  std::string alpha_error;
  auto ensure_alpha = [&]() -> bool {
    if (alpha) return true;
    if (!alpha_error.empty()) return false;
    try {
      alpha = select_alpha(problem->a(), problem->b(), 1e-8, overrides.seed);
    } catch (const std::exception& e) {
      alpha_error = std::string("alpha selection failed: ") + e.what();
    }
    return alpha.has_value();
  };

  OuterOptions outer;
  outer.outer_tol = overrides.outer_tol;
  outer.maxit = overrides.maxit;
  outer.inner.tol = overrides.inner_tol;

  PreconditionerOptions precond_options;
  precond_options.eps = overrides.inner_tol;
  precond_options.max_sweeps = overrides.precond_sweeps;
  precond_options.inner.tol = overrides.inner_tol;

  for (Method m : methods) {
    if (needs_alpha(m) && !ensure_alpha()) {
      rows.push_back(failed_row(m, alpha_error));
      continue;
    }
    ExperimentRow row = base;
    row.method = method_name(m);
    row.alpha = alpha.value_or(0.0);
    try {
      SolveResult result;
      switch (m) {
        case Method::kHss:
          result = hss_solve(*problem, *alpha, outer);
          break;
        case Method::kMrhss:
          result = mrhss_solve(*problem, *alpha, outer);
          break;
        case Method::kBicgstab:
          result = bicgstab_solve(*problem, nullptr, overrides.outer_tol, overrides.maxit);
          break;
        case Method::kHssBicgstab:
        case Method::kMrhssBicgstab: {
          const auto kind = m == Method::kHssBicgstab ? SplittingKind::kHss : SplittingKind::kMrhss;
          const Preconditioner p = splitting_preconditioner(kind, *problem, *alpha, precond_options);
          result = bicgstab_solve(*problem, &p, overrides.outer_tol, overrides.maxit);
          break;
        }
      }
      const SolveReport& rep = result.report;
      row.iterations = rep.iterations;
      row.wall_time_ms = rep.wall_time.count() * 1e3;
      row.converged = rep.converged;
      row.res_norm = rep.final_residual;
      switch (rep.status) {
        case SolveStatus::kConverged: row.status = RowStatus::kOk; break;
        case SolveStatus::kMaxIterations: row.status = RowStatus::kNotConverged; break;
        case SolveStatus::kDiverged:
          row.status = RowStatus::kDiverged;
          row.res_norm = std::nan("");
          break;
      }
    } catch (const std::exception& e) {
      row = failed_row(m, e.what());
      row.alpha = alpha.value_or(0.0);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_table(const std::vector<ExperimentRow>& rows, TableFormat format, std::ostream& out) {
  if (format == TableFormat::kCsv) {
    out << kCsvHeader << '\n';
    for (const auto& row : rows) {
      out << row.example << ',' << row.n << ',' << row.m << ',' << row.method << ',' << format_double(row.alpha)
          << ',' << row.iterations << ',' << format_fixed(row.wall_time_ms, 3) << ',' << format_double(row.res_norm)
          << ',' << (row.converged ? "true" : "false") << ',' << format_double(row.r) << ','
          << format_double(row.t) << ',' << format_double(row.inner_tol) << ',' << format_double(row.outer_tol)
          << ',' << row.maxit << ',' << row.seed << ',' << row_status_name(row.status) << '\n';
    }
    return;
  }

  if (rows.empty()) throw std::invalid_argument("emit_table: markdown output needs at least one row");

  // One table per example; methods become column groups, sizes become rows.
  std::vector<std::string> examples;
  for (const auto& row : rows)
    if (std::find(examples.begin(), examples.end(), row.example) == examples.end()) examples.push_back(row.example);

  for (std::size_t e = 0; e < examples.size(); ++e) {
    std::vector<std::string> methods;
    std::vector<std::pair<std::size_t, std::size_t>> sizes;
    std::map<std::pair<std::pair<std::size_t, std::size_t>, std::string>, const ExperimentRow*> cell;
    for (const auto& row : rows) {
      if (row.example != examples[e]) continue;
      if (std::find(methods.begin(), methods.end(), row.method) == methods.end()) methods.push_back(row.method);
      const auto size = std::make_pair(row.n, row.m);
      if (std::find(sizes.begin(), sizes.end(), size) == sizes.end()) sizes.push_back(size);
      cell.emplace(std::make_pair(size, row.method), &row);
    }

    if (e > 0) out << '\n';
    out << "### " << examples[e] << "\n\n| (n,m) |";
    for (const auto& method : methods) {
      const std::string name = upper(method);
      out << ' ' << name << " CPU (ms) | " << name << " IT | " << name << " res-norm |";
    }
    out << "\n|---|";
    for (std::size_t i = 0; i < methods.size(); ++i) out << "---:|---:|---:|";
    out << '\n';
    for (const auto& size : sizes) {
      out << "| (" << size.first << ',' << size.second << ") |";
      for (const auto& method : methods) {
        const auto it = cell.find({size, method});
        if (it == cell.end()) {
          out << " | | |";
          continue;
        }
        const ExperimentRow& row = *it->second;
        std::string iterations;
        std::string cpu = format_fixed(row.wall_time_ms, 2);
        switch (row.status) {
          case RowStatus::kOk: iterations = std::to_string(row.iterations); break;
          case RowStatus::kNotConverged:
            iterations = ">" + std::to_string(row.maxit);
            cpu = ">" + cpu;
            break;
          case RowStatus::kDiverged:
          case RowStatus::kFailed:
            iterations = "†";
            cpu = "†";
            break;
        }
        out << ' ' << cpu << " | " << iterations << " | " << format_sci(row.res_norm) << " |";
      }
      out << '\n';
    }
  }
}

void emit_table(const std::vector<ExperimentRow>& rows, TableFormat format, const std::filesystem::path& dest) {
  std::ofstream file(dest);
  if (!file) throw std::runtime_error("emit_table: cannot open " + dest.string() + " for writing");
  emit_table(rows, format, file);
  file.flush();
  if (!file) throw std::runtime_error("emit_table: write to " + dest.string() + " failed");
}

std::vector<ExperimentRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("parse_csv: unexpected header");
  std::vector<ExperimentRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 16) throw std::invalid_argument("parse_csv: expected 16 fields, got " + std::to_string(f.size()));
    ExperimentRow row;
    row.example = f[0];
    row.n = std::stoull(f[1]);
    row.m = std::stoull(f[2]);
    row.method = f[3];
    row.alpha = parse_double(f[4]);
    row.iterations = std::stoull(f[5]);
    row.wall_time_ms = parse_double(f[6]);
    row.res_norm = parse_double(f[7]);
    if (f[8] != "true" && f[8] != "false") throw std::invalid_argument("parse_csv: bad converged flag");
    row.converged = f[8] == "true";
    row.r = parse_double(f[9]);
    row.t = parse_double(f[10]);
    row.inner_tol = parse_double(f[11]);
    row.outer_tol = parse_double(f[12]);
    row.maxit = std::stoull(f[13]);
    row.seed = std::stoull(f[14]);
    row.status = parse_row_status(f[15]);
    rows.push_back(std::move(row));
  }
  return rows;
}

ProblemSpec spec_from_row(const ExperimentRow& row, std::optional<std::filesystem::path> external_path) {
  ProblemSpec spec;
  if (row.example == "example1") {
    spec.family = ProblemFamily::kExample1;
  } else if (row.example == "example2") {
    spec.family = ProblemFamily::kExample2;
  } else if (row.example == "example3") {
    spec.family = ProblemFamily::kExternal;
    spec.path = std::move(external_path);
  } else {
    throw std::invalid_argument("spec_from_row: unknown example '" + row.example + "'");
  }
  spec.n = row.n;
  spec.m = row.m;
  spec.r = row.r;
  spec.t = row.t;
  return spec;
}

ExperimentOverrides overrides_from_row(const ExperimentRow& row) {
  ExperimentOverrides o;
  if (row.alpha > 0.0) o.alpha = row.alpha;
  o.outer_tol = row.outer_tol;
  o.inner_tol = row.inner_tol;
  o.maxit = row.maxit;
  o.seed = row.seed;
  return o;
}

}  // namespace sylv::bench
