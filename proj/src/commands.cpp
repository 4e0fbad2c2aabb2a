#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "ortho_approx/error_analysis.hpp"
#include "ortho_approx/errors.hpp"
#include "ortho_approx/experiments.hpp"
#include "ortho_approx/matrix_io.hpp"
#include "ortho_approx/parallel.hpp"
#include "ortho_approx/random.hpp"

namespace oapx {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

Cell opt(const std::optional<double>& v) { return v ? Cell{*v} : Cell{nullptr}; }

std::vector<Cell> record_prefix(const ExperimentConfig& c) {
  return {std::string(to_string(c.command)), std::string(tool_version()), c.seed,
          static_cast<std::uint64_t>(c.n), static_cast<std::uint64_t>(c.d)};
}

std::vector<std::string> prefix_columns(std::string_view dim_name) {
  return {"command", "version", "seed", "n", std::string(dim_name)};
}

template <typename... Cells>
void append_row(Table& table, const ExperimentConfig& c, Cells&&... cells) {
  std::vector<Cell> row = record_prefix(c);
  (row.emplace_back(std::forward<Cells>(cells)), ...);
  table.rows.push_back(std::move(row));
}

int scaling_table(const ExperimentConfig& c, Table& table) {
  table.columns = prefix_columns("d");
  for (const char* col : {"variant", "path", "t", "status", "frob_R", "max_abs_R", "max_diag_ratio",
                          "max_offdiag_ratio", "raw_diag_ratio", "energy_abs_error", "energy_bound"})
    table.columns.emplace_back(col);

  int status = kExitOk;
  for (const ScalingRecord& r : run_scaling_study(c)) {
    const std::string variant(to_string(*c.variant));
    const auto path = static_cast<std::uint64_t>(r.path);
    if (r.metrics) {
      const ScalingMetrics& m = *r.metrics;
      append_row(table, c, variant, path, r.t, r.status, m.frob_r, m.max_abs_r, m.max_diag_ratio,
                 m.max_offdiag_ratio, m.raw_diag_ratio, m.energy_abs_error, opt(m.energy_bound));
    } else {
      status = kExitNumerical;
      append_row(table, c, variant, path, r.t, r.status, nullptr, nullptr, nullptr, nullptr,
                 nullptr, nullptr, nullptr);
    }
  }
  return status;
}

int tail_table(const ExperimentConfig& c, Table& table) {
  table.columns = prefix_columns("k");
  for (const char* col :
       {"epsilon", "trials", "hits", "empirical_rate", "bound", "wilson_upper"})
    table.columns.emplace_back(col);

  ExperimentConfig shown = c;
  if (c.command == Command::Concentration) shown.d = 2;
  const SeededStream stream(c.seed, 0);
  const MonteCarloOptions options{.negate_first = false, .workers = c.workers};
  for (double eps : c.epsilons) {
    const TailEstimate e = c.command == Command::Concentration
                               ? concentration_tail(stream, c.n, eps, c.trials, options)
                               : coherence_event_rate(stream, c.n, c.d, eps, c.trials, options);
    append_row(table, shown, e.epsilon, e.trials, e.hits, e.empirical_rate, e.bound,
               e.wilson_upper);
  }
  return kExitOk;
}

int haar_table(const ExperimentConfig& c, Table& table) {
  table.columns = prefix_columns("k");
  for (const char* col : {"variant", "trial", "frob_error", "max_abs_R", "frob_bound"})
    table.columns.emplace_back(col);

  const Variant variant = *c.variant;
  const HaarVariant hv =
      variant == Variant::Normalized ? HaarVariant::Normalized : HaarVariant::ScaledRaw;
  std::vector<HaarApproxErrors> results(c.trials);
  parallel_for(
      c.trials,
      [&](std::size_t t) { results[t] = haar_approx_errors(SeededStream(c.seed, t), c.n, c.d, hv); },
      c.workers);

  const double pairs = static_cast<double>(c.d) * static_cast<double>(c.d - 1) / 2.0;
  for (std::size_t t = 0; t < results.size(); ++t) {
    const auto& r = results[t];
    const Cell bound = variant == Variant::Normalized ? Cell{std::sqrt(pairs) * r.max_abs_r}
                                                      : Cell{nullptr};
    append_row(table, c, std::string(to_string(variant)), static_cast<std::uint64_t>(t),
               r.frob_error, r.max_abs_r, bound);
  }
  return kExitOk;
}

int bench_table(const ExperimentConfig& c, Table& table, std::ostream& err) {
  table.columns = prefix_columns("d");
  for (const char* col : {"pipeline", "repetitions", "median_seconds", "energy", "abs_error",
                          "max_abs_R", "first_order_bound", "ordering_holds"})
    table.columns.emplace_back(col);

  const BenchReport report = run_bench(c);
  for (const auto& p : report.pipelines) {
    append_row(table, c, p.name, c.trials, p.median_seconds, p.energy, p.abs_error,
               report.max_abs_r, report.first_order_bound,
               std::string(report.ordering_holds ? "true" : "false"));
  }
  if (report.ordering_required && !report.ordering_holds) {
    err << "bench: normalize-then-project was not faster than Gram-Schmidt-then-project\n";
    return kExitNumerical;
  }
  return kExitOk;
}

nlohmann::ordered_json file_header(const ExperimentConfig& c, const DenseMatrix& a) {
  nlohmann::ordered_json j;
  j["command"] = to_string(c.command);
  j["version"] = tool_version();
  j["seed"] = c.seed;
  j["n"] = a.rows();
  j["d"] = a.cols();
  return j;
}

void append_fields(nlohmann::ordered_json& target, const nlohmann::json& fields) {
  for (auto it = fields.begin(); it != fields.end(); ++it) target[it.key()] = it.value();
}

int file_command(const ExperimentConfig& c, std::ostream& out) {
  DenseMatrix a = io::read_matrix(c.in_path);
  if (c.normalize) a = normalize_columns(a);

  switch (c.command) {
    case Command::Orthogonalize: {
      const OrthonormalBasis gs = gram_schmidt(a);
      if (c.out_path.empty()) {
        io::write_csv(out, gs.matrix());
      } else {
        io::write_matrix(c.out_path, gs.matrix());
      }
      return kExitOk;
    }
    case Command::ErrorFactor: {
      const ErrorFactor factor =
          *c.variant == Variant::Raw ? error_factor_raw(a) : error_factor_normalized(a);
      nlohmann::ordered_json j = file_header(c, a);
      append_fields(j, to_json(factor));
      out << j.dump() << '\n';
      return kExitOk;
    }
    case Command::Certify: {
      const Vector x = io::read_vector(c.vec_path);
      const EnergyCertificate cert = energy_certificate(a, x, /*compute_exact=*/true);
      nlohmann::ordered_json j = file_header(c, a);
      append_fields(j, to_json(cert));
      out << j.dump() << '\n';
      return kExitOk;
    }
    default:
      return kExitUsage;
  }
}

}  // namespace

int run_command(ExperimentConfig config, std::ostream& out, std::ostream& err) {
  try {
    apply_defaults(config);
    validate(config);

    std::ostringstream buffer;
    int status = kExitOk;
    const bool writes_matrix_file =
        config.command == Command::Orthogonalize && !config.out_path.empty();

    switch (config.command) {
      case Command::Orthogonalize:
      case Command::ErrorFactor:
      case Command::Certify:
        status = file_command(config, buffer);
        break;
      default: {
        Table table;
        if (config.command == Command::ScalingStudy) {
          status = scaling_table(config, table);
        } else if (config.command == Command::HaarApprox) {
          status = haar_table(config, table);
        } else if (config.command == Command::Bench) {
          status = bench_table(config, table, err);
        } else {
          status = tail_table(config, table);
        }
        table.write(buffer, config.format);
        break;
      }
    }

    if (writes_matrix_file) return status;
    if (config.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(config.out_path, std::ios::binary | std::ios::trunc);
      if (!file) throw FileNotFound(config.out_path);
      file << buffer.str();
    }
    if (status == kExitNumerical && config.command == Command::ScalingStudy) {
      err << "scaling-study: some scales failed; see the status column\n";
    }
    return status;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.numerical() ? kExitNumerical : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace oapx
