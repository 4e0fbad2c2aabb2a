#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ortho_approx/linalg.hpp"
#include "ortho_approx/matrix.hpp"

namespace oapx {

std::string_view tool_version();

enum class Command {
  Orthogonalize,
  ErrorFactor,
  Certify,
  ScalingStudy,
  Concentration,
  Coherence,
  HaarApprox,
  Bench,
};

enum class Variant { Normalized, ScaledRaw, Raw };
enum class OutputFormat { Csv, Jsonl };

std::string_view to_string(Command command);
std::string_view to_string(Variant variant);
std::optional<Command> parse_command(std::string_view text);
std::optional<Variant> parse_variant(std::string_view text);

// Zero / empty fields are filled per command by apply_defaults().
struct ExperimentConfig {
  Command command = Command::ScalingStudy;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t d = 0;  // d or k, depending on the command
  std::uint64_t trials = 0;
  std::vector<double> scales;
  std::vector<double> epsilons;
  std::optional<Variant> variant;
  std::string in_path;
  std::string vec_path;
  std::string out_path;  // empty: write to the caller's stream
  OutputFormat format = OutputFormat::Csv;
  bool normalize = false;
  std::size_t workers = 0;  // 0: ORTHO_APPROX_THREADS / hardware
};

void apply_defaults(ExperimentConfig& config);
// Throws ConfigInvalid naming the offending field.
void validate(const ExperimentConfig& config);

// Tabular output shared by every experiment command. Cells that are null
// print as an empty CSV field and as JSON null.
using Cell = std::variant<std::nullptr_t, std::string, std::int64_t, std::uint64_t, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void write(std::ostream& out, OutputFormat format) const;
};

// --- scaling study ---------------------------------------------------------

struct ScalingMetrics {
  double frob_r = 0.0;
  double max_abs_r = 0.0;
  double max_diag_ratio = 0.0;     // max_i u_ii / |R|_F^2
  double max_offdiag_ratio = 0.0;  // max_{j<i} |u_ji + r_ji| / |R|_F
  double raw_diag_ratio = 0.0;     // see RemainderRatios
  double energy_abs_error = 0.0;
  std::optional<double> energy_bound;  // first-order certificate, normalized paths only
};

struct ScalingRecord {
  std::size_t path = 0;
  double t = 0.0;
  std::optional<ScalingMetrics> metrics;  // empty when the sweep failed at this scale
  std::string status = "ok";
};

// One perturbation path. Normalized: B(t) = normalize_columns(Q + t E).
// Raw: B(t) = Q (I + t diag(D)) + t E.
struct PerturbationPath {
  DenseMatrix q;
  DenseMatrix e;
  Vector d;  // only read by the raw variant
  Vector x;
};

PerturbationPath make_perturbation_path(std::uint64_t seed, std::size_t path, std::size_t n,
                                        std::size_t d);
DenseMatrix path_point(const PerturbationPath& path, double t, Variant variant);
// Never throws for numerical failures; they are recorded in `status`.
ScalingRecord evaluate_path_point(const PerturbationPath& path, double t, Variant variant);

std::vector<ScalingRecord> run_scaling_study(const ExperimentConfig& config);

// --- benchmark ---------------------------------------------------------------

struct BenchPipeline {
  std::string name;
  std::vector<double> seconds;
  double median_seconds = 0.0;
  double energy = 0.0;
  double abs_error = 0.0;  // against the Gram-Schmidt pipeline
};

struct BenchReport {
  std::vector<BenchPipeline> pipelines;  // gs_project, normalize_project, raw_project
  double max_abs_r = 0.0;
  double first_order_bound = 0.0;
  // median(normalize_project) < median(gs_project)
  bool ordering_holds = false;
  // Ordering is only required at n >= 4096, d >= 128.
  bool ordering_required = false;
};

BenchReport run_bench(const ExperimentConfig& config);

// --- command runner ----------------------------------------------------------

// Runs one command and returns the process exit code: 0 success, 1 numerical
// failure, 2 usage / configuration / file error. Diagnostics go to `err`.
int run_command(ExperimentConfig config, std::ostream& out, std::ostream& err);

}  // namespace oapx
