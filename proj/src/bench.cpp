#include <algorithm>
#include <chrono>
#include <cmath>

#include "ortho_approx/experiments.hpp"
#include "ortho_approx/random.hpp"

namespace oapx {
namespace {

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

template <typename Fn>
BenchPipeline time_pipeline(std::string name, std::uint64_t reps, Fn&& fn) {
  BenchPipeline p;
  p.name = std::move(name);
  for (std::uint64_t r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    p.energy = fn();
    const auto stop = std::chrono::steady_clock::now();
    p.seconds.push_back(std::chrono::duration<double>(stop - start).count());
  }
  p.median_seconds = median(p.seconds);
  return p;
}

}  // namespace

BenchReport run_bench(const ExperimentConfig& raw_config) {
  ExperimentConfig config = raw_config;
  apply_defaults(config);
  validate(config);

  // Entries of variance 1/n so the raw matrix is itself a usable basis.
  const DenseMatrix a = (1.0 / std::sqrt(static_cast<double>(config.n))) *
                        gaussian_matrix(SeededStream(config.seed, 0), config.n, config.d);
  const DenseMatrix x_col = gaussian_matrix(SeededStream(config.seed, 1), config.n, 1);
  const std::span<const double> x = x_col.data();

  BenchReport report;
  report.pipelines.push_back(time_pipeline("gs_project", config.trials, [&] {
    return project_energy(gram_schmidt(a).matrix(), x);
  }));
  report.pipelines.push_back(time_pipeline("normalize_project", config.trials, [&] {
    return project_energy(normalize_columns(a), x);
  }));
  report.pipelines.push_back(
      time_pipeline("raw_project", config.trials, [&] { return project_energy(a, x); }));

  const double exact = report.pipelines[0].energy;
  for (auto& p : report.pipelines) p.abs_error = std::abs(p.energy - exact);

  const GramResidual residual = gram_residual(normalize_columns(a));
  report.max_abs_r = residual.max_abs();
  report.first_order_bound =
      static_cast<double>(config.d) * report.pipelines[1].energy * residual.max_abs();
  report.ordering_holds = report.pipelines[1].median_seconds < report.pipelines[0].median_seconds;
  report.ordering_required = config.n >= 4096 && config.d >= 128;
  return report;
}

}  // namespace oapx
