#include <cmath>

#include "ortho_approx/error_analysis.hpp"
#include "ortho_approx/errors.hpp"
#include "ortho_approx/experiments.hpp"
#include "ortho_approx/parallel.hpp"
#include "ortho_approx/random.hpp"

namespace oapx {

// Streams of path p: 4p (Q), 4p+1 (E), 4p+2 (D), 4p+3 (x).
PerturbationPath make_perturbation_path(std::uint64_t seed, std::size_t path, std::size_t n,
                                        std::size_t d) {
  const std::uint64_t base = 4 * static_cast<std::uint64_t>(path);
  DenseMatrix q = haar_reference(SeededStream(seed, base), n, d).matrix();
  // Entries of variance 1/n give E columns of roughly unit length.
  DenseMatrix e =
      (1.0 / std::sqrt(static_cast<double>(n))) * gaussian_matrix(SeededStream(seed, base + 1), n, d);
  const DenseMatrix diag = gaussian_matrix(SeededStream(seed, base + 2), d, 1);
  const DenseMatrix x = gaussian_matrix(SeededStream(seed, base + 3), n, 1);
  return {std::move(q), std::move(e), Vector(diag.data().begin(), diag.data().end()),
          Vector(x.data().begin(), x.data().end())};
}

DenseMatrix path_point(const PerturbationPath& path, double t, Variant variant) {
  if (variant == Variant::Normalized) return normalize_columns(path.q + t * path.e);

  DenseMatrix a = t * path.e;
  for (std::size_t i = 0; i < a.cols(); ++i) {
    const double stretch = 1.0 + t * path.d[i];
    auto col = a.column(i);
    const auto q_i = path.q.column(i);
    for (std::size_t r = 0; r < col.size(); ++r) col[r] += stretch * q_i[r];
  }
  return a;
}

ScalingRecord evaluate_path_point(const PerturbationPath& path, double t, Variant variant) {
  ScalingRecord record;
  record.t = t;
  try {
    const DenseMatrix b = path_point(path, t, variant);
    const GramResidual residual = gram_residual(b);
    const OrthonormalBasis gs = gram_schmidt(b);
    const BasisKind kind = variant == Variant::Normalized ? BasisKind::Normalized : BasisKind::Raw;
    const ErrorFactor factor = error_factor_from(b, gs, kind);
    const RemainderRatios ratios = remainder_ratios(factor, residual);

    ScalingMetrics m;
    m.frob_r = residual.frob_norm();
    m.max_abs_r = residual.max_abs();
    m.max_diag_ratio = ratios.max_diag_ratio();
    m.max_offdiag_ratio = ratios.max_abs_offdiag_ratio();
    m.raw_diag_ratio = ratios.raw_diag_ratio;

    const double approx = project_energy(b, path.x);
    const double exact = project_energy(gs.matrix(), path.x);
    m.energy_abs_error = std::abs(exact - approx);
    if (variant == Variant::Normalized) {
      m.energy_bound = static_cast<double>(b.cols()) * approx * residual.max_abs();
    }
    record.metrics = m;
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::RankDeficient: record.status = "rank_deficient"; break;
      case ErrorKind::LossOfOrthogonality: record.status = "loss_of_orthogonality"; break;
      case ErrorKind::ExactlyOrthonormal: record.status = "exactly_orthonormal"; break;
      default: throw;
    }
  }
  return record;
}

std::vector<ScalingRecord> run_scaling_study(const ExperimentConfig& raw_config) {
  ExperimentConfig config = raw_config;
  apply_defaults(config);
  validate(config);
  const Variant variant = config.variant.value_or(Variant::Normalized);
  const std::size_t paths = config.trials;
  const std::size_t scales = config.scales.size();

  std::vector<std::optional<PerturbationPath>> built(paths);
  parallel_for(
      paths, [&](std::size_t p) { built[p] = make_perturbation_path(config.seed, p, config.n, config.d); },
      config.workers);

  std::vector<ScalingRecord> records(paths * scales);
  parallel_for(
      records.size(),
      [&](std::size_t idx) {
        const std::size_t p = idx / scales;
        records[idx] = evaluate_path_point(*built[p], config.scales[idx % scales], variant);
        records[idx].path = p;
      },
      config.workers);
  return records;
}

}  // namespace oapx
