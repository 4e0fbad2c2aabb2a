#include "ortho_approx/error_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "ortho_approx/errors.hpp"
#include "ortho_approx/kernels.hpp"

namespace oapx {

std::string_view to_string(BasisKind kind) {
  return kind == BasisKind::Normalized ? "normalized" : "raw";
}

ErrorFactor::ErrorFactor(DenseMatrix u, BasisKind kind, double consistency_residual)
    : u_(std::move(u)), kind_(kind), consistency_residual_(consistency_residual) {
  if (u_.rows() != u_.cols()) throw DimensionMismatch(u_.cols(), u_.rows());
  for (std::size_t i = 0; i < u_.cols(); ++i)
    for (std::size_t j = i + 1; j < u_.rows(); ++j)
      if (u_(j, i) != 0.0) throw InvalidMatrix("error factor must be upper triangular");
}

ErrorFactor error_factor_from(const DenseMatrix& basis, const OrthonormalBasis& gs,
                              BasisKind kind) {
  DenseMatrix u = gs.coefficients();
  for (std::size_t i = 0; i < u.cols(); ++i) u(i, i) -= 1.0;
  const DenseMatrix gap = gs.matrix() - basis;
  const double residual = max_abs_diff(matmul(basis, u), gap);
  return ErrorFactor(std::move(u), kind, residual);
}

ErrorFactor error_factor_normalized(const DenseMatrix& a_bar, const GsOptions& options) {
  if (const auto bad = first_non_unit_column(a_bar, kNormalizedInputTolerance)) {
    throw NotNormalized(*bad);
  }
  return error_factor_from(a_bar, gram_schmidt(a_bar, options), BasisKind::Normalized);
}

ErrorFactor error_factor_raw(const DenseMatrix& a, const GsOptions& options) {
  return error_factor_from(a, gram_schmidt(a, options), BasisKind::Raw);
}

double RemainderRatios::max_diag_ratio() const {
  return diag_ratios.empty() ? 0.0 : *std::max_element(diag_ratios.begin(), diag_ratios.end());
}

double RemainderRatios::max_abs_offdiag_ratio() const { return max_abs(offdiag_ratios); }

RemainderRatios remainder_ratios(const ErrorFactor& factor, const GramResidual& residual) {
  const std::size_t d = factor.dim();
  if (residual.dim() != d) throw DimensionMismatch(d, residual.dim());
  const double frob = residual.frob_norm();
  if (frob == 0.0) throw ExactlyOrthonormal();
  const double frob_sq = frob * frob;

  RemainderRatios out{Vector(d), DenseMatrix(d, d), Vector(d), 0.0};
  const auto w = residual.norm_squares();
  double worst_centered = 0.0;
  double worst_first_order = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    out.diag_ratios[i] = factor(i, i) / frob_sq;
    for (std::size_t j = 0; j < i; ++j) {
      out.offdiag_ratios(j, i) = (factor(j, i) + residual.offdiag(j, i)) / frob;
    }
    out.raw_diag_centered[i] = factor(i, i) - (1.0 - w[i]) / 2.0;
    worst_centered = std::max(worst_centered, std::abs(out.raw_diag_centered[i]));
    worst_first_order = std::max(worst_first_order, std::abs(1.0 - w[i]));
  }
  out.raw_diag_ratio = worst_centered / std::max(worst_first_order, frob_sq);
  return out;
}

EnergyCertificate energy_certificate(const DenseMatrix& a_bar, std::span<const double> x,
                                     bool compute_exact, const GsOptions& options) {
  if (x.size() != a_bar.rows()) throw DimensionMismatch(a_bar.rows(), x.size());
  if (const auto bad = first_non_unit_column(a_bar, kNormalizedInputTolerance)) {
    throw NotNormalized(*bad);
  }
  const GramResidual residual = gram_residual(a_bar);

  EnergyCertificate cert;
  cert.approx_energy = project_energy(a_bar, x);
  cert.first_order_bound =
      static_cast<double>(a_bar.cols()) * cert.approx_energy * residual.max_abs();
  cert.frob_term_scale = residual.frob_norm();
  if (compute_exact) {
    const OrthonormalBasis gs = gram_schmidt(a_bar, options);
    cert.exact_energy = project_energy(gs.matrix(), x);
    cert.abs_error = std::abs(*cert.exact_energy - cert.approx_energy);
  }
  return cert;
}

Vector correction_vector(const ErrorFactor& factor, std::span<const double> b) {
  const std::size_t d = factor.dim();
  if (b.size() != d) throw DimensionMismatch(d, b.size());
  Vector c(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t m = 0; m <= i; ++m) c[i] += factor(m, i) * b[m];
  return c;
}

nlohmann::json to_json(const ErrorFactor& factor) {
  const std::size_t d = factor.dim();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t j = 0; j < d; ++j) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t i = j; i < d; ++i) row.push_back(factor(j, i));
    rows.push_back(std::move(row));
  }
  return {
      {"dim", d},
      {"basis_kind", to_string(factor.basis_kind())},
      {"U", std::move(rows)},
      {"consistency_residual", factor.consistency_residual()},
  };
}

nlohmann::json to_json(const EnergyCertificate& certificate) {
  nlohmann::json out = {
      {"approx_energy", certificate.approx_energy},
      {"exact_energy", nullptr},
      {"abs_error", nullptr},
      {"first_order_bound", certificate.first_order_bound},
      {"frob_term_scale", certificate.frob_term_scale},
  };
  if (certificate.exact_energy) out["exact_energy"] = *certificate.exact_energy;
  if (certificate.abs_error) out["abs_error"] = *certificate.abs_error;
  return out;
}

}  // namespace oapx
