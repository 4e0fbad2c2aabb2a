#include "ortho_approx/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "ortho_approx/errors.hpp"
#include "ortho_approx/kernels.hpp"

namespace oapx {

GramResidual::GramResidual(std::size_t dim, std::vector<double> strict_upper,
                           Vector norm_squares)
    : dim_(dim), upper_(std::move(strict_upper)), norm_squares_(std::move(norm_squares)) {
  if (upper_.size() != dim * (dim - 1) / 2) {
    throw DimensionMismatch(dim * (dim - 1) / 2, upper_.size());
  }
  if (norm_squares_.size() != dim) throw DimensionMismatch(dim, norm_squares_.size());
  double sum = 0.0;
  for (double r : upper_) {
    sum += r * r;
    max_abs_ = std::max(max_abs_, std::abs(r));
  }
  frob_norm_ = std::sqrt(2.0 * sum);
  normalized_ = std::all_of(norm_squares_.begin(), norm_squares_.end(),
                            [](double w) { return std::abs(w - 1.0) <= 1e-12; });
}

DenseMatrix GramResidual::offdiag_matrix() const {
  DenseMatrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = offdiag(j, i);
  return m;
}

Vector column_norms(const DenseMatrix& a) {
  Vector norms(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) norms[j] = std::sqrt(kernels::sum_squares(a.column(j)));
  return norms;
}

std::optional<std::size_t> first_non_unit_column(const DenseMatrix& a, double tolerance) {
  const Vector norms = column_norms(a);
  for (std::size_t j = 0; j < norms.size(); ++j) {
    if (!(std::abs(norms[j] - 1.0) <= tolerance)) return j;
  }
  return std::nullopt;
}

DenseMatrix normalize_columns(const DenseMatrix& a, double zero_tolerance) {
  DenseMatrix out = a;
  for (std::size_t j = 0; j < out.cols(); ++j) {
    auto col = out.column(j);
    double norm = std::sqrt(kernels::sum_squares(col));
    if (!(norm > zero_tolerance)) throw ZeroColumn(j);
    // A single division can leave the norm a few ulps outside the unit band
    // for long columns; a second pass always lands inside it.
    for (int pass = 0; pass < 3 && std::abs(norm - 1.0) > kUnitNormTolerance; ++pass) {
      kernels::divide(col, norm);
      norm = std::sqrt(kernels::sum_squares(col));
    }
  }
  return out;
}

OrthonormalBasis gram_schmidt(const DenseMatrix& a, const GsOptions& options) {
  const std::size_t n = a.rows();
  const std::size_t d = a.cols();
  if (n < d) throw DimensionMismatch(d, n);

  DenseMatrix v(n, d);
  DenseMatrix g(d, d);
  Vector coeffs(d);
  Vector pass_coeffs(d);

  for (std::size_t i = 0; i < d; ++i) {
    const auto a_i = a.column(i);
    auto w = v.column(i);
    std::copy(a_i.begin(), a_i.end(), w.begin());
    std::fill(coeffs.begin(), coeffs.begin() + i, 0.0);

    const int passes = options.reorthogonalize ? 2 : 1;
    for (int pass = 0; pass < passes; ++pass) {
      if (options.mode == GsMode::Classical) {
        // All projections against the vector as it stood at the start of the pass.
        for (std::size_t m = 0; m < i; ++m) pass_coeffs[m] = kernels::dot(v.column(m), w);
        for (std::size_t m = 0; m < i; ++m) kernels::axpy(-pass_coeffs[m], v.column(m), w);
      } else {
        for (std::size_t m = 0; m < i; ++m) {
          pass_coeffs[m] = kernels::dot(v.column(m), w);
          kernels::axpy(-pass_coeffs[m], v.column(m), w);
        }
      }
      for (std::size_t m = 0; m < i; ++m) coeffs[m] += pass_coeffs[m];
    }

    const double norm = std::sqrt(kernels::sum_squares(w));
    const double a_norm = std::sqrt(kernels::sum_squares(a_i));
    if (!(norm >= options.rank_tolerance * a_norm) || !(norm > 0.0)) throw RankDeficient(i);
    kernels::divide(w, norm);

    // g_i = (e_i - sum_m coeffs_m g_m) / norm; g_m is zero below row m.
    auto g_i = g.column(i);
    g_i[i] = 1.0;
    for (std::size_t m = 0; m < i; ++m) {
      const auto g_m = g.column(m);
      for (std::size_t r = 0; r <= m; ++r) g_i[r] -= coeffs[m] * g_m[r];
    }
    for (std::size_t r = 0; r <= i; ++r) g_i[r] /= norm;
  }

  const double defect = orthogonality_defect(v);
  if (!(defect <= options.ortho_tolerance)) {
    throw LossOfOrthogonality(defect, options.ortho_tolerance);
  }
  return OrthonormalBasis(std::move(v), std::move(g), defect);
}

GramResidual gram_residual(const DenseMatrix& a) {
  const std::size_t d = a.cols();
  std::vector<double> upper;
  upper.reserve(d * (d - 1) / 2);
  Vector norm_squares(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) upper.push_back(kernels::dot(a.column(j), a.column(i)));
    norm_squares[i] = kernels::sum_squares(a.column(i));
  }
  return GramResidual(d, std::move(upper), std::move(norm_squares));
}

double project_energy(const DenseMatrix& basis, std::span<const double> x) {
  const Vector b = transpose_times(basis, x);
  return kernels::sum_squares(b);
}

double orthogonality_defect(const DenseMatrix& v) {
  double worst = 0.0;
  for (std::size_t i = 0; i < v.cols(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(kernels::dot(v.column(j), v.column(i)) - target));
    }
  }
  return worst;
}

}  // namespace oapx
