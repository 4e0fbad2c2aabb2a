#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "json.hpp"
#include "ortho_approx/linalg.hpp"
#include "ortho_approx/matrix.hpp"

namespace oapx {

enum class BasisKind { Normalized, Raw };

std::string_view to_string(BasisKind kind);

// Upper-triangular U with V - B = B U, where B is the approximating basis
// (the normalized matrix or the raw data matrix) and V its Gram-Schmidt
// orthonormalization. U is always G - I for the coefficient matrix G of the
// sweep over B.
class ErrorFactor {
 public:
  ErrorFactor(DenseMatrix u, BasisKind kind, double consistency_residual);

  std::size_t dim() const noexcept { return u_.cols(); }
  const DenseMatrix& matrix() const noexcept { return u_; }
  double operator()(std::size_t j, std::size_t i) const noexcept { return u_(j, i); }
  BasisKind basis_kind() const noexcept { return kind_; }
  // |B U - (V - B)|_max
  double consistency_residual() const noexcept { return consistency_residual_; }

 private:
  DenseMatrix u_;
  BasisKind kind_;
  double consistency_residual_;
};

inline constexpr double kNormalizedInputTolerance = 1e-10;

// Throws NotNormalized, RankDeficient.
ErrorFactor error_factor_normalized(const DenseMatrix& a_bar, const GsOptions& options = {});
// Throws RankDeficient.
ErrorFactor error_factor_raw(const DenseMatrix& a, const GsOptions& options = {});
// Reuses an existing sweep over `basis`.
ErrorFactor error_factor_from(const DenseMatrix& basis, const OrthonormalBasis& gs,
                              BasisKind kind);

// Empirical remainder ratios.
//   diag_ratios[i]        = u_ii / |R|_F^2
//   offdiag_ratios(j, i)  = (u_ji + r_ji) / |R|_F   for j < i, zero elsewhere
//   raw_diag_centered[i]  = u_ii - (1 - w_ii) / 2
// raw_diag_ratio scales the centered diagonal by the first-order size of the
// perturbation:  max_i |centered_i| / max(max_i |1 - w_ii|, |R|_F^2).
struct RemainderRatios {
  Vector diag_ratios;
  DenseMatrix offdiag_ratios;
  Vector raw_diag_centered;
  double raw_diag_ratio = 0.0;

  double max_diag_ratio() const;
  double max_abs_offdiag_ratio() const;
};

// Throws ExactlyOrthonormal when residual.frob_norm() == 0, DimensionMismatch
// when the two inputs disagree on d.
RemainderRatios remainder_ratios(const ErrorFactor& factor, const GramResidual& residual);

struct EnergyCertificate {
  double approx_energy = 0.0;               // |B^T x|^2
  std::optional<double> exact_energy;       // |V^T x|^2
  std::optional<double> abs_error;          // |exact - approx|
  double first_order_bound = 0.0;           // d |B^T x|^2 max_{j!=i} |r_ji|
  double frob_term_scale = 0.0;             // |R|_F, the scale of the unknown remainder term

  bool within_first_order_bound(double slack = 1.0) const {
    return !abs_error || *abs_error <= slack * first_order_bound;
  }
};

// Throws DimensionMismatch, NotNormalized.
EnergyCertificate energy_certificate(const DenseMatrix& a_bar, std::span<const double> x,
                                     bool compute_exact, const GsOptions& options = {});

// U^T b: the amount by which V^T x differs from B^T x when b = B^T x.
Vector correction_vector(const ErrorFactor& factor, std::span<const double> b);

nlohmann::json to_json(const ErrorFactor& factor);
nlohmann::json to_json(const EnergyCertificate& certificate);

}  // namespace oapx
