#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ortho_approx/matrix.hpp"

namespace oapx {

// Off-diagonal Gram entries a_j^T a_i (j != i) together with the squared
// column norms w_i = |a_i|^2. For a column-normalized input this is the
// residual A^T A - I; otherwise it is A^T A - W with W = diag(w).
class GramResidual {
 public:
  GramResidual(std::size_t dim, std::vector<double> strict_upper, Vector norm_squares);

  std::size_t dim() const noexcept { return dim_; }

  // Symmetric access; the diagonal reads as zero.
  double offdiag(std::size_t j, std::size_t i) const noexcept {
    if (j == i) return 0.0;
    if (j > i) std::swap(j, i);
    return upper_[i * (i - 1) / 2 + j];
  }

  std::span<const double> norm_squares() const noexcept { return norm_squares_; }
  double frob_norm() const noexcept { return frob_norm_; }
  // max over j != i of |r_ji|; zero for a single column.
  double max_abs() const noexcept { return max_abs_; }
  // Every w_i within 1e-12 of one.
  bool normalized() const noexcept { return normalized_; }

  DenseMatrix offdiag_matrix() const;

 private:
  std::size_t dim_;
  std::vector<double> upper_;  // packed strict upper triangle, column by column
  Vector norm_squares_;
  double frob_norm_ = 0.0;
  double max_abs_ = 0.0;
  bool normalized_ = true;
};

enum class GsMode { Classical, Modified };

struct GsOptions {
  GsMode mode = GsMode::Classical;
  bool reorthogonalize = true;
  // A column is rank deficient when its residual falls below this times |a_i|.
  double rank_tolerance = 1e-12;
  // Upper bound on |V^T V - I|_max accepted for the result.
  double ortho_tolerance = 1e-10;
};

// Result of a Gram-Schmidt sweep: V together with the upper-triangular G such
// that V = A G for the matrix A that was swept.
class OrthonormalBasis {
 public:
  OrthonormalBasis(DenseMatrix basis, DenseMatrix coefficients, double ortho_defect)
      : basis_(std::move(basis)),
        coefficients_(std::move(coefficients)),
        ortho_defect_(ortho_defect) {}

  const DenseMatrix& matrix() const noexcept { return basis_; }
  const DenseMatrix& coefficients() const noexcept { return coefficients_; }
  double ortho_defect() const noexcept { return ortho_defect_; }

 private:
  DenseMatrix basis_;
  DenseMatrix coefficients_;
  double ortho_defect_;
};

inline constexpr double kDegenerateColumnTolerance = 1e-300;
inline constexpr double kUnitNormTolerance = 1e-14;

// Divides each column by its Euclidean norm. Columns whose norm is already
// within kUnitNormTolerance of one are copied unchanged, which makes the
// operation idempotent bit for bit. Throws ZeroColumn.
DenseMatrix normalize_columns(const DenseMatrix& a,
                              double zero_tolerance = kDegenerateColumnTolerance);

// Euclidean norm of each column.
Vector column_norms(const DenseMatrix& a);

// First column whose norm differs from one by more than `tolerance`.
std::optional<std::size_t> first_non_unit_column(const DenseMatrix& a, double tolerance);

// Orthonormalizes the columns of `a` in order 0..d-1, tracking G with V = A G.
// Throws RankDeficient or LossOfOrthogonality.
OrthonormalBasis gram_schmidt(const DenseMatrix& a, const GsOptions& options = {});

GramResidual gram_residual(const DenseMatrix& a);

// |B^T x|^2. Throws DimensionMismatch.
double project_energy(const DenseMatrix& basis, std::span<const double> x);

// |V^T V - I|_max
double orthogonality_defect(const DenseMatrix& v);

}  // namespace oapx
