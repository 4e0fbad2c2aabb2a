#include "ortho_approx/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ortho_approx/errors.hpp"
#include "ortho_approx/kernels.hpp"

namespace oapx {
namespace {

void require_same_shape(const DenseMatrix& lhs, const DenseMatrix& rhs) {
  if (lhs.rows() != rhs.rows()) throw DimensionMismatch(lhs.rows(), rhs.rows());
  if (lhs.cols() != rhs.cols()) throw DimensionMismatch(lhs.cols(), rhs.cols());
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) throw InvalidMatrix("matrix dimensions must be positive");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major)
    : rows_(rows), cols_(cols), data_(std::move(column_major)) {
  if (rows == 0 || cols == 0) throw InvalidMatrix("matrix dimensions must be positive");
  if (data_.size() != rows * cols) {
    throw InvalidMatrix("expected " + std::to_string(rows * cols) + " entries, got " +
                        std::to_string(data_.size()));
  }
  const auto bad = std::find_if(data_.begin(), data_.end(),
                                [](double v) { return !std::isfinite(v); });
  if (bad != data_.end()) {
    const auto index = static_cast<std::size_t>(bad - data_.begin());
    throw InvalidMatrix("non-finite entry at row " + std::to_string(index % rows) +
                        ", column " + std::to_string(index / rows));
  }
}

DenseMatrix DenseMatrix::from_columns(
    std::initializer_list<std::initializer_list<double>> columns) {
  std::vector<Vector> cols;
  for (const auto& c : columns) cols.emplace_back(c);
  return from_columns(cols);
}

DenseMatrix DenseMatrix::from_columns(const std::vector<Vector>& columns) {
  if (columns.empty()) throw InvalidMatrix("matrix needs at least one column");
  const std::size_t rows = columns.front().size();
  std::vector<double> data;
  data.reserve(rows * columns.size());
  for (const auto& c : columns) {
    if (c.size() != rows) throw DimensionMismatch(rows, c.size());
    data.insert(data.end(), c.begin(), c.end());
  }
  return DenseMatrix(rows, columns.size(), std::move(data));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::column_vector(std::span<const double> values) {
  return DenseMatrix(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

DenseMatrix matmul(const DenseMatrix& lhs, const DenseMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw DimensionMismatch(lhs.cols(), rhs.rows());
  DenseMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    auto target = out.column(j);
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double scale = rhs(k, j);
      if (scale != 0.0) kernels::axpy(scale, lhs.column(k), target);
    }
  }
  return out;
}

DenseMatrix transpose(const DenseMatrix& m) {
  DenseMatrix out(m.cols(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(j, i) = m(i, j);
  return out;
}

DenseMatrix operator-(const DenseMatrix& lhs, const DenseMatrix& rhs) {
  require_same_shape(lhs, rhs);
  std::vector<double> data(lhs.data().begin(), lhs.data().end());
  const auto other = rhs.data();
  for (std::size_t i = 0; i < data.size(); ++i) data[i] -= other[i];
  return DenseMatrix(lhs.rows(), lhs.cols(), std::move(data));
}

DenseMatrix operator+(const DenseMatrix& lhs, const DenseMatrix& rhs) {
  require_same_shape(lhs, rhs);
  std::vector<double> data(lhs.data().begin(), lhs.data().end());
  const auto other = rhs.data();
  for (std::size_t i = 0; i < data.size(); ++i) data[i] += other[i];
  return DenseMatrix(lhs.rows(), lhs.cols(), std::move(data));
}

DenseMatrix operator*(double scale, const DenseMatrix& m) {
  std::vector<double> data(m.data().begin(), m.data().end());
  for (double& v : data) v *= scale;
  return DenseMatrix(m.rows(), m.cols(), std::move(data));
}

double max_abs_diff(const DenseMatrix& lhs, const DenseMatrix& rhs) {
  require_same_shape(lhs, rhs);
  const auto a = lhs.data();
  const auto b = rhs.data();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double max_abs(const DenseMatrix& m) {
  double worst = 0.0;
  for (double v : m.data()) worst = std::max(worst, std::abs(v));
  return worst;
}

double frobenius_norm(const DenseMatrix& m) {
  return std::sqrt(kernels::sum_squares(m.data()));
}

Vector transpose_times(const DenseMatrix& m, std::span<const double> x) {
  if (x.size() != m.rows()) throw DimensionMismatch(m.rows(), x.size());
  Vector out(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) out[j] = kernels::dot(m.column(j), x);
  return out;
}

}  // namespace oapx
