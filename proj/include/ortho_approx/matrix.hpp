#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace oapx {

using Vector = std::vector<double>;

// Dense real matrix stored column-major. Every entry is finite when the
// matrix leaves a constructor; rows and cols are both at least one.
class DenseMatrix {
 public:
  // Zero matrix.
  DenseMatrix(std::size_t rows, std::size_t cols);
  // Takes ownership of `column_major`, which must hold rows * cols finite values.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major);

  // Each inner list is one column.
  static DenseMatrix from_columns(std::initializer_list<std::initializer_list<double>> columns);
  static DenseMatrix from_columns(const std::vector<Vector>& columns);
  static DenseMatrix identity(std::size_t n);
  static DenseMatrix column_vector(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[col * rows_ + row];
  }
  double& operator()(std::size_t row, std::size_t col) noexcept {
    return data_[col * rows_ + row];
  }

  std::span<const double> column(std::size_t col) const noexcept {
    return {data_.data() + col * rows_, rows_};
  }
  std::span<double> column(std::size_t col) noexcept {
    return {data_.data() + col * rows_, rows_};
  }

  std::span<const double> data() const noexcept { return data_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

DenseMatrix matmul(const DenseMatrix& lhs, const DenseMatrix& rhs);
DenseMatrix transpose(const DenseMatrix& m);
DenseMatrix operator-(const DenseMatrix& lhs, const DenseMatrix& rhs);
DenseMatrix operator+(const DenseMatrix& lhs, const DenseMatrix& rhs);
DenseMatrix operator*(double scale, const DenseMatrix& m);

// Largest |lhs - rhs| entry; shapes must agree.
double max_abs_diff(const DenseMatrix& lhs, const DenseMatrix& rhs);
double max_abs(const DenseMatrix& m);
double frobenius_norm(const DenseMatrix& m);

// m^T x.
Vector transpose_times(const DenseMatrix& m, std::span<const double> x);

}  // namespace oapx
