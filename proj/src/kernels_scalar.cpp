#include "ortho_approx/kernels.hpp"

namespace oapx::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void divide_scalar(double* x, double divisor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] /= divisor;
}

constexpr KernelSet kScalar{"scalar", dot_scalar, axpy_scalar, divide_scalar};

}  // namespace

const KernelSet& scalar() { return kScalar; }

}  // namespace oapx::kernels
