#pragma once

// Inner-loop kernels for the column sweeps. A scalar reference
// implementation always exists; vector variants are compiled per target and
// one set is selected at first use. ORTHO_APPROX_KERNELS=scalar|avx2|neon
// forces a choice, anything else (or unset) picks the widest supported set.

#include <cstddef>
#include <span>
#include <string_view>

namespace oapx::kernels {

struct KernelSet {
  std::string_view name;
  // sum x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // x[i] /= divisor, exactly one IEEE division per entry.
  void (*divide)(double* x, double divisor, std::size_t n);
};

const KernelSet& scalar();
// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelSet* avx2();
const KernelSet* neon();

// The set chosen for this process.
const KernelSet& active();

// Overrides the process-wide choice, mainly for tests. Returns false (and
// leaves the choice untouched) when `name` is unknown or unsupported here.
bool select(std::string_view name);

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}
inline double sum_squares(std::span<const double> x) {
  return active().dot(x.data(), x.data(), x.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void divide(std::span<double> x, double divisor) {
  active().divide(x.data(), divisor, x.size());
}

}  // namespace oapx::kernels
