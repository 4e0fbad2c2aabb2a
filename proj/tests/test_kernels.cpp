#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "ortho_approx/kernels.hpp"

using namespace oapx;

namespace {

std::vector<const kernels::KernelSet*> vector_sets() {
  std::vector<const kernels::KernelSet*> sets;
  if (auto* s = kernels::avx2()) sets.push_back(s);
  if (auto* s = kernels::neon()) sets.push_back(s);
  return sets;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

TEST_CASE("scalar reference kernels") {
  const std::vector<double> x{1.0, 2.0, 3.0};
  std::vector<double> y{4.0, 5.0, 6.0};
  const auto& s = kernels::scalar();
  CHECK(s.dot(x.data(), y.data(), 3) == 32.0);
  CHECK(s.dot(x.data(), y.data(), 0) == 0.0);
  s.axpy(2.0, x.data(), y.data(), 3);
  CHECK(y == std::vector<double>{6.0, 9.0, 12.0});
  s.divide(y.data(), 3.0, 3);
  CHECK(y == std::vector<double>{2.0, 3.0, 4.0});
}

TEST_CASE("vector kernels agree with the scalar reference") {
  const auto sets = vector_sets();
  if (sets.empty()) {
    MESSAGE("no vector kernel set on this machine");
    return;
  }
  std::mt19937_64 rng(7);
  const auto& ref = kernels::scalar();
  for (const auto* set : sets) {
    CAPTURE(set->name);
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 31, 33, 64, 100, 1000, 4099}) {
      CAPTURE(n);
      const auto x = random_vector(rng, n);
      const auto y = random_vector(rng, n);

      // |fl(x.y) - x.y| <= n eps sum |x_i y_i| for any summation order.
      double magnitude = 0.0;
      for (std::size_t i = 0; i < n; ++i) magnitude += std::abs(x[i] * y[i]);
      const double tol = (static_cast<double>(n) + 1.0) * kEps * magnitude;
      CHECK(std::abs(set->dot(x.data(), y.data(), n) - ref.dot(x.data(), y.data(), n)) <= 2 * tol);

      const double alpha = -0.37;
      auto y_ref = y;
      auto y_vec = y;
      ref.axpy(alpha, x.data(), y_ref.data(), n);
      set->axpy(alpha, x.data(), y_vec.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        // Fused and unfused results differ by at most one rounding of each step.
        CHECK(std::abs(y_vec[i] - y_ref[i]) <=
              2 * kEps * (std::abs(alpha * x[i]) + std::abs(y[i])));
      }

      auto d_ref = x;
      auto d_vec = x;
      ref.divide(d_ref.data(), 3.3, n);
      set->divide(d_vec.data(), 3.3, n);
      CHECK(d_ref == d_vec);  // one correctly rounded division per entry
    }
  }
}

TEST_CASE("kernel selection") {
  const std::string_view before = kernels::active().name;
  CHECK(kernels::select("scalar"));
  CHECK(kernels::active().name == "scalar");
  CHECK_FALSE(kernels::select("sse9"));
  CHECK(kernels::active().name == "scalar");
  if (kernels::avx2()) {
    CHECK(kernels::select("avx2"));
    CHECK(kernels::active().name == "avx2");
  }
  CHECK(kernels::select(before));
}
