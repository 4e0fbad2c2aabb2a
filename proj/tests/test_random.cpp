#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ortho_approx/errors.hpp"
#include "ortho_approx/random.hpp"

using namespace oapx;
using doctest::Approx;

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / a.size() -
                                     static_cast<double>(j) / b.size()));
  }
  return worst;
}

}  // namespace

TEST_CASE("Gaussian stream matches the golden values") {
  std::ifstream in(std::string(OAPX_GOLDEN_DIR) + "/gaussian_2x2_seed42.txt");
  REQUIRE(in);
  std::vector<double> expected;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    expected.push_back(std::strtod(line.c_str(), nullptr));
  }
  REQUIRE(expected.size() == 4);
  const DenseMatrix g = gaussian_matrix(SeededStream(42, 0), 2, 2);
  for (std::size_t i = 0; i < 4; ++i) CHECK(g.data()[i] == expected[i]);
}

TEST_CASE("seeded streams are deterministic and distinct") {
  CHECK(gaussian_matrix(SeededStream(5, 3), 7, 4) == gaussian_matrix(SeededStream(5, 3), 7, 4));
  CHECK_FALSE(gaussian_matrix(SeededStream(5, 3), 7, 4) ==
              gaussian_matrix(SeededStream(5, 4), 7, 4));
  CHECK_FALSE(gaussian_matrix(SeededStream(5, 3), 7, 4) ==
              gaussian_matrix(SeededStream(6, 3), 7, 4));

  SeededStream s(1, 2);
  const SeededStream t = s.trial(5);
  CHECK(t.seed() == 1);
  CHECK(t.stream_id() == 7);
  for (int i = 0; i < 1000; ++i) {
    const double u = s.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }

  SeededStream a(9, 0);
  const DenseMatrix col = gaussian_matrix(SeededStream(9, 0), 5, 1);
  for (double v : col.data()) CHECK(a.normal() == v);
}

TEST_CASE("Gaussian entries have standard-normal moments") {
  int in_range = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const DenseMatrix g = gaussian_matrix(SeededStream(seed, 0), 10000, 1);
    double sum = 0.0;
    for (double v : g.data()) sum += v;
    const double mean = sum / 10000.0;
    double ss = 0.0;
    for (double v : g.data()) ss += (v - mean) * (v - mean);
    const double var = ss / 9999.0;
    if (std::abs(mean) <= 0.05 && var >= 0.94 && var <= 1.06) ++in_range;
  }
  CHECK(in_range >= 990);
}

TEST_CASE("haar reference") {
  const OrthonormalBasis one = haar_reference(SeededStream(3, 0), 1, 1);
  CHECK(std::abs(one.matrix()(0, 0)) == 1.0);

  for (std::uint64_t seed : {1, 2, 3}) {
    CHECK(haar_reference(SeededStream(seed, 0), 500, 20).ortho_defect() <= 1e-10);
  }
  CHECK_THROWS_AS(haar_reference(SeededStream(0, 0), 3, 4), DimensionMismatch);

  // A uniform unit vector in R^50 has E[v_1^2] = 1/50.
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 5000; ++seed) {
    const double v = haar_reference(SeededStream(seed, 0), 50, 1).matrix()(0, 0);
    sum += v * v;
  }
  const double mean = sum / 5000.0;
  CHECK(mean >= 0.014);
  CHECK(mean <= 0.026);
}

TEST_CASE("Wilson upper limit matches a reference implementation") {
  // statsmodels proportion_confint(method="wilson", alpha=0.05)
  CHECK(wilson_upper(451, 100000) == Approx(0.0049447544675443895).epsilon(1e-12));
  CHECK(wilson_upper(0, 10000) == Approx(0.0003839983706765959).epsilon(1e-12));
  CHECK(wilson_upper(5, 20) == Approx(0.4687008776187441).epsilon(1e-12));
  CHECK(wilson_upper(20, 20) == Approx(1.0).epsilon(1e-12));
  CHECK(wilson_upper(1, 1) <= 1.0);
}

TEST_CASE("concentration tail") {
  const SeededStream s(11, 0);
  const TailEstimate e = concentration_tail(s, 200, 0.2, 2000);
  CHECK(e.bound == Approx(0.0183156388887342).epsilon(1e-12));
  CHECK(e.trials == 2000);
  CHECK(e.hits <= e.trials);
  CHECK(e.empirical_rate == static_cast<double>(e.hits) / 2000.0);
  CHECK(e.k == 2);

  const TailEstimate far = concentration_tail(s, 200, 0.999, 10000);
  CHECK(far.hits == 0);
  CHECK(far.bound < 1e-40);

  CHECK_THROWS_AS(concentration_tail(s, 200, 0.0, 10), ConfigInvalid);
  CHECK_THROWS_AS(concentration_tail(s, 200, 1.0, 10), ConfigInvalid);
  CHECK_THROWS_AS(concentration_tail(s, 200, 0.2, 0), ConfigInvalid);
}

TEST_CASE("concentration tail sits below the exponential bound") {
  struct Case {
    std::size_t n;
    double eps;
  };
  for (const Case c : {Case{50, 0.3}, Case{100, 0.25}, Case{400, 0.1}}) {
    CAPTURE(c.n);
    int dominated = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const TailEstimate e = concentration_tail(SeededStream(seed, 0), c.n, c.eps, 5000);
      REQUIRE(e.bound <= 0.5);
      if (e.wilson_upper <= e.bound) ++dominated;
    }
    CHECK(dominated >= 19);
  }
}

TEST_CASE("negating a vector leaves the tail statistics unchanged") {
  std::vector<double> plain;
  std::vector<double> negated;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    plain.push_back(concentration_tail(SeededStream(seed, 0), 60, 0.2, 400).empirical_rate);
    negated.push_back(concentration_tail(SeededStream(seed, 0), 60, 0.2, 400,
                                         {.negate_first = true})
                          .empirical_rate);
  }
  // Reject at alpha = 0.01 when D > 1.628 sqrt((n + m) / (n m)).
  const double critical = 1.628 * std::sqrt(2.0 / 50.0);
  CHECK(ks_statistic(plain, negated) <= critical);
}

TEST_CASE("Monte Carlo results do not depend on the worker count") {
  const SeededStream s(21, 0);
  const auto one = concentration_tail(s, 100, 0.2, 3000, {.workers = 1});
  const auto four = concentration_tail(s, 100, 0.2, 3000, {.workers = 4});
  CHECK(one.hits == four.hits);
  const auto c1 = coherence_event_rate(s, 100, 5, 0.2, 300, {.workers = 1});
  const auto c3 = coherence_event_rate(s, 100, 5, 0.2, 300, {.workers = 3});
  CHECK(c1.hits == c3.hits);
}

TEST_CASE("coherence event rate") {
  const SeededStream s(4, 0);
  CHECK(coherence_event_rate(s, 300, 2, 0.2, 10).bound ==
        concentration_tail(s, 300, 0.2, 10).bound);
  const TailEstimate mid = coherence_event_rate(s, 200, 10, 0.2, 200);
  CHECK(mid.bound == Approx(0.824203749993038).epsilon(1e-12));
  CHECK(mid.k == 10);
  CHECK(mid.wilson_upper <= 1.0);

  const TailEstimate high = coherence_event_rate(s, 2000, 10, 0.2, 300);
  CHECK(high.bound == Approx(1.911759414881215e-16).epsilon(1e-10));
  CHECK(high.hits == 0);

  CHECK(coherence_event_rate(s, 20, 10, 0.05, 5).bound == 1.0);
  CHECK_THROWS_AS(coherence_event_rate(s, 200, 1, 0.2, 10), ConfigInvalid);
  CHECK_THROWS_AS(coherence_event_rate(s, 5, 10, 0.2, 10), ConfigInvalid);
}

TEST_CASE("median coherence shrinks as n grows") {
  std::vector<double> medians;
  for (std::size_t n : {500, 2000, 8000}) {
    std::vector<double> coh;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      coh.push_back(gram_residual(normalize_columns(gaussian_matrix(SeededStream(seed, 0), n, 10)))
                        .max_abs());
    }
    medians.push_back(median(coh));
  }
  CHECK(medians[0] > medians[1]);
  CHECK(medians[1] > medians[2]);
}

TEST_CASE("haar approximation errors") {
  const HaarApproxErrors single = haar_approx_errors(SeededStream(1, 0), 50, 1, HaarVariant::Normalized);
  CHECK(single.frob_error <= 1e-15);
  CHECK(single.max_abs_r == 0.0);

  int within = 0;
  const double pairs = std::sqrt(45.0);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto e = haar_approx_errors(SeededStream(seed, 0), 5000, 10, HaarVariant::Normalized);
    if (e.frob_error <= 1.25 * pairs * e.max_abs_r) ++within;
  }
  CHECK(within >= 38);

  std::vector<double> small_n;
  std::vector<double> large_n;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    small_n.push_back(haar_approx_errors(SeededStream(seed, 0), 2500, 10, HaarVariant::ScaledRaw).frob_error);
    large_n.push_back(haar_approx_errors(SeededStream(seed, 0), 10000, 10, HaarVariant::ScaledRaw).frob_error);
  }
  CHECK(median(large_n) <= 0.75 * median(small_n));
}
