#include "ortho_approx/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ortho_approx/errors.hpp"
#include "ortho_approx/kernels.hpp"
#include "ortho_approx/parallel.hpp"

namespace oapx {
namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double pair_bound(std::size_t n, std::size_t k, double epsilon) {
  const double pairs = static_cast<double>(k) * static_cast<double>(k - 1) / 2.0;
  return std::min(1.0, pairs * std::exp(-static_cast<double>(n) * epsilon * epsilon / 2.0));
}

TailEstimate summarize(std::size_t n, std::size_t k, double epsilon, std::uint64_t trials,
                       std::uint64_t hits) {
  TailEstimate est;
  est.n = n;
  est.k = k;
  est.epsilon = epsilon;
  est.trials = trials;
  est.hits = hits;
  est.empirical_rate = static_cast<double>(hits) / static_cast<double>(trials);
  est.bound = pair_bound(n, k, epsilon);
  est.wilson_upper = wilson_upper(hits, trials);
  return est;
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigInvalid("eps", "must lie in (0, 1)");
}

std::uint64_t count_hits(std::uint64_t trials, std::size_t workers,
                         const std::function<bool(std::uint64_t)>& trial) {
  std::vector<unsigned char> hit(trials, 0);
  parallel_for(trials, [&](std::size_t t) { hit[t] = trial(t) ? 1 : 0; }, workers);
  return static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), 1));
}

}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SeededStream::SeededStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), state_(seed ^ splitmix64_mix(stream_id)) {}

std::uint64_t SeededStream::next_u64() noexcept {
  state_ += kGoldenGamma;
  return splitmix64_mix(state_);
}

double SeededStream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededStream::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double angle = kTwoPi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

void SeededStream::fill_normal(std::span<double> out) noexcept {
  for (double& v : out) v = normal();
}

DenseMatrix gaussian_matrix(SeededStream stream, std::size_t n, std::size_t k) {
  std::vector<double> data(n * k);
  stream.fill_normal(data);
  return DenseMatrix(n, k, std::move(data));
}

OrthonormalBasis haar_reference(SeededStream stream, std::size_t n, std::size_t k) {
  if (n < k) throw DimensionMismatch(k, n);
  return gram_schmidt(gaussian_matrix(stream, n, k),
                      GsOptions{.mode = GsMode::Classical, .reorthogonalize = true});
}

double wilson_upper(std::uint64_t hits, std::uint64_t trials, double z) {
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double center = p + z2 / (2.0 * n);
  const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return std::min(1.0, (center + spread) / (1.0 + z2 / n));
}

nlohmann::json to_json(const TailEstimate& e) {
  return {
      {"n", e.n},
      {"k", e.k},
      {"epsilon", e.epsilon},
      {"trials", e.trials},
      {"hits", e.hits},
      {"empirical_rate", e.empirical_rate},
      {"bound", e.bound},
      {"wilson_upper", e.wilson_upper},
  };
}

TailEstimate concentration_tail(const SeededStream& stream, std::size_t n, double epsilon,
                                std::uint64_t trials, const MonteCarloOptions& options) {
  check_epsilon(epsilon);
  if (n == 0) throw ConfigInvalid("n", "must be positive");
  if (trials == 0) throw ConfigInvalid("trials", "must be positive");

  const std::uint64_t hits = count_hits(trials, options.workers, [&](std::uint64_t t) {
    SeededStream s = stream.trial(t);
    std::vector<double> g(2 * n);
    s.fill_normal(g);
    const std::span<const double> g1(g.data(), n);
    const std::span<const double> g2(g.data() + n, n);
    double inner = kernels::dot(g1, g2);
    if (options.negate_first) inner = -inner;
    const double cosine = inner / std::sqrt(kernels::sum_squares(g1) * kernels::sum_squares(g2));
    return std::abs(cosine) > epsilon;
  });
  return summarize(n, 2, epsilon, trials, hits);
}

TailEstimate coherence_event_rate(const SeededStream& stream, std::size_t n, std::size_t k,
                                  double epsilon, std::uint64_t trials,
                                  const MonteCarloOptions& options) {
  check_epsilon(epsilon);
  if (k < 2) throw ConfigInvalid("k", "must be at least 2");
  if (n < k) throw ConfigInvalid("n", "must be at least k");
  if (trials == 0) throw ConfigInvalid("trials", "must be positive");

  const std::uint64_t hits = count_hits(trials, options.workers, [&](std::uint64_t t) {
    DenseMatrix phi = gaussian_matrix(stream.trial(t), n, k);
    if (options.negate_first) {
      for (double& v : phi.column(0)) v = -v;
    }
    return gram_residual(normalize_columns(phi)).max_abs() > epsilon;
  });
  return summarize(n, k, epsilon, trials, hits);
}

HaarApproxErrors haar_approx_errors(const SeededStream& stream, std::size_t n, std::size_t k,
                                    HaarVariant variant) {
  if (n < k) throw DimensionMismatch(k, n);
  const DenseMatrix phi = gaussian_matrix(stream, n, k);
  const DenseMatrix basis = variant == HaarVariant::Normalized
                                ? normalize_columns(phi)
                                : (1.0 / std::sqrt(static_cast<double>(n))) * phi;
  const OrthonormalBasis gs = gram_schmidt(basis);
  return {frobenius_norm(gs.matrix() - basis), gram_residual(basis).max_abs()};
}

}  // namespace oapx
