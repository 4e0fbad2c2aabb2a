#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "json.hpp"
#include "ortho_approx/linalg.hpp"
#include "ortho_approx/matrix.hpp"

namespace oapx {

// SplitMix64 generator keyed by (seed, stream_id).
//
//   mix(z)   = z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//              z ^= z >> 27; z *= 0x94D049BB133111EB; z ^ (z >> 31)
//   state_0  = seed ^ mix(stream_id)
//   next()   = state += 0x9E3779B97F4A7C15; mix(state)
//   uniform  = (next() >> 11) * 2^-53                      in [0, 1)
//
// Normals come from Box-Muller on consecutive uniform pairs (u1, u2):
//   r = sqrt(-2 ln(1 - u1)), z0 = r cos(2 pi u2), z1 = r sin(2 pi u2)
// returned in the order z0, z1.
class SeededStream {
 public:
  SeededStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() noexcept;
  double uniform() noexcept;
  double normal() noexcept;
  void fill_normal(std::span<double> out) noexcept;

  // Stream for trial t of a campaign keyed by this stream: (seed, stream_id + t).
  SeededStream trial(std::uint64_t t) const { return {seed_, stream_id_ + t}; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

// Standard normal entries, filled column by column from a fresh copy of `stream`.
DenseMatrix gaussian_matrix(SeededStream stream, std::size_t n, std::size_t k);

// Gram-Schmidt (with reorthogonalization) of gaussian_matrix(stream, n, k).
OrthonormalBasis haar_reference(SeededStream stream, std::size_t n, std::size_t k);

// Upper end of the two-sided 95% Wilson score interval for hits / trials.
double wilson_upper(std::uint64_t hits, std::uint64_t trials, double z = 1.959963984540054);

struct TailEstimate {
  std::size_t n = 0;
  std::size_t k = 2;  // columns per trial; 2 for the pairwise angle estimate
  double epsilon = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double empirical_rate = 0.0;
  // exp(-n eps^2 / 2) times the number of column pairs, capped at one.
  double bound = 1.0;
  double wilson_upper = 1.0;
};

nlohmann::json to_json(const TailEstimate& estimate);

struct MonteCarloOptions {
  // Flip the sign of the first Gaussian vector of each pair.
  bool negate_first = false;
  std::size_t workers = 0;
};

// Fraction of trials in which two independent n-dimensional Gaussian vectors
// satisfy |cos(angle)| > epsilon. Trial t draws from stream.trial(t).
TailEstimate concentration_tail(const SeededStream& stream, std::size_t n, double epsilon,
                                std::uint64_t trials, const MonteCarloOptions& options = {});

// Fraction of trials in which the column-normalized n x k Gaussian matrix has
// some pair of columns with |inner product| > epsilon.
TailEstimate coherence_event_rate(const SeededStream& stream, std::size_t n, std::size_t k,
                                  double epsilon, std::uint64_t trials,
                                  const MonteCarloOptions& options = {});

enum class HaarVariant { Normalized, ScaledRaw };

struct HaarApproxErrors {
  double frob_error = 0.0;  // |V - B|_F
  double max_abs_r = 0.0;   // max_{j!=i} |b_j^T b_i|
};

// B is the column-normalized Gaussian matrix or the Gaussian matrix scaled by
// 1/sqrt(n); V is the Gram-Schmidt orthonormalization of B.
HaarApproxErrors haar_approx_errors(const SeededStream& stream, std::size_t n, std::size_t k,
                                    HaarVariant variant);

}  // namespace oapx
