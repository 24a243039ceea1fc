#pragma once

#include <cstdint>
#include <random>

namespace stablab {

/// Seeded pseudo-random stream.
///
/// Variates are derived from raw 64-bit engine output with fixed transforms,
/// so a given seed produces the same values on every standard library.
/// Independent substreams are keyed by (master seed, key...) through a
/// splitmix64 hash; replication r of an experiment uses its own substream so
/// results do not depend on how replications are scheduled.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  static RandomStream substream(std::uint64_t seed, std::uint64_t key0,
                                std::uint64_t key1 = 0);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double uniform();
  // Uniform on (-1, 1).
  double uniform_symmetric() { return 2.0 * uniform() - 1.0; }
  // Uniform on (lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Standard exponential.
  double exponential();
  // Standard normal (Box-Muller, no cached second variate).
  double normal();
  // +1 or -1 with equal probability.
  double sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace stablab
