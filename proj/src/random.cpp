#include "stablab/random.hpp"

#include <cmath>
#include <numbers>

namespace stablab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t key0,
                                     std::uint64_t key1) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ splitmix64(key0 + 0x632BE59BD9B4E019ULL));
  h = splitmix64(h ^ splitmix64(key1 + 0x85157AF5ULL));
  return RandomStream(h);
}

double RandomStream::uniform() {
  // 53 random bits, centred in their cell: never 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential() { return -std::log(uniform()); }

double RandomStream::normal() {
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  return r * std::cos(2.0 * std::numbers::pi * uniform());
}

}  // namespace stablab
