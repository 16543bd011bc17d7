#pragma once

#include <cstdint>
#include <string_view>

namespace geodock {

/// Counter-based generator (splitmix64). Every consumer derives its own
/// stream from a mixed seed, so no generator state is ever shared between
/// workers and results cannot depend on execution order.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  /// Uniform integer in [0, n). Modulo bias is irrelevant at the sizes used here.
  std::uint64_t below(std::uint64_t n) { return n > 0 ? next() % n : 0; }
};

constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

/// Stateless hash combine for deriving independent substreams.
constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ (b + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2)));
  return g.next();
}

}  // namespace geodock
