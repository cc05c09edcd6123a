#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sizeramsey {

using Rng = std::mt19937_64;

/// Seed for a named stage, derived from the master seed (FNV-1a over the name,
/// mixed with splitmix64).
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stage) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : stage) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  std::uint64_t z = master ^ h;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// The standard distributions are implementation-defined; these are not, so
// seeded runs reproduce across toolchains.

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n), n > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = ~0ULL - (~0ULL % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

}  // namespace sizeramsey
