#pragma once

#include <cstdint>
#include <random>

namespace gibbs {

using Rng = std::mt19937_64;

// Stream seeding rule: stream i of a master seed s is the SplitMix64 mix of
// s + (i + 1) * 0x9E3779B97F4A7C15.  Chains, replicas and repeated draws each
// get their own stream index so runs are reproducible and order-independent.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.  We do not use
// std::uniform_real_distribution: its output is implementation-defined,
// this is not.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in (0, 1], safe to pass to log().
inline double uniform01_open(Rng& rng) { return 1.0 - uniform01(rng); }

// Unbiased uniform integer in [0, n), n >= 1.  Rejection sampling.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

}  // namespace gibbs
