#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace momdist {

/// The project-wide PRNG: 64-bit Mersenne Twister. Streams are reproducible
/// within one build; the standard distributions are not bit-portable across
/// standard libraries.
using Rng = std::mt19937_64;

/// Derives a decorrelated child seed (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

}  // namespace momdist
