#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace haarpool {

/// splitmix64 step, used to derive independent seeds from (seed, stream)
/// pairs without correlations between nearby seeds.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix_seed(seed + 0x632be59bd9b4e019ULL * (stream + 1));
}

/// Uniform double in [0, 1). Uses raw engine bits rather than
/// std::uniform_real_distribution so sequences are identical across
/// standard library implementations.
inline double canonical_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform-ish int in [0, n). Modulo bias is irrelevant at the sizes used
/// here and keeps the sequence implementation-independent.
inline int bounded_int(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

/// Standard normal via Box-Muller on canonical doubles (portable,
/// deterministic given the engine state).
inline double normal_double(std::mt19937_64& rng) {
  double u1 = canonical_double(rng);
  double u2 = canonical_double(rng);
  while (u1 <= 0.0) u1 = canonical_double(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace haarpool
