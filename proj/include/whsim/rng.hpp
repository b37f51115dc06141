#pragma once
#include <cstdint>
#include <random>

namespace whsim {

// Deterministic stream derivation: every stochastic routine receives its own
// engine derived from (root seed, context labels) so that trials can be
// reordered or parallelized without changing any draw.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed) { return splitmix64(seed); }

template <typename... Rest>
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t first, Rest... rest) {
  return mix_seed(splitmix64(seed ^ (first + 0x9e3779b97f4a7c15ULL)), rest...);
}

template <typename... Parts>
std::mt19937_64 derive_stream(std::uint64_t seed, Parts... parts) {
  return std::mt19937_64(mix_seed(seed, static_cast<std::uint64_t>(parts)...));
}

// Uniform double in [0,1) with 53 random bits; independent of libstdc++'s
// distribution internals so sequences are stable across platforms.
inline double uniform_double(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_index(std::mt19937_64& g, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do { x = g(); } while (x >= limit);
  return x % n;
}

}  // namespace whsim
