#ifndef SPECTRAL_COMPLEXITY_RANDOM_HPP
#define SPECTRAL_COMPLEXITY_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

namespace spectral_complexity {

// The standard distributions and std::shuffle are implementation-defined, so
// everything that feeds a report draws through the helpers below on top of
// std::mt19937_64, whose output sequence is fixed by the standard.

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Combines a parent seed with a sequence of keys into a child seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = splitmix64(seed);
  for (auto key : keys) h = splitmix64(h ^ splitmix64(key + 0x632be59bd9b4e019ULL));
  return h;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Uniform integer in [0, bound) by rejection; bound must be positive.
inline std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Uniform real in [0, 1) with 53 random bits.
inline double uniform_unit(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller; one variate per call.
inline double standard_normal(Engine& rng) {
  double u1;
  do {
    u1 = uniform_unit(rng);
  } while (u1 <= 0.0);
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Draws `count` entries of `pool`. Without replacement (partial Fisher-Yates)
/// when the pool is large enough, with replacement otherwise.
template <typename T>
std::vector<T> draw_sample(Engine& rng, const std::vector<T>& pool, std::size_t count,
                           bool* replaced = nullptr) {
  std::vector<T> out;
  out.reserve(count);
  if (pool.size() >= count) {
    std::vector<T> scratch = pool;
    for (std::size_t i = 0; i < count; ++i) {
      const auto j = i + uniform_below(rng, scratch.size() - i);
      std::swap(scratch[i], scratch[j]);
      out.push_back(scratch[i]);
    }
    if (replaced) *replaced = false;
  } else {
    for (std::size_t i = 0; i < count; ++i) out.push_back(pool[uniform_below(rng, pool.size())]);
    if (replaced) *replaced = true;
  }
  return out;
}

} // namespace spectral_complexity

#endif // SPECTRAL_COMPLEXITY_RANDOM_HPP
