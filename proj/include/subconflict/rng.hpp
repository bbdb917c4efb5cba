#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace subconflict::rng {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return splitmix64(a ^ splitmix64(b)); }

/// Seed for one independent stream, keyed by names and an index so that
/// results do not depend on scheduling or on internal id assignment.
inline std::uint64_t stream_seed(std::uint64_t seed, std::string_view a, std::string_view b, std::uint64_t index) {
  return mix(mix(mix(seed, fnv1a64(a)), fnv1a64(b)), index);
}

/// Uniform double in [0, 1) from the top 53 bits. Portable, unlike
/// std::uniform_real_distribution whose algorithm is unspecified.
inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n) by rejection; portable across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return x % n;
}

}  // namespace subconflict::rng
