#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace bal {

/// Generator used for every random draw in the library.
using Engine = std::mt19937_64;

inline constexpr std::string_view kEngineName = "mt19937_64";

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child seed for (master, run index, iteration index). Counter based, so any
/// cell of a sweep can be recomputed without replaying the others.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t run,
                                    std::uint64_t iteration = 0) {
  return mix64(mix64(mix64(master) ^ run) ^ (iteration + 0x632be59bd9b4e019ULL));
}

/// Uniform double in [0, 1) from the top 53 bits. Bit-portable, unlike
/// std::uniform_real_distribution.
inline double uniform01(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace bal
