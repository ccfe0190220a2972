#pragma once

#include <cstdint>
#include <random>

namespace dualhop {

/// Engine used by every sampler in the library.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of an independent substream identified by (master seed, tag, index).
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t tag,
                                       std::uint64_t index) {
  return mix64(mix64(mix64(master) ^ tag) + index);
}

}  // namespace dualhop
