#pragma once

#include <cstdint>
#include <random>

namespace ebsw {

/// Seed of a random stream. Identical seed and identical call sequence give
/// an identical stream.
struct RngSeed {
  std::uint64_t value = 0;

  friend bool operator==(RngSeed, RngSeed) = default;
};

using Rng = std::mt19937_64;

inline Rng make_rng(RngSeed seed) { return Rng(seed.value); }

/// SplitMix64 finalizer; used to derive independent sub-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of sub-stream `index` of `parent`. Deterministic, independent of
/// thread count or call order.
inline RngSeed derive_seed(RngSeed parent, std::uint64_t index) {
  return RngSeed{splitmix64(splitmix64(parent.value) ^ splitmix64(index + 0x632be59bd9b4e019ULL))};
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace ebsw
