#pragma once

#include <cstdint>

namespace medialcorr::rng {

// Counter-based generation built on the SplitMix64 output function
// (Steele-Lea-Flood mix; passes BigCrush). Draw s of row r of substream k
// is a pure function of (seed, k, r, s): random access, byte-identical
// results for any thread partition.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// Key of substream `stream` of a seed; substreams of substreams nest.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t stream) {
  return mix(seed + (stream + 1) * kGolden);
}

inline std::uint64_t bits(std::uint64_t key, std::uint64_t index) {
  return mix(key + (index + 1) * kGolden);
}

/// Uniform draw strictly inside (0,1): ((bits >> 12) + 0.5) * 2^-52, which
/// is exact in double arithmetic and never rounds to an endpoint.
inline double uniform01(std::uint64_t key, std::uint64_t index) {
  return (static_cast<double>(bits(key, index) >> 12) + 0.5) * 0x1.0p-52;
}

}  // namespace medialcorr::rng
