#pragma once

#include <cstdint>

namespace chsplice {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Counter-based seed split: a child seed for (master, stream, index).
/// Distinct (stream, index) pairs give statistically independent seeds, and
/// the result does not depend on evaluation order, so packets can run on any
/// thread and still reproduce.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index) noexcept;

/// Stream identifiers used by the scenario harness.
enum class SeedStream : std::uint64_t {
  kChannel = 1,
  kBandNoise = 2,
  kReferenceNoise = 3,
  kDistortion = 4,
};

inline std::uint64_t derive_seed(std::uint64_t master, SeedStream stream,
                                 std::uint64_t index) noexcept {
  return derive_seed(master, static_cast<std::uint64_t>(stream), index);
}

}  // namespace chsplice
