#pragma once

#include <cstdint>

namespace cea {

// Counter-based randomness. Every variate is a pure function of
// (seed, index, stream), so partitioning work across any number of
// threads, in any order, reproduces the same sequence bit for bit.

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline constexpr std::uint64_t mix_bits(std::uint64_t seed, std::uint64_t index,
                                        std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(index ^ splitmix64(stream + 0x632BE59BD9B4E019ULL)));
}

/// Uniform double in [0, 1), 53 bits of entropy.
inline double u01(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0) {
    return static_cast<double>(mix_bits(seed, index, stream) >> 11) * 0x1.0p-53;
}

} // namespace cea
