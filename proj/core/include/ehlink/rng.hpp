#pragma once

#include <cstdint>
#include <random>

namespace ehlink {

using RandomStream = std::mt19937_64;

/// SplitMix64 finalizer. Used only to derive sub-stream seeds, never as
/// the simulation generator itself.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Derives a sub-seed from a base seed and a small tag. The derivation is
/// fixed so that sweeps and multi-trial runs are reproducible: the run
/// seed is derive_seed(derive_seed(master, point_index), trial) and each
/// node stream is derive_seed(run_seed, node_index).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) noexcept {
    return mix64(base ^ (0xD1B54A32D192ED03ull * (tag + 1)));
}

inline std::uint64_t run_seed(std::uint64_t master, std::uint64_t point_index,
                              std::uint64_t trial) noexcept {
    return derive_seed(derive_seed(master, point_index), trial);
}

/// Node indices for stream derivation.
inline constexpr std::uint64_t kTxNode = 0;
inline constexpr std::uint64_t kRxNode = 1;

inline RandomStream node_stream(std::uint64_t run_seed_value, std::uint64_t node) {
    return RandomStream(derive_seed(run_seed_value, node));
}

/// Uniform double in [0, 1) from the top 53 bits; bit-exact across
/// platforms, unlike std::uniform_real_distribution.
inline double canonical_unit(RandomStream& rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace ehlink
