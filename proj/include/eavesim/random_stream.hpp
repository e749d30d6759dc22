#pragma once

#include <cstdint>

namespace eavesim {

/// Deterministic per-round random stream.
///
/// Every protocol round owns an independent stream keyed by (seed, round
/// index), so rounds can be simulated in any order or on any thread and still
/// consume exactly the same random numbers. The generator is SplitMix64
/// started from a hashed (seed, index) key.
class RoundStream {
public:
    RoundStream(std::uint64_t seed, std::uint64_t round_index) noexcept
        : state_(mix(mix(seed) ^ mix(round_index + kGamma))) {}

    std::uint64_t next_u64() noexcept { return mix(state_ += kGamma); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool coin() noexcept { return uniform() < 0.5; }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace eavesim
