#pragma once

#include <cstdint>

namespace stokestree {

/// splitmix64 (Vigna). Chosen for the generators because its output stream is
/// specified exactly by three 64-bit constants, so any language reproduces it
/// bit-for-bit from the same seed.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(uint64_t seed) : state_(seed) {}

    constexpr uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0,1), 53 mantissa bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [-1,1).
    double symmetric() { return 2.0 * uniform01() - 1.0; }

private:
    uint64_t state_;
};

}  // namespace stokestree
