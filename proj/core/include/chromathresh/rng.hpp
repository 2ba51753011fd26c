#pragma once

// Fully specified splitmix64 stream so that independently written ports
// produce bit-identical colorings from the same SeedSpec.

#include <cstdint>

namespace chromathresh {

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

// The splitmix64 output mix (finalizer).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Identifies one trial of one experiment. The derived per-trial seed is a
// pure function of (master_seed, trial_index), so trials may be generated
// in any order or concurrently.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;

    std::uint64_t derived_seed() const {
        return splitmix64_mix(master_seed + (trial_index + 1) * kSplitMixGamma);
    }

    bool operator==(const SeedSpec&) const = default;
};

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    explicit SplitMix64(const SeedSpec& spec) : state_(spec.derived_seed()) {}

    std::uint64_t next() {
        state_ += kSplitMixGamma;
        return splitmix64_mix(state_);
    }

    // Uniform on [0, bound) via rejection; exactly unbiased for any bound.
    std::uint64_t next_below(std::uint64_t bound) {
        // 2^64 mod bound, computed in 64-bit arithmetic.
        const std::uint64_t rem = (0 - bound) % bound;
        const std::uint64_t limit = 0 - rem; // = 2^64 - (2^64 mod bound), mod 2^64
        for (;;) {
            const std::uint64_t draw = next();
            if (rem == 0 || draw < limit) return draw % bound;
        }
    }

private:
    std::uint64_t state_;
};

} // namespace chromathresh
