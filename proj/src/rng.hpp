#pragma once

#include <cstdint>

namespace jones {

// SplitMix64 (Steele, Lea, Flood; public-domain constants). Counter-based and
// platform-independent, so identical seeds give bit-identical runs everywhere.
// Independent per-repetition streams derive from (seed, stream index) via
// stream(): state0 = mix(seed + index * 0x9E3779B97F4A7C15).
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 random bits
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // unbiased uniform integer in [0, n), n >= 1
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 s(seed + index * 0x9E3779B97F4A7C15ULL);
        s.state = s.next();
        return s;
    }
};

} // namespace jones
