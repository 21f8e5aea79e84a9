#pragma once

#include <cstdint>

namespace rpolar {

/// Counter-derived splitmix64 stream. Streams built from (seed, stream-id)
/// are independent of worker assignment, which keeps parallel Monte-Carlo
/// runs reproducible for any thread count.
struct SplitMix64 {
    std::uint64_t state = 0;

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static SplitMix64 stream(std::uint64_t seed, std::uint64_t id) {
        SplitMix64 g;
        g.state = mix(seed ^ mix(id));
        return g;
    }

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    bool coin() { return next() >> 63; }

    double uniform01() { return (next() >> 11) * 0x1.0p-53; }

    /// Box-Muller, one sample per call (the pair's second half is discarded
    /// so streams stay position-independent).
    double gaussian();

    using result_type = std::uint64_t;
    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }
    std::uint64_t operator()() { return next(); }
};

}  // namespace rpolar
