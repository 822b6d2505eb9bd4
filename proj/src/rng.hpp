#pragma once

#include <cstdint>
#include <limits>
#include <random>

// Deterministic, platform-independent randomness. Streams are derived from
// (seed, domain, index) with a splitmix64 finalizer and feed mt19937_64, whose
// single-integer seeding is fully specified by the standard. Bounded integers
// use rejection sampling; std::uniform_int_distribution is avoided because its
// mapping is implementation-defined. Identifier: "splitmix64-mt19937_64/v1".
namespace mcen::rng {

inline constexpr const char* identifier = "splitmix64-mt19937_64/v1";

// splitmix64 finalizer round.
inline uint64_t mix(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Independent stream domains within one experiment seed.
enum class domain : uint64_t { generation = 1, pair_sampling = 2, bootstrap = 3, reservoir = 4 };

inline std::mt19937_64 make_stream(uint64_t seed, domain d, uint64_t index) {
    return std::mt19937_64(mix(mix(seed ^ mix(static_cast<uint64_t>(d))) + index));
}

// Uniform in [0, span), span >= 1, by rejection.
inline uint64_t bounded(std::mt19937_64& g, uint64_t span) {
    const uint64_t max = std::numeric_limits<uint64_t>::max();
    const uint64_t limit = max - max % span;
    uint64_t r;
    do {
        r = g();
    } while (r >= limit);
    return r % span;
}

// Uniform integer in [lo, hi].
inline long long uniform_int(std::mt19937_64& g, long long lo, long long hi) {
    return lo + static_cast<long long>(bounded(g, static_cast<uint64_t>(hi - lo) + 1));
}

// Uniform real in [lo, hi) with 53 random bits.
inline double uniform_real(std::mt19937_64& g, double lo, double hi) {
    const double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

}  // namespace mcen::rng
