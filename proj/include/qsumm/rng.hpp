#pragma once

#include <cstdint>
#include <random>

namespace qsumm {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Stream seed for task (a, b) under a master seed. Tasks indexed this way
// get independent generators regardless of scheduling order.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (a + 0x9E3779B97F4A7C15ull));
    h = splitmix64(h ^ (b + 0xD1B54A32D192ED03ull));
    return h;
}

// mt19937_64's output sequence is pinned by the standard, so draws are
// reproducible across platforms.
using RandomEngine = std::mt19937_64;

inline RandomEngine make_engine(std::uint64_t stream_seed) {
    return RandomEngine(stream_seed);
}

// Uniform in [0, 1) with 53 random bits; avoids the library's
// implementation-defined distributions.
inline double uniform_unit(RandomEngine& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(RandomEngine& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

// Uniform integer in [0, bound). Modulo bias is irrelevant for the small
// bounds used here (Pauli choices), determinism is what matters.
inline std::uint64_t uniform_index(RandomEngine& rng, std::uint64_t bound) {
    return rng() % bound;
}

}  // namespace qsumm
