#ifndef TNET_RANDOM_HPP
#define TNET_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

// Hand-rolled variate transforms on top of std::mt19937_64. The standard
// distribution classes are implementation-defined, so going through these
// keeps generated streams bit-identical across platforms and compilers.

namespace tnet::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Uniform double in [0, 1).
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * uniform01(gen);
}

/// Exponential variate with the given rate (mean 1/rate), strictly positive.
inline double exponential(std::mt19937_64& gen, double rate) {
    // (x >> 11) + 1 is in [1, 2^53], so u is in (0, 1].
    double u = static_cast<double>((gen() >> 11) + 1) * 0x1.0p-53;
    double e = -std::log(u) / rate;
    return e > 0.0 ? e : 0x1.0p-53 / rate;
}

/// Uniform integer in [0, n).
inline std::uint64_t below(std::mt19937_64& gen, std::uint64_t n) {
    return gen() % n;
}

} // namespace tnet::rng

#endif
