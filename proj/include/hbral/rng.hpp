#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

// Deterministic randomness helpers. All sampling in the library goes
// through these so that identical seeds give bit-identical results
// regardless of the platform's std::*_distribution implementations.

namespace hbral {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Derives an independent sub-seed for stream `n` from a master seed.
// Used to decouple e.g. the state-path stream from the noise stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n) {
    return splitmix64(master ^ splitmix64(n + 1));
}

// Uniform double in [0, 1) using the top 53 bits of the engine output.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal deviate via Box-Muller. Draws two uniforms per call;
// nothing is cached, so the draw count per call is fixed.
inline double standard_normal(std::mt19937_64& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1], keeps log finite
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
}

// Samples an index from a probability vector by inverse CDF walk.
// Falls back to the last positive entry if rounding pushes the
// cumulative sum below the drawn uniform.
inline std::size_t sample_index(std::span<const double> probs, std::mt19937_64& rng) {
    const double u = uniform01(rng);
    double cumulative = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        cumulative += probs[i];
        if (u < cumulative) return i;
    }
    for (std::size_t i = probs.size(); i-- > 0;) {
        if (probs[i] > 0.0) return i;
    }
    return probs.size() - 1;
}

}  // namespace hbral
