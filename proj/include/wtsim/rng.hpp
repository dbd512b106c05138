// Seedable, splittable deterministic random source.
//
// mt19937_64 is fully specified by the standard, so streams are bit-exact
// across platforms. Substreams are derived from the root seed through a
// splitmix64 mix of (seed, stream index), never from engine state, so a
// split at index i yields the same stream no matter how much the parent
// has been consumed. Doubles use the raw 53-bit mantissa construction
// rather than std::uniform_real_distribution, which is implementation
// defined.

#pragma once

#include <cstdint>
#include <random>

#include "wtsim/gf2.hpp"

namespace wtsim {

inline constexpr const char* kRngAlgorithm = "mt19937_64+splitmix64-substreams/1";

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1), 53 significant bits.
    double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    BitVector bits(std::size_t n) {
        BitVector v(n);
        for (std::size_t i = 0; i < n; ++i) v.set(i, eng_() >> 63);
        return v;
    }

    // Independent substream; deterministic function of (root seed, stream).
    Rng split(std::uint64_t stream) const {
        return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x632be59bd9b4e019ull)));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace wtsim
