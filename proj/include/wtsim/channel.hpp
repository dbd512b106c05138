// Binary symmetric channel with crossover probability p, and the base-2
// entropy/likelihood helpers shared by the equivocation computations.

#pragma once

#include "wtsim/gf2.hpp"
#include "wtsim/rng.hpp"

namespace wtsim {

struct ChannelParams {
    double p;
    // p must lie in [0, 0.5); a symmetric channel at exactly 1/2 makes
    // error-correction (and the threshold theorems) vacuous.
    explicit ChannelParams(double crossover);
};

// i.i.d. Bernoulli(p) noise vector.
BitVector sample_noise(const ChannelParams& params, std::size_t n, Rng& rng);

// log2 P(v) for the BSC: wt(v) log2 p + (n - wt(v)) log2 (1-p).
// For p = 0: 0 if v is the zero vector, -infinity otherwise.
double noise_log_prob(const ChannelParams& params, const BitVector& v);

// -q log2 q - (1-q) log2 (1-q), with h(0) = h(1) = 0. q outside [0,1] throws.
double binary_entropy(double q);

}  // namespace wtsim
