#include "wtsim/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wtsim {

ChannelParams::ChannelParams(double crossover) : p(crossover) {
    if (!(p >= 0.0 && p < 0.5))
        throw std::invalid_argument("channel crossover probability must lie in [0, 0.5)");
}

BitVector sample_noise(const ChannelParams& params, std::size_t n, Rng& rng) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng.bernoulli(params.p)) v.set(i, true);
    return v;
}

double noise_log_prob(const ChannelParams& params, const BitVector& v) {
    const double w = static_cast<double>(v.weight());
    const double n = static_cast<double>(v.size());
    if (params.p == 0.0)
        return v.is_zero() ? 0.0 : -std::numeric_limits<double>::infinity();
    return w * std::log2(params.p) + (n - w) * std::log2(1.0 - params.p);
}

double binary_entropy(double q) {
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
    double h = 0.0;
    if (q > 0.0) h -= q * std::log2(q);
    if (q < 1.0) h -= (1.0 - q) * std::log2(1.0 - q);
    return h;
}

}  // namespace wtsim
