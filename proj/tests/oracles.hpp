// Test-only reference computations, kept independent of the library's
// optimized paths so the two can be checked against each other.

#pragma once

#include <cmath>
#include <vector>

#include "wtsim/equivocation.hpp"
#include "wtsim/system.hpp"

namespace wtsim::testing {

// Posterior over keys by explicit joint enumeration of (u, v) per round:
// a term survives only when it reproduces the observed z exactly, and the
// decode flag is recomputed from (a, u, v') through the receiver chain.
// Deliberately mirrors nothing of the u-marginalized closed form.
inline std::vector<double> naive_posterior_over_keys(const SystemParams& params,
                                                     const ObservationSet& obs) {
    const std::size_t u_bits = params.wiretap ? params.m() - params.l() : 0;
    const std::size_t n = params.n();
    const std::size_t n_keys = std::size_t{1} << params.key_bits;
    const double p = params.channel.p;

    auto receiver_flag = [&](const BitVector& a, const BitVector& c, const BitVector& v_prime) {
        const DecodeOutcome out = params.ecc.decode(c ^ v_prime);
        if (out.detected_failure) return false;
        if (params.flag_mode == FlagMode::detected) return true;
        const BitVector a_hat =
            params.wiretap ? params.wiretap->decode(*out.message).first : *out.message;
        return a_hat == a;
    };

    std::vector<double> w(n_keys, 1.0);
    for (std::size_t k = 0; k < n_keys; ++k) {
        const Key key{BitVector::from_word(k, params.key_bits)};
        for (std::size_t t = 0; t < obs.rounds.size(); ++t) {
            const auto& round = obs.rounds[t];
            const BitVector x = keystream_block(params.keystream, key, t + 1, n);
            double s = 0.0;
            for (std::uint64_t uv = 0; uv < (std::uint64_t{1} << u_bits); ++uv) {
                const BitVector u = BitVector::from_word(uv, u_bits);
                const BitVector c = params.wiretap
                                        ? params.ecc.encode(params.wiretap->encode(round.a, u))
                                        : params.ecc.encode(round.a);
                for (std::uint64_t vv = 0; vv < (std::uint64_t{1} << n); ++vv) {
                    const BitVector v = BitVector::from_word(vv, n);
                    if ((c ^ x ^ v ^ round.v_star) != round.z) continue;
                    if (p == 0.0 && !v.is_zero()) continue;
                    if (round.f_d && receiver_flag(round.a, c, v ^ round.v_star) != *round.f_d)
                        continue;
                    double term = std::pow(0.5, static_cast<double>(u_bits));
                    if (p > 0.0)
                        term *= std::pow(p, static_cast<double>(v.weight())) *
                                std::pow(1.0 - p, static_cast<double>(n - v.weight()));
                    s += term;
                }
            }
            w[k] *= s;
        }
    }

    double total = 0.0;
    for (double x : w) total += x;
    if (total == 0.0) {
        for (double& x : w) x = 1.0 / static_cast<double>(n_keys);
        return w;
    }
    for (double& x : w) x /= total;
    return w;
}

}  // namespace wtsim::testing
