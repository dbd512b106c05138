#include "wtsim/system.hpp"

#include <ostream>
#include <stdexcept>

namespace wtsim {

SystemParams::SystemParams(std::optional<WiretapCode> wiretap_, LinearBlockCode ecc_,
                           ChannelParams channel_, KeystreamModel keystream_,
                           std::size_t key_bits_, FlagMode flag_mode_)
    : wiretap(std::move(wiretap_)), ecc(std::move(ecc_)), channel(channel_),
      keystream(std::move(keystream_)), key_bits(key_bits_), flag_mode(flag_mode_) {
    if (wiretap && wiretap->m() != ecc.k())
        throw std::invalid_argument("params: ecc message length must equal the wiretap block size");
    if (keystream.kind == KeystreamModel::Kind::keyed_fsm && keystream.state_bits != key_bits)
        throw std::invalid_argument("params: key length must equal the keystream register size");
    if (key_bits == 0) throw std::invalid_argument("params: key_bits must be positive");
}

AdversaryStrategy AdversaryStrategy::constant_vector(BitVector v_star) {
    AdversaryStrategy s;
    s.kind = Kind::constant_vector;
    s.v_star_template = std::move(v_star);
    return s;
}

namespace {

BitVector inner_encode(const SystemParams& params, const BitVector& a, const BitVector& u) {
    if (params.wiretap) return params.ecc.encode(params.wiretap->encode(a, u));
    if (!u.empty()) throw std::invalid_argument("baseline system takes no coset randomness");
    return params.ecc.encode(a);
}

void check_y(const SystemParams& params, const TransmissionRecord& rec) {
    if (rec.y != (inner_encode(params, rec.a, rec.u) ^ rec.x))
        throw std::logic_error("record invariant violated: y != C_ECC(C_H(a||u)) xor x");
}

}  // namespace

TransmissionRecord transmit_with_keystream(const SystemParams& params, const BitVector& x,
                                           const BitVector& a, const BitVector& u,
                                           std::uint64_t t) {
    if (x.size() != params.n()) throw std::invalid_argument("transmit: keystream length mismatch");
    TransmissionRecord rec;
    rec.t = t;
    rec.a = a;
    rec.u = u;
    rec.x = x;
    rec.y = inner_encode(params, a, u) ^ x;
    check_y(params, rec);
    return rec;
}

TransmissionRecord transmit(const SystemParams& params, const Key& key,
                            const BitVector& a, const BitVector& u, std::uint64_t t) {
    return transmit_with_keystream(params, keystream_block(params.keystream, key, t, params.n()),
                                   a, u, t);
}

void apply_channel(const SystemParams& params, TransmissionRecord& rec,
                   const BitVector& v_star, Rng& rng) {
    if (v_star.size() != params.n()) throw std::invalid_argument("apply_channel: v* length mismatch");
    rec.v = sample_noise(params.channel, params.n(), rng);
    rec.v_star = v_star;
    rec.v_prime = rec.v ^ rec.v_star;
    rec.z = rec.y ^ rec.v_prime;
    if (rec.z != (rec.y ^ rec.v ^ rec.v_star))
        throw std::logic_error("record invariant violated: z != y xor v xor v*");
}

ReceiveResult receive(const SystemParams& params, const Key& key,
                      const BitVector& z, std::uint64_t t) {
    if (z.size() != params.n()) throw std::invalid_argument("receive: word length mismatch");
    const BitVector decrypted = z ^ keystream_block(params.keystream, key, t, params.n());
    const DecodeOutcome out = params.ecc.decode(decrypted);
    if (out.detected_failure) return {std::nullopt, false};
    if (!params.wiretap) return {*out.message, true};
    return {params.wiretap->decode(*out.message).first, true};
}

BitVector kpa_residual(const SystemParams& params, const BitVector& a,
                       const BitVector& z, std::uint64_t t) {
    (void)t;
    if (!params.wiretap) return z ^ params.ecc.encode(a);
    return z ^ params.ecc.encode(params.wiretap->encode_data_part(a));
}

std::vector<TransmissionRecord> run_session(const SystemParams& params, const Key& key,
                                            std::size_t tau, const PlaintextSource& source,
                                            const AdversaryStrategy& strategy, Rng& rng) {
    if (tau < 1) throw std::invalid_argument("run_session: need tau >= 1");
    const std::size_t u_bits = params.wiretap ? params.m() - params.l() : 0;
    BitVector v_star(params.n());
    if (strategy.kind == AdversaryStrategy::Kind::constant_vector) {
        if (strategy.v_star_template.size() != params.n())
            throw std::invalid_argument("run_session: v* template length mismatch");
        v_star = strategy.v_star_template;
    }

    std::vector<TransmissionRecord> records;
    records.reserve(tau);
    for (std::size_t t = 1; t <= tau; ++t) {
        const BitVector a = source.fixed ? *source.fixed : rng.bits(params.l());
        const BitVector u = rng.bits(u_bits);
        TransmissionRecord rec = transmit(params, key, a, u, t);
        apply_channel(params, rec, v_star, rng);
        const ReceiveResult rx = receive(params, key, rec.z, t);
        rec.f_d = params.flag_mode == FlagMode::genie
                      ? (rx.a_hat.has_value() && *rx.a_hat == rec.a)
                      : rx.decode_ok;
        records.push_back(std::move(rec));
    }
    return records;
}

void write_trace(std::ostream& os, std::span<const TransmissionRecord> records) {
    os << "t,a,u,x,v,v_star,z,f_d\n";
    for (const auto& r : records) {
        os << r.t << ',' << r.a.to_string() << ',' << r.u.to_string() << ','
           << r.x.to_string() << ',' << r.v.to_string() << ',' << r.v_star.to_string() << ','
           << r.z.to_string() << ',' << (r.f_d ? 1 : 0) << '\n';
    }
}

}  // namespace wtsim
