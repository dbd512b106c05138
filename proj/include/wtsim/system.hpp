// End-to-end pipeline: wiretap encode -> error-correction encode ->
// keystream XOR -> binary symmetric channel (plus adversary-injected
// noise) -> receiver with decode-success feedback flag.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "wtsim/channel.hpp"
#include "wtsim/coding.hpp"
#include "wtsim/keystream.hpp"
#include "wtsim/rng.hpp"

namespace wtsim {

// genie: the flag says whether the decoded data equals what was sent (the
// idealized feedback the analysis conditions on). detected: the flag is
// the receiver-observable bounded-distance decode success, which can be
// true on an undetected error.
enum class FlagMode { genie, detected };

struct SystemParams {
    std::optional<WiretapCode> wiretap;  // absent = unenhanced baseline
    LinearBlockCode ecc;
    ChannelParams channel;
    KeystreamModel keystream;
    std::size_t key_bits;
    FlagMode flag_mode = FlagMode::genie;

    SystemParams(std::optional<WiretapCode> wiretap_, LinearBlockCode ecc_,
                 ChannelParams channel_, KeystreamModel keystream_,
                 std::size_t key_bits_, FlagMode flag_mode_ = FlagMode::genie);

    std::size_t l() const { return wiretap ? wiretap->l() : ecc.k(); }
    std::size_t m() const { return ecc.k(); }
    std::size_t n() const { return ecc.n(); }
};

struct TransmissionRecord {
    std::uint64_t t = 0;
    BitVector a, u;          // data and coset randomness (u empty in baseline)
    BitVector x;             // keystream block
    BitVector v, v_star, v_prime;  // channel noise, injected noise, their xor
    BitVector y, z;          // sent and received words
    bool f_d = false;
};

struct AdversaryStrategy {
    enum class Kind { passive, constant_vector };
    Kind kind = Kind::passive;
    BitVector v_star_template;  // constant_vector only

    static AdversaryStrategy passive() { return {}; }
    static AdversaryStrategy constant_vector(BitVector v_star);
};

struct PlaintextSource {
    std::optional<BitVector> fixed;  // nullopt: sample uniformly each round
};

// Computes y = C_ECC(C_H(a||u)) xor f^(t)(K) and fills the record through y.
TransmissionRecord transmit(const SystemParams& params, const Key& key,
                            const BitVector& a, const BitVector& u, std::uint64_t t);
// Test hook: same, with the keystream block supplied directly.
TransmissionRecord transmit_with_keystream(const SystemParams& params, const BitVector& x,
                                           const BitVector& a, const BitVector& u,
                                           std::uint64_t t);

// Samples v and fills v, v_star, v_prime and z = y xor v xor v_star.
void apply_channel(const SystemParams& params, TransmissionRecord& rec,
                   const BitVector& v_star, Rng& rng);

struct ReceiveResult {
    std::optional<BitVector> a_hat;  // absent on decode failure
    bool decode_ok = false;
};

// Decrypt with the local keystream, bounded-distance decode, invert the
// wiretap code. Failure is data, not an error.
ReceiveResult receive(const SystemParams& params, const Key& key,
                      const BitVector& z, std::uint64_t t);

// The adversary's deterministic reduction of a known-plaintext observation:
// baseline z xor C_ECC(a) = x xor v; enhanced the same with only the
// data half of the wiretap encoding removed, leaving the coset randomness in.
BitVector kpa_residual(const SystemParams& params, const BitVector& a,
                       const BitVector& z, std::uint64_t t);

// tau rounds of sample-encode-transmit-corrupt-receive. Per round the
// consumption order of rng is: a (unless fixed), u, v.
std::vector<TransmissionRecord> run_session(const SystemParams& params, const Key& key,
                                            std::size_t tau, const PlaintextSource& source,
                                            const AdversaryStrategy& strategy, Rng& rng);

// CSV trace, one record per line: t,a,u,x,v,v_star,z,f_d.
void write_trace(std::ostream& os, std::span<const TransmissionRecord> records);

}  // namespace wtsim
