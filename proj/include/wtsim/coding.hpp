// The two concatenated encoders of the transmit pipeline: the coset
// (wire-tap) code C_H mapping [data || randomness] through an invertible
// m x m matrix, and the (k -> n) error-correction code with its
// bounded-distance decoder.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wtsim/gf2.hpp"

namespace wtsim {

struct DecodeOutcome {
    std::optional<BitVector> message;  // present iff !detected_failure
    bool detected_failure = false;
};

class LinearBlockCode {
public:
    // Generator must have full row rank. The minimum distance is found by
    // exhaustive codeword enumeration, which also backs the decoder, so k
    // is capped at 20 message bits and n at 64.
    explicit LinearBlockCode(BitMatrix generator);

    std::size_t k() const { return k_; }
    std::size_t n() const { return n_; }
    std::size_t min_dist() const { return min_dist_; }
    std::size_t correct_radius() const { return radius_; }
    const BitMatrix& generator() const { return gen_; }

    BitVector encode(const BitVector& msg) const;

    // Bounded-distance contract: returns the message of the unique codeword
    // within Hamming distance correct_radius(); beyond the radius the
    // failure is reported even when a nearest codeword is unique.
    DecodeOutcome decode(const BitVector& word) const;

    // Packed codeword for packed message, for enumeration-heavy callers.
    std::uint64_t encode_word(std::uint64_t msg) const { return codebook_[msg]; }

private:
    std::size_t k_, n_;
    BitMatrix gen_;
    std::size_t min_dist_, radius_;
    std::vector<std::uint64_t> codebook_;  // indexed by packed message
};

LinearBlockCode make_repetition(std::size_t k, std::size_t r);
LinearBlockCode make_hamming_7_4();

struct WiretapValidation {
    bool invertible = false;
    bool secure = false;
    std::size_t sparsity_gh = 0;
    std::size_t sparsity_gh_inv = 0;  // zero when no inverse exists
};

// Coset encoder: c = [a || u] G_H with the block layout
//
//   G_H = [ 0        I_l  ]      (rows 1..l:   the coset representatives)
//         [ I_{m-l}  G4   ]      (rows l+1..m: systematic inner code [I | G4])
//
// `build` assembles and fully validates the default construction from a
// systematic inner generator; `from_gh` wraps an arbitrary square matrix
// without judgement so that validate() can be exercised on bad inputs.
class WiretapCode {
public:
    static WiretapCode build(std::size_t l, const BitMatrix& inner_gen);
    static WiretapCode from_gh(std::size_t l, BitMatrix gh);

    std::size_t l() const { return l_; }
    std::size_t m() const { return m_; }
    const BitMatrix& gh() const { return gh_; }
    const BitMatrix& gh_inv() const;
    BitMatrix g4() const { return gh_.submatrix(l_, m_ - l_, m_ - l_, l_); }

    BitVector encode(const BitVector& a, const BitVector& u) const;
    std::pair<BitVector, BitVector> decode(const BitVector& c) const;

    // The data-only half of the split C_H(a||u) = C_{H,a}(a) xor C_{H,u}(u),
    // i.e. [a || 0] G_H.
    BitVector encode_data_part(const BitVector& a) const;

    WiretapValidation validate() const;

private:
    WiretapCode(std::size_t l, BitMatrix gh, std::optional<BitMatrix> inv);

    std::size_t l_, m_;
    BitMatrix gh_;
    std::optional<BitMatrix> gh_inv_;
};

// G = G_H G_ECC, the single matrix summarizing both encodings; requires
// ecc.k() == w.m().
BitMatrix combined_generator(const WiretapCode& w, const LinearBlockCode& ecc);

}  // namespace wtsim
