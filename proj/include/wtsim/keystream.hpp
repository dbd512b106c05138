// Keystream generator model: a keyed linear feedback shift register as the
// canonical deterministic key-expansion FSM, plus an "ideal" tag for the
// perfectly uniform keystream assumed by the single-block analyses (the
// ideal variant has no sampling entry point; the equivocation code treats
// it as a distributional assumption).
//
// Taps name the exponents of the feedback polynomial, leading term
// included, constant term implicit: taps {8,6,5,4} means
// x^8 + x^6 + x^5 + x^4 + 1, and the sequence obeys
// s[i+L] = s[i] xor s[i+4] xor s[i+5] xor s[i+6].

#pragma once

#include <cstdint>
#include <vector>

#include "wtsim/gf2.hpp"

namespace wtsim {

struct Key {
    BitVector bits;
};

struct KeystreamModel {
    enum class Kind { ideal, keyed_fsm };

    Kind kind = Kind::ideal;
    std::size_t state_bits = 0;        // keyed_fsm only; equals the key length
    std::vector<unsigned> taps;        // keyed_fsm only; sorted descending

    static KeystreamModel ideal() { return {}; }
    static KeystreamModel lfsr(std::size_t bits, std::vector<unsigned> taps);
    // Maximal-length taps for 2 <= bits <= 20.
    static KeystreamModel default_lfsr(std::size_t bits);
};

// Output block t (1-based) of length n: bits (t-1)*n .. t*n-1 of the LFSR
// sequence seeded with the key. The all-zero key is remapped to the
// all-ones state so the register never sits on its fixed point; this makes
// the zero key and the all-ones key share a stream, the one collision of
// the key -> stream map.
BitVector keystream_block(const KeystreamModel& model, const Key& key,
                          std::uint64_t t, std::size_t n);

// First `len` bits of the stream; keystream_block slices this.
BitVector keystream_prefix(const KeystreamModel& model, const Key& key, std::size_t len);

// All 2^key_bits keys in lexicographic order (key 0 first). Refused above
// the cap; posterior work beyond it must sample instead.
std::vector<Key> enumerate_keys(std::size_t key_bits, std::size_t cap = 20);

}  // namespace wtsim
