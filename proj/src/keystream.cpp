#include "wtsim/keystream.hpp"

#include <algorithm>
#include <stdexcept>

namespace wtsim {

KeystreamModel KeystreamModel::lfsr(std::size_t bits, std::vector<unsigned> taps) {
    if (bits < 2 || bits > 63) throw std::invalid_argument("lfsr: state size must be in [2, 63]");
    std::sort(taps.begin(), taps.end(), std::greater<unsigned>());
    taps.erase(std::unique(taps.begin(), taps.end()), taps.end());
    if (taps.empty() || taps.front() != bits)
        throw std::invalid_argument("lfsr: taps must include the register length");
    if (taps.back() == 0) throw std::invalid_argument("lfsr: constant term is implicit");
    KeystreamModel m;
    m.kind = Kind::keyed_fsm;
    m.state_bits = bits;
    m.taps = std::move(taps);
    return m;
}

KeystreamModel KeystreamModel::default_lfsr(std::size_t bits) {
    // Maximal-length feedback polynomials (XAPP052 table).
    static const std::vector<unsigned> table[] = {
        /* 2*/ {2, 1},  /* 3*/ {3, 2},        /* 4*/ {4, 3},         /* 5*/ {5, 3},
        /* 6*/ {6, 5},  /* 7*/ {7, 6},        /* 8*/ {8, 6, 5, 4},   /* 9*/ {9, 5},
        /*10*/ {10, 7}, /*11*/ {11, 9},       /*12*/ {12, 6, 4, 1},  /*13*/ {13, 4, 3, 1},
        /*14*/ {14, 5, 3, 1}, /*15*/ {15, 14}, /*16*/ {16, 15, 13, 4}, /*17*/ {17, 14},
        /*18*/ {18, 11}, /*19*/ {19, 6, 2, 1}, /*20*/ {20, 17},
    };
    if (bits < 2 || bits > 20)
        throw std::invalid_argument("default_lfsr: no stock polynomial for this size");
    return lfsr(bits, table[bits - 2]);
}

namespace {

struct LfsrState {
    std::uint64_t state;      // bit i holds sequence element s[pos + i]
    std::uint64_t recur_mask; // bits i with s[i] feeding s[L] (constant term + inner taps)
    std::size_t len;

    bool step() {
        const bool out = state & 1;
        std::uint64_t fb = state & recur_mask;
        fb ^= fb >> 32;
        fb ^= fb >> 16;
        fb ^= fb >> 8;
        fb ^= fb >> 4;
        fb ^= fb >> 2;
        fb ^= fb >> 1;
        state = (state >> 1) | ((fb & 1) << (len - 1));
        return out;
    }
};

LfsrState seed_lfsr(const KeystreamModel& model, const Key& key) {
    if (model.kind != KeystreamModel::Kind::keyed_fsm)
        throw std::invalid_argument("keystream: the ideal model cannot be sampled");
    if (key.bits.size() != model.state_bits)
        throw std::invalid_argument("keystream: key length must equal the register size");
    std::uint64_t s = key.bits.as_word();
    const std::uint64_t full = (model.state_bits == 64)
        ? ~std::uint64_t{0} : (std::uint64_t{1} << model.state_bits) - 1;
    if (s == 0) s = full;  // zero-key remap, see header
    // x^L + sum x^j + 1 gives s[i+L] = sum over inner taps j of s[i+j], + s[i]
    std::uint64_t mask = 1;  // the implicit constant term
    for (unsigned tap : model.taps)
        if (tap != model.state_bits) mask |= std::uint64_t{1} << tap;
    return {s, mask, model.state_bits};
}

}  // namespace

BitVector keystream_prefix(const KeystreamModel& model, const Key& key, std::size_t len) {
    LfsrState reg = seed_lfsr(model, key);
    BitVector out(len);
    for (std::size_t i = 0; i < len; ++i)
        if (reg.step()) out.set(i, true);
    return out;
}

BitVector keystream_block(const KeystreamModel& model, const Key& key,
                          std::uint64_t t, std::size_t n) {
    if (t < 1 || n < 1) throw std::invalid_argument("keystream_block: need t >= 1 and n >= 1");
    LfsrState reg = seed_lfsr(model, key);
    for (std::uint64_t i = 0; i < (t - 1) * n; ++i) reg.step();
    BitVector out(n);
    for (std::size_t i = 0; i < n; ++i)
        if (reg.step()) out.set(i, true);
    return out;
}

std::vector<Key> enumerate_keys(std::size_t key_bits, std::size_t cap) {
    if (key_bits < 1) throw std::invalid_argument("enumerate_keys: key_bits must be >= 1");
    if (key_bits > cap)
        throw std::invalid_argument(
            "enumerate_keys: key space above the enumeration cap; use sampling instead");
    std::vector<Key> keys;
    keys.reserve(std::size_t{1} << key_bits);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << key_bits); ++v)
        keys.push_back({BitVector::from_word(v, key_bits)});
    return keys;
}

}  // namespace wtsim
