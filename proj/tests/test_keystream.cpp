#include <doctest.h>

#include <map>

#include "wtsim/keystream.hpp"
#include "wtsim/rng.hpp"

using namespace wtsim;

namespace {

KeystreamModel small_lfsr() { return KeystreamModel::lfsr(3, {3, 2}); }

// Smallest period of the output sequence, from a long prefix.
std::size_t output_period(const KeystreamModel& model, const Key& key, std::size_t horizon) {
    const BitVector s = keystream_prefix(model, key, 2 * horizon);
    for (std::size_t p = 1; p <= horizon; ++p) {
        bool ok = true;
        for (std::size_t i = 0; i < horizon && ok; ++i) ok = s.get(i) == s.get(i + p);
        if (ok) return p;
    }
    return 0;
}

}  // namespace

TEST_CASE("keystream determinism and known 3-bit sequence") {
    const KeystreamModel m = small_lfsr();
    const Key key{BitVector::from_bits({1, 0, 0})};
    CHECK(keystream_block(m, key, 2, 5) == keystream_block(m, key, 2, 5));
    // x^3 + x^2 + 1: s[i+3] = s[i+2] xor s[i], seed 1,0,0.
    CHECK(keystream_block(m, key, 1, 7).to_string() == "1001110");
    CHECK(output_period(m, key, 7) == 7);
}

TEST_CASE("blocks are contiguous segments of one stream") {
    const KeystreamModel m = KeystreamModel::default_lfsr(8);
    Rng rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        const Key key{rng.bits(8)};
        const BitVector whole = keystream_block(m, key, 1, 8);
        CHECK(BitVector::concat(keystream_block(m, key, 1, 4), keystream_block(m, key, 2, 4)) ==
              whole);
        CHECK(keystream_block(m, key, 3, 5) == keystream_prefix(m, key, 15).slice(10, 5));
    }
}

TEST_CASE("stock polynomials are maximal length") {
    for (std::size_t bits = 2; bits <= 20; ++bits) {
        const KeystreamModel m = KeystreamModel::default_lfsr(bits);
        const Key key{BitVector::from_word(1, bits)};
        const std::size_t full = (std::size_t{1} << bits) - 1;
        REQUIRE(output_period(m, key, full) == full);
    }
}

TEST_CASE("key-to-stream map: injective except the documented zero-key remap") {
    // The all-zero seed is remapped to the all-ones state to dodge the
    // register's fixed point, so keys 0 and 2^L-1 share a stream; every
    // other pair stays distinct.
    for (std::size_t bits : {2u, 3u, 6u, 8u}) {
        const KeystreamModel m = KeystreamModel::default_lfsr(bits);
        std::map<std::string, std::vector<std::uint64_t>> by_stream;
        for (const Key& key : enumerate_keys(bits))
            by_stream[keystream_prefix(m, key, bits + 2).to_string()].push_back(
                key.bits.as_word());
        const std::uint64_t all_ones = (std::uint64_t{1} << bits) - 1;
        std::size_t collisions = 0;
        for (const auto& [stream, keys] : by_stream) {
            if (keys.size() == 1) continue;
            ++collisions;
            REQUIRE(keys == std::vector<std::uint64_t>{0, all_ones});
        }
        CHECK(collisions == 1);
        CHECK(by_stream.size() == (std::size_t{1} << bits) - 1);
    }
}

TEST_CASE("enumerate_keys") {
    const auto two = enumerate_keys(1);
    REQUIRE(two.size() == 2);
    CHECK(two[0].bits.to_string() == "0");
    CHECK(two[1].bits.to_string() == "1");

    const auto eight = enumerate_keys(3);
    REQUIRE(eight.size() == 8);
    CHECK(eight.front().bits.is_zero());
    CHECK(eight.back().bits.weight() == 3);

    CHECK_THROWS_WITH_AS((void)enumerate_keys(21), doctest::Contains("sampling"),
                         std::invalid_argument);
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(KeystreamModel::lfsr(3, {2}), std::invalid_argument);     // missing leading tap
    CHECK_THROWS_AS(KeystreamModel::lfsr(3, {3, 0}), std::invalid_argument);  // explicit constant
    CHECK_THROWS_AS(KeystreamModel::default_lfsr(25), std::invalid_argument);
    CHECK_THROWS_AS(keystream_block(KeystreamModel::ideal(), Key{BitVector(3)}, 1, 4),
                    std::invalid_argument);
    const KeystreamModel m = small_lfsr();
    CHECK_THROWS_AS(keystream_block(m, Key{BitVector(3)}, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(keystream_block(m, Key{BitVector(3)}, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(keystream_block(m, Key{BitVector(5)}, 1, 4), std::invalid_argument);
}
