#include <doctest.h>

#include "wtsim/coding.hpp"

using namespace wtsim;

namespace {

constexpr const char* kCoset4 = "0010;0001;1010;0101";

WiretapCode example_code() {
    return WiretapCode::build(2, hconcat(BitMatrix::identity(2), BitMatrix::identity(2)));
}

}  // namespace

TEST_CASE("repetition code construction") {
    const LinearBlockCode rep = make_repetition(4, 3);
    CHECK(rep.k() == 4);
    CHECK(rep.n() == 12);
    CHECK(rep.min_dist() == 3);
    CHECK(rep.correct_radius() == 1);
    CHECK(rep.encode(BitVector::from_bits({1, 0, 0, 0})).to_string() == "111000000000");

    const LinearBlockCode bit = make_repetition(1, 3);
    CHECK(bit.encode(BitVector::from_bits({0})).to_string() == "000");
    CHECK(bit.encode(BitVector::from_bits({1})).to_string() == "111");

    CHECK(make_repetition(2, 5).correct_radius() == 2);
    CHECK_THROWS_AS(make_repetition(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_repetition(2, 1), std::invalid_argument);
}

TEST_CASE("hamming(7,4)") {
    const LinearBlockCode code = make_hamming_7_4();
    CHECK(code.k() == 4);
    CHECK(code.n() == 7);
    CHECK(code.correct_radius() == 1);
    CHECK(code.encode(BitVector(4)).is_zero());

    // Minimum nonzero codeword weight, by independent enumeration.
    std::size_t min_w = 7;
    for (std::uint64_t msg = 1; msg < 16; ++msg)
        min_w = std::min(min_w, code.encode(BitVector::from_word(msg, 4)).weight());
    CHECK(min_w == 3);
    CHECK(code.min_dist() == 3);

    // Every single-bit error corrected: 16 x 7 cases.
    for (std::uint64_t msg = 0; msg < 16; ++msg) {
        const BitVector m = BitVector::from_word(msg, 4);
        const BitVector cw = code.encode(m);
        for (std::size_t i = 0; i < 7; ++i) {
            BitVector w = cw;
            w.flip(i);
            const DecodeOutcome out = code.decode(w);
            REQUIRE(!out.detected_failure);
            REQUIRE(*out.message == m);
        }
    }
}

TEST_CASE("bounded-distance decode contract") {
    const LinearBlockCode rep = make_repetition(4, 3);
    const BitVector msg = BitVector::from_bits({1, 0, 1, 1});
    const BitVector cw = rep.encode(msg);

    CHECK(*rep.decode(cw).message == msg);

    BitVector one_flip = cw;
    one_flip.flip(5);
    CHECK(*rep.decode(one_flip).message == msg);

    // Two flips in different blocks: outside radius 1, reported as failure
    // even though majority voting per block would fix it.
    BitVector two_flips = cw;
    two_flips.flip(0);
    two_flips.flip(3);
    CHECK(rep.decode(two_flips).detected_failure);
    CHECK(!rep.decode(two_flips).message.has_value());

    // k=1 undetected error: sent 000, received 110 decodes to 1.
    const LinearBlockCode bit = make_repetition(1, 3);
    const DecodeOutcome out = bit.decode(BitVector::from_string("110"));
    CHECK(!out.detected_failure);
    CHECK(out.message->to_string() == "1");

    CHECK_THROWS_AS(rep.decode(BitVector(5)), std::invalid_argument);
    CHECK_THROWS_AS(rep.encode(BitVector(5)), std::invalid_argument);
}

TEST_CASE("every error pattern within radius is corrected") {
    const auto exhaust = [](const LinearBlockCode& code) {
        for (std::uint64_t msg = 0; msg < (std::uint64_t{1} << code.k()); ++msg) {
            const BitVector m = BitVector::from_word(msg, code.k());
            const BitVector cw = code.encode(m);
            // weight-0 and weight-1 patterns cover radius 1; radius-2 codes
            // get the weight-2 patterns too
            REQUIRE(*code.decode(cw).message == m);
            for (std::size_t i = 0; i < code.n(); ++i) {
                BitVector w = cw;
                w.flip(i);
                if (code.correct_radius() >= 1) REQUIRE(*code.decode(w).message == m);
                for (std::size_t j = i + 1; j < code.n() && code.correct_radius() >= 2; ++j) {
                    BitVector w2 = w;
                    w2.flip(j);
                    REQUIRE(*code.decode(w2).message == m);
                }
            }
        }
    };
    exhaust(make_repetition(3, 3));
    exhaust(make_repetition(2, 5));
    exhaust(make_hamming_7_4());
}

TEST_CASE("generator rank validation") {
    CHECK_THROWS_AS(LinearBlockCode(BitMatrix::parse("11;11")), std::invalid_argument);
    CHECK_THROWS_AS(LinearBlockCode(BitMatrix(1, 70)), std::invalid_argument);
}

TEST_CASE("wiretap build reproduces the 4x4 coset matrix") {
    const WiretapCode code = example_code();
    CHECK(code.l() == 2);
    CHECK(code.m() == 4);
    CHECK(code.gh().to_literal() == kCoset4);
    CHECK(mat_mul(code.gh(), code.gh_inv()) == BitMatrix::identity(4));

    const WiretapValidation v = code.validate();
    CHECK(v.invertible);
    CHECK(v.secure);
    CHECK(v.sparsity_gh == 6);
    CHECK(v.sparsity_gh_inv == 6);
}

TEST_CASE("wiretap build, 2x2 case") {
    const WiretapCode code = WiretapCode::build(1, BitMatrix::parse("11"));
    CHECK(code.gh() == BitMatrix::parse("01;11"));
    CHECK(mat_mul(code.gh(), code.gh_inv()) == BitMatrix::identity(2));
}

TEST_CASE("wiretap build rejections") {
    // G4 with a zero column: a data bit no random bit touches.
    CHECK_THROWS_WITH_AS(
        (void)WiretapCode::build(1, BitMatrix::parse("100;010")),
        doctest::Contains("security requirement violated"), std::invalid_argument);
    // Not in systematic [I | G4] form.
    CHECK_THROWS_AS((void)WiretapCode::build(2, BitMatrix::parse("0110;1001")),
                    std::invalid_argument);
    // Dimension nonsense.
    CHECK_THROWS_AS((void)WiretapCode::build(3, BitMatrix::parse("11")), std::invalid_argument);
}

TEST_CASE("wiretap encode/decode") {
    const WiretapCode code = example_code();
    CHECK(code.encode(BitVector::from_bits({1, 0}), BitVector::from_bits({1, 1})) ==
          BitVector::from_bits({1, 1, 0, 1}));
    CHECK(code.encode(BitVector(2), BitVector(2)).is_zero());
    // a = e1, u = 0 selects the first coset-representative row.
    CHECK(code.encode(BitVector::from_bits({1, 0}), BitVector(2)) == code.gh().row(0));

    const auto [a, u] = code.decode(BitVector::from_bits({1, 1, 0, 1}));
    CHECK(a == BitVector::from_bits({1, 0}));
    CHECK(u == BitVector::from_bits({1, 1}));

    const auto [a0, u0] = code.decode(BitVector(4));
    CHECK(a0.is_zero());
    CHECK(u0.is_zero());

    CHECK_THROWS_AS(code.encode(BitVector(1), BitVector(2)), std::invalid_argument);
}

TEST_CASE("wiretap round-trip, exhaustive") {
    const auto roundtrip = [](const WiretapCode& code) {
        for (std::uint64_t av = 0; av < (std::uint64_t{1} << code.l()); ++av) {
            for (std::uint64_t uv = 0; uv < (std::uint64_t{1} << (code.m() - code.l())); ++uv) {
                const BitVector a = BitVector::from_word(av, code.l());
                const BitVector u = BitVector::from_word(uv, code.m() - code.l());
                const auto [da, du] = code.decode(code.encode(a, u));
                REQUIRE(da == a);
                REQUIRE(du == u);
            }
        }
    };
    roundtrip(example_code());
    roundtrip(WiretapCode::build(1, BitMatrix::parse("11")));
    roundtrip(WiretapCode::build(3, BitMatrix::parse("100101;010110;001011")));
}

TEST_CASE("validate on arbitrary matrices") {
    // Identity mixes no randomness into the data: insecure layout.
    const WiretapValidation ident = WiretapCode::from_gh(2, BitMatrix::identity(4)).validate();
    CHECK(ident.invertible);
    CHECK(!ident.secure);

    const WiretapValidation sing = WiretapCode::from_gh(2, BitMatrix(4, 4)).validate();
    CHECK(!sing.invertible);
    CHECK(sing.sparsity_gh_inv == 0);

    CHECK_THROWS_AS(WiretapCode::from_gh(2, BitMatrix(4, 4)).gh_inv(), std::logic_error);
}

TEST_CASE("flipping a u-bit reaches every data position iff G4 has no zero column") {
    const auto covered_by_flips = [](const WiretapCode& code) {
        const std::size_t rand_bits = code.m() - code.l();
        const BitVector a(code.l());
        bool all_covered = true;
        for (std::size_t i = 0; i < code.l() && all_covered; ++i) {
            bool covered = false;
            for (std::size_t j = 0; j < rand_bits && !covered; ++j) {
                BitVector u(rand_bits);
                u.set(j, true);
                const BitVector delta = code.encode(a, u) ^ code.encode(a, BitVector(rand_bits));
                covered = delta.get(rand_bits + i);
            }
            all_covered = covered;
        }
        return all_covered;
    };
    const WiretapCode good = example_code();
    CHECK(covered_by_flips(good) == !has_zero_column(good.g4()));
    CHECK(covered_by_flips(good));

    // from_gh lets an insecure layout through so the experiment can run.
    const WiretapCode bad = WiretapCode::from_gh(1, BitMatrix::parse("001;100;010"));
    CHECK(covered_by_flips(bad) == !has_zero_column(bad.g4()));
    CHECK(!covered_by_flips(bad));
}

TEST_CASE("combined generator") {
    const WiretapCode w = example_code();
    const LinearBlockCode rep = make_repetition(4, 3);
    const BitMatrix g = combined_generator(w, rep);
    CHECK(g.rows() == 4);
    CHECK(g.cols() == 12);
    // Row 1 of G_H is 0010; repetition expands it blockwise.
    CHECK(g.row(0).to_string() == "000000111000");

    // Identity wiretap matrix collapses G to the ecc generator.
    CHECK(combined_generator(WiretapCode::from_gh(2, BitMatrix::identity(4)), rep) ==
          rep.generator());

    // Encode equivalence over all 16 inputs.
    for (std::uint64_t av = 0; av < 4; ++av) {
        for (std::uint64_t uv = 0; uv < 4; ++uv) {
            const BitVector a = BitVector::from_word(av, 2);
            const BitVector u = BitVector::from_word(uv, 2);
            REQUIRE(vec_mat_mul(BitVector::concat(a, u), g) == rep.encode(w.encode(a, u)));
        }
    }

    CHECK_THROWS_AS(combined_generator(w, make_repetition(3, 3)), std::invalid_argument);
}
