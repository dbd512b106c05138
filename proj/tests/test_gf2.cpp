#include <doctest.h>

#include "wtsim/gf2.hpp"
#include "wtsim/rng.hpp"

using namespace wtsim;

namespace {

// The 4x4 coset matrix used throughout: [[0 I2],[I2 I2]].
constexpr const char* kCoset4 = "0010;0001;1010;0101";
// Its Gauss-Jordan inverse, checked below by multiplying back.
constexpr const char* kCoset4Inv = "1010;0101;1000;0100";

BitMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m.set(i, j, rng.bernoulli(0.5));
    return m;
}

}  // namespace

TEST_CASE("bitvector basics") {
    const BitVector v = BitVector::from_string("0110");
    CHECK(v.size() == 4);
    CHECK(v.weight() == 2);
    CHECK(v.to_string() == "0110");
    CHECK(v.as_word() == 0b0110u);  // element 0 is the least significant bit
    CHECK(BitVector::from_word(v.as_word(), 4) == v);
    CHECK(BitVector::concat(v, BitVector::from_string("1")).to_string() == "01101");
    CHECK(v.slice(1, 2).to_string() == "11");
    CHECK((v ^ v).is_zero());
    CHECK_THROWS_AS(v ^ BitVector(3), std::invalid_argument);
    CHECK_THROWS_AS(BitVector::from_string("01x"), std::invalid_argument);

    BitVector longv(130);
    longv.set(129, true);
    CHECK(longv.weight() == 1);
    CHECK(longv.slice(128, 2).to_string() == "01");
}

TEST_CASE("matrix literal parse and print") {
    const BitMatrix m = BitMatrix::parse(kCoset4);
    CHECK(m.rows() == 4);
    CHECK(m.cols() == 4);
    CHECK(m.to_literal() == kCoset4);
    CHECK(BitMatrix::parse("10\n01") == BitMatrix::identity(2));
    CHECK_THROWS_AS(BitMatrix::parse("10;0"), std::invalid_argument);
    CHECK_THROWS_AS(BitMatrix::parse(""), std::invalid_argument);
}

TEST_CASE("mat_mul") {
    const BitMatrix m = BitMatrix::parse(kCoset4);
    CHECK(mat_mul(BitMatrix::identity(4), m) == m);

    const BitMatrix inv = BitMatrix::parse(kCoset4Inv);
    CHECK(mat_mul(m, inv) == BitMatrix::identity(4));
    CHECK(mat_mul(inv, m) == BitMatrix::identity(4));

    CHECK_THROWS_AS(mat_mul(BitMatrix(2, 3), BitMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("vec_mat_mul") {
    const BitMatrix m = BitMatrix::parse(kCoset4);
    // XOR of rows 1, 3, 4.
    CHECK(vec_mat_mul(BitVector::from_bits({1, 0, 1, 1}), m) ==
          BitVector::from_bits({1, 1, 0, 1}));
    CHECK(vec_mat_mul(BitVector(4), m).is_zero());
    for (std::size_t i = 0; i < 4; ++i) {
        BitVector e(4);
        e.set(i, true);
        CHECK(vec_mat_mul(e, m) == m.row(i));
    }
    CHECK_THROWS_AS(vec_mat_mul(BitVector(3), m), std::invalid_argument);
}

TEST_CASE("mat_inverse") {
    CHECK(*mat_inverse(BitMatrix::identity(5)) == BitMatrix::identity(5));
    CHECK(*mat_inverse(BitMatrix::parse(kCoset4)) == BitMatrix::parse(kCoset4Inv));
    CHECK(!mat_inverse(BitMatrix(2, 2)).has_value());
    CHECK_THROWS_AS(mat_inverse(BitMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("rank") {
    CHECK(gf2_rank(BitMatrix::identity(3)) == 3);
    CHECK(gf2_rank(BitMatrix::parse(kCoset4).submatrix(2, 0, 2, 4)) == 2);
    CHECK(gf2_rank(BitMatrix::parse("11;11")) == 1);
    CHECK(gf2_rank(BitMatrix(3, 3)) == 0);
}

TEST_CASE("has_zero_column") {
    CHECK(!has_zero_column(BitMatrix::identity(2)));
    CHECK(!has_zero_column(BitMatrix::parse(kCoset4).submatrix(2, 2, 2, 2)));
    CHECK(has_zero_column(BitMatrix::parse("10;10")));
}

TEST_CASE("random inverses multiply back to identity; rank detects singularity") {
    Rng rng(7);
    for (std::size_t n = 1; n <= 12; ++n) {
        for (int rep = 0; rep < 20; ++rep) {
            const BitMatrix a = random_matrix(rng, n, n);
            const auto inv = mat_inverse(a);
            if (inv) {
                CHECK(mat_mul(a, *inv) == BitMatrix::identity(n));
                CHECK(mat_mul(*inv, a) == BitMatrix::identity(n));
                CHECK(gf2_rank(a) == n);
            } else {
                CHECK(gf2_rank(a) < n);
            }
        }
    }
}

TEST_CASE("vec_mat_mul distributes over xor, exhaustively up to dimension 6") {
    Rng rng(11);
    for (std::size_t r = 1; r <= 6; ++r) {
        const BitMatrix a = random_matrix(rng, r, r + 1);
        for (std::uint64_t vi = 0; vi < (std::uint64_t{1} << r); ++vi) {
            const BitVector v = BitVector::from_word(vi, r);
            const BitVector va = vec_mat_mul(v, a);
            for (std::uint64_t wi = 0; wi < (std::uint64_t{1} << r); ++wi) {
                const BitVector w = BitVector::from_word(wi, r);
                REQUIRE(vec_mat_mul(v ^ w, a) == (va ^ vec_mat_mul(w, a)));
            }
        }
    }
}

TEST_CASE("transpose and hconcat") {
    const BitMatrix m = BitMatrix::parse("110;001");
    CHECK(transpose(m) == BitMatrix::parse("10;10;01"));
    CHECK(hconcat(BitMatrix::identity(2), m.submatrix(0, 2, 2, 1)) == BitMatrix::parse("100;011"));
    CHECK_THROWS_AS(hconcat(BitMatrix(2, 2), BitMatrix(3, 2)), std::invalid_argument);
}
