// Dense GF(2) linear algebra on bit-packed words.
//
// BitVector and BitMatrix carry every codeword, noise pattern, keystream
// block and generator matrix in the library. Entries are packed 64 per
// machine word; trailing bits of the last word are always zero, so
// equality and hashing work on the raw words.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wtsim {

class BitMatrix;

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : words_((len + 63) / 64, 0), len_(len) {}

    // Low `len` bits of `packed`, bit i of the word becoming element i.
    static BitVector from_word(std::uint64_t packed, std::size_t len);
    // String of '0'/'1', leftmost character becoming element 0.
    static BitVector from_string(std::string_view s);
    static BitVector from_bits(std::initializer_list<int> bits);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) words_[i >> 6] |= mask; else words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t weight() const;
    bool is_zero() const;

    BitVector& operator^=(const BitVector& other);
    BitVector operator^(const BitVector& other) const;
    bool operator==(const BitVector&) const = default;

    // Packed value; requires size() <= 64.
    std::uint64_t as_word() const;

    BitVector slice(std::size_t begin, std::size_t count) const;
    static BitVector concat(const BitVector& a, const BitVector& b);

    std::string to_string() const;
    std::span<const std::uint64_t> words() const { return words_; }

private:
    std::vector<std::uint64_t> words_;
    std::size_t len_ = 0;

    friend class BitMatrix;
    friend BitVector vec_mat_mul(const BitVector&, const BitMatrix&);
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), words_(rows * wpr_, 0) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(const std::vector<BitVector>& rows);
    // Matrix literal: rows of '0'/'1' separated by ';' or newlines,
    // e.g. "0010;0001;1010;0101".
    static BitMatrix parse(std::string_view literal);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        std::uint64_t& w = words_[r * wpr_ + (c >> 6)];
        if (v) w |= mask; else w &= ~mask;
    }

    BitVector row(std::size_t r) const;
    void set_row(std::size_t r, const BitVector& v);
    std::span<const std::uint64_t> row_words(std::size_t r) const {
        return {words_.data() + r * wpr_, wpr_};
    }

    // Count of nonzero entries (the sparsity metric).
    std::size_t ones_count() const;

    // Block [r0, r0+nr) x [c0, c0+nc).
    BitMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    bool operator==(const BitMatrix&) const = default;

    std::string to_literal() const;

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> words_;

    friend BitMatrix mat_mul(const BitMatrix&, const BitMatrix&);
    friend BitVector vec_mat_mul(const BitVector&, const BitMatrix&);
};

// Standard GF(2) products (XOR-accumulated AND). Dimension mismatches throw
// std::invalid_argument.
BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);
BitVector vec_mat_mul(const BitVector& v, const BitMatrix& a);

// Gauss-Jordan with the lowest-index nonzero row as pivot. Returns the
// inverse, or nullopt for a singular matrix. Non-square input throws.
std::optional<BitMatrix> mat_inverse(const BitMatrix& a);

std::size_t gf2_rank(const BitMatrix& a);
bool has_zero_column(const BitMatrix& a);
BitMatrix transpose(const BitMatrix& a);
BitMatrix hconcat(const BitMatrix& left, const BitMatrix& right);

}  // namespace wtsim
