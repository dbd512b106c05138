#include "wtsim/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace wtsim {

namespace {

std::uint64_t tail_mask(std::size_t len) {
    const std::size_t rem = len & 63;
    return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

}  // namespace

BitVector BitVector::from_word(std::uint64_t packed, std::size_t len) {
    if (len > 64) throw std::invalid_argument("from_word: length exceeds 64");
    BitVector v(len);
    if (len > 0) v.words_[0] = packed & tail_mask(len);
    return v;
}

BitVector BitVector::from_string(std::string_view s) {
    BitVector v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') v.set(i, true);
        else if (s[i] != '0') throw std::invalid_argument("bit string must contain only '0'/'1'");
    }
    return v;
}

BitVector BitVector::from_bits(std::initializer_list<int> bits) {
    BitVector v(bits.size());
    std::size_t i = 0;
    for (int b : bits) v.set(i++, b != 0);
    return v;
}

std::size_t BitVector::weight() const {
    std::size_t w = 0;
    for (std::uint64_t word : words_) w += std::popcount(word);
    return w;
}

bool BitVector::is_zero() const {
    for (std::uint64_t word : words_) if (word != 0) return false;
    return true;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (len_ != other.len_) throw std::invalid_argument("xor: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

BitVector BitVector::operator^(const BitVector& other) const {
    BitVector r = *this;
    r ^= other;
    return r;
}

std::uint64_t BitVector::as_word() const {
    if (len_ > 64) throw std::invalid_argument("as_word: vector longer than 64 bits");
    return words_.empty() ? 0 : words_[0];
}

BitVector BitVector::slice(std::size_t begin, std::size_t count) const {
    if (begin + count > len_) throw std::invalid_argument("slice: out of range");
    BitVector r(count);
    for (std::size_t i = 0; i < count; ++i) r.set(i, get(begin + i));
    return r;
}

BitVector BitVector::concat(const BitVector& a, const BitVector& b) {
    BitVector r(a.len_ + b.len_);
    for (std::size_t i = 0; i < a.len_; ++i) r.set(i, a.get(i));
    for (std::size_t i = 0; i < b.len_; ++i) r.set(a.len_ + i, b.get(i));
    return r;
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) if (get(i)) s[i] = '1';
    return s;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows) {
    if (rows.empty()) throw std::invalid_argument("from_rows: no rows");
    BitMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
    return m;
}

BitMatrix BitMatrix::parse(std::string_view literal) {
    std::vector<BitVector> rows;
    std::size_t start = 0;
    auto flush = [&](std::size_t end) {
        if (end > start) rows.push_back(BitVector::from_string(literal.substr(start, end - start)));
        start = end + 1;
    };
    for (std::size_t i = 0; i < literal.size(); ++i)
        if (literal[i] == ';' || literal[i] == '\n') flush(i);
    flush(literal.size());
    if (rows.empty()) throw std::invalid_argument("matrix literal: no rows");
    for (const auto& r : rows)
        if (r.size() != rows[0].size())
            throw std::invalid_argument("matrix literal: ragged rows");
    return from_rows(rows);
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    for (std::size_t w = 0; w < wpr_; ++w) v.words_[w] = words_[r * wpr_ + w];
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) throw std::invalid_argument("set_row: length mismatch");
    for (std::size_t w = 0; w < wpr_; ++w) words_[r * wpr_ + w] = v.words()[w];
}

std::size_t BitMatrix::ones_count() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
}

BitMatrix BitMatrix::submatrix(std::size_t r0, std::size_t c0,
                               std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::invalid_argument("submatrix: out of range");
    BitMatrix m(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c)
            m.set(r, c, get(r0 + r, c0 + c));
    return m;
}

std::string BitMatrix::to_literal() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) s += ';';
        s += row(r).to_string();
    }
    return s;
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: inner dimensions disagree");
    BitMatrix c(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::uint64_t* out = c.words_.data() + r * c.wpr_;
        for (std::size_t i = 0; i < a.cols(); ++i) {
            if (!a.get(r, i)) continue;
            const std::uint64_t* src = b.words_.data() + i * b.wpr_;
            for (std::size_t w = 0; w < b.wpr_; ++w) out[w] ^= src[w];
        }
    }
    return c;
}

BitVector vec_mat_mul(const BitVector& v, const BitMatrix& a) {
    if (v.size() != a.rows()) throw std::invalid_argument("vec_mat_mul: dimensions disagree");
    BitVector out(a.cols());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v.get(i)) continue;
        const std::uint64_t* src = a.words_.data() + i * a.wpr_;
        for (std::size_t w = 0; w < a.wpr_; ++w) out.words_[w] ^= src[w];
    }
    return out;
}

std::optional<BitMatrix> mat_inverse(const BitMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("mat_inverse: matrix not square");
    const std::size_t n = a.rows();
    BitMatrix work = a;
    BitMatrix inv = BitMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        for (std::size_t r = col; r < n; ++r)
            if (work.get(r, col)) { pivot = r; break; }
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                bool t = work.get(pivot, c);
                work.set(pivot, c, work.get(col, c));
                work.set(col, c, t);
                t = inv.get(pivot, c);
                inv.set(pivot, c, inv.get(col, c));
                inv.set(col, c, t);
            }
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || !work.get(r, col)) continue;
            BitVector wr = work.row(r) ^ work.row(col);
            work.set_row(r, wr);
            BitVector ir = inv.row(r) ^ inv.row(col);
            inv.set_row(r, ir);
        }
    }
    return inv;
}

std::size_t gf2_rank(const BitMatrix& a) {
    BitMatrix work = a;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < work.cols() && rank < work.rows(); ++col) {
        std::size_t pivot = work.rows();
        for (std::size_t r = rank; r < work.rows(); ++r)
            if (work.get(r, col)) { pivot = r; break; }
        if (pivot == work.rows()) continue;
        if (pivot != rank) {
            BitVector t = work.row(pivot);
            work.set_row(pivot, work.row(rank));
            work.set_row(rank, t);
        }
        for (std::size_t r = 0; r < work.rows(); ++r) {
            if (r == rank || !work.get(r, col)) continue;
            work.set_row(r, work.row(r) ^ work.row(rank));
        }
        ++rank;
    }
    return rank;
}

bool has_zero_column(const BitMatrix& a) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
        bool any = false;
        for (std::size_t r = 0; r < a.rows() && !any; ++r) any = a.get(r, c);
        if (!any) return true;
    }
    return false;
}

BitMatrix transpose(const BitMatrix& a) {
    BitMatrix t(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a.get(r, c)) t.set(c, r, true);
    return t;
}

BitMatrix hconcat(const BitMatrix& left, const BitMatrix& right) {
    if (left.rows() != right.rows()) throw std::invalid_argument("hconcat: row counts disagree");
    BitMatrix m(left.rows(), left.cols() + right.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < left.cols(); ++c) m.set(r, c, left.get(r, c));
        for (std::size_t c = 0; c < right.cols(); ++c) m.set(r, left.cols() + c, right.get(r, c));
    }
    return m;
}

}  // namespace wtsim
