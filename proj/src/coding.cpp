#include "wtsim/coding.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace wtsim {

namespace {
constexpr std::size_t kMaxMessageBits = 20;
}

LinearBlockCode::LinearBlockCode(BitMatrix generator)
    : k_(generator.rows()), n_(generator.cols()), gen_(std::move(generator)) {
    if (k_ == 0 || n_ == 0) throw std::invalid_argument("code: empty generator");
    if (k_ > kMaxMessageBits) throw std::invalid_argument("code: message length above enumeration cap");
    if (n_ > 64) throw std::invalid_argument("code: codeword length above 64");
    if (gf2_rank(gen_) != k_) throw std::invalid_argument("code: generator is rank deficient");

    codebook_.assign(std::size_t{1} << k_, 0);
    std::vector<std::uint64_t> rows(k_);
    for (std::size_t i = 0; i < k_; ++i) rows[i] = gen_.row(i).as_word();
    std::size_t min_w = n_;
    for (std::uint64_t msg = 0; msg < codebook_.size(); ++msg) {
        std::uint64_t cw = 0;
        for (std::size_t i = 0; i < k_; ++i)
            if ((msg >> i) & 1) cw ^= rows[i];
        codebook_[msg] = cw;
        if (msg != 0) min_w = std::min<std::size_t>(min_w, std::popcount(cw));
    }
    min_dist_ = min_w;
    radius_ = (min_dist_ - 1) / 2;
}

BitVector LinearBlockCode::encode(const BitVector& msg) const {
    if (msg.size() != k_) throw std::invalid_argument("encode: message length mismatch");
    return BitVector::from_word(codebook_[msg.as_word()], n_);
}

DecodeOutcome LinearBlockCode::decode(const BitVector& word) const {
    if (word.size() != n_) throw std::invalid_argument("decode: word length mismatch");
    const std::uint64_t w = word.as_word();
    std::size_t best = n_ + 1;
    std::uint64_t best_msg = 0;
    for (std::uint64_t msg = 0; msg < codebook_.size(); ++msg) {
        const std::size_t d = std::popcount(w ^ codebook_[msg]);
        if (d < best) {
            best = d;
            best_msg = msg;
            if (d == 0) break;
        }
    }
    if (best > radius_) return {std::nullopt, true};
    return {BitVector::from_word(best_msg, k_), false};
}

LinearBlockCode make_repetition(std::size_t k, std::size_t r) {
    if (r < 3 || r % 2 == 0)
        throw std::invalid_argument("repetition: repeat factor must be odd and >= 3");
    BitMatrix gen(k, k * r);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < r; ++j)
            gen.set(i, i * r + j, true);
    return LinearBlockCode(std::move(gen));
}

LinearBlockCode make_hamming_7_4() {
    return LinearBlockCode(BitMatrix::parse("1000110;0100101;0010011;0001111"));
}

WiretapCode::WiretapCode(std::size_t l, BitMatrix gh, std::optional<BitMatrix> inv)
    : l_(l), m_(gh.rows()), gh_(std::move(gh)), gh_inv_(std::move(inv)) {}

WiretapCode WiretapCode::build(std::size_t l, const BitMatrix& inner_gen) {
    const std::size_t rand_bits = inner_gen.rows();
    const std::size_t m = inner_gen.cols();
    if (l == 0 || rand_bits == 0 || m != l + rand_bits)
        throw std::invalid_argument("wiretap: inner generator must be (m-l) x m with 0 < l < m");
    if (inner_gen.submatrix(0, 0, rand_bits, rand_bits) != BitMatrix::identity(rand_bits))
        throw std::invalid_argument("wiretap: inner generator not in systematic [I | G4] form");
    const BitMatrix g4 = inner_gen.submatrix(0, rand_bits, rand_bits, l);
    if (has_zero_column(g4))
        throw std::invalid_argument(
            "wiretap: security requirement violated: a data bit is untouched by the randomness");
    if (gf2_rank(inner_gen) != rand_bits)
        throw std::invalid_argument("wiretap: inner generator is rank deficient");

    BitMatrix gh(m, m);
    for (std::size_t i = 0; i < l; ++i) gh.set(i, rand_bits + i, true);  // top blocks [0 | I_l]
    for (std::size_t r = 0; r < rand_bits; ++r)
        for (std::size_t c = 0; c < m; ++c)
            if (inner_gen.get(r, c)) gh.set(l + r, c, true);

    auto inv = mat_inverse(gh);
    if (!inv) throw std::invalid_argument("wiretap: constructed matrix is singular");
    return WiretapCode(l, std::move(gh), std::move(inv));
}

WiretapCode WiretapCode::from_gh(std::size_t l, BitMatrix gh) {
    if (gh.rows() != gh.cols()) throw std::invalid_argument("wiretap: matrix not square");
    if (l == 0 || l >= gh.rows()) throw std::invalid_argument("wiretap: need 0 < l < m");
    auto inv = mat_inverse(gh);
    return WiretapCode(l, std::move(gh), std::move(inv));
}

const BitMatrix& WiretapCode::gh_inv() const {
    if (!gh_inv_) throw std::logic_error("wiretap: matrix has no inverse");
    return *gh_inv_;
}

BitVector WiretapCode::encode(const BitVector& a, const BitVector& u) const {
    if (a.size() != l_ || u.size() != m_ - l_)
        throw std::invalid_argument("wiretap encode: length mismatch");
    return vec_mat_mul(BitVector::concat(a, u), gh_);
}

std::pair<BitVector, BitVector> WiretapCode::decode(const BitVector& c) const {
    if (c.size() != m_) throw std::invalid_argument("wiretap decode: length mismatch");
    const BitVector au = vec_mat_mul(c, gh_inv());
    return {au.slice(0, l_), au.slice(l_, m_ - l_)};
}

BitVector WiretapCode::encode_data_part(const BitVector& a) const {
    if (a.size() != l_) throw std::invalid_argument("wiretap encode: length mismatch");
    return vec_mat_mul(BitVector::concat(a, BitVector(m_ - l_)), gh_);
}

WiretapValidation WiretapCode::validate() const {
    WiretapValidation v;
    v.invertible = gh_inv_.has_value();
    const std::size_t rand_bits = m_ - l_;
    const bool systematic =
        gh_.submatrix(l_, 0, rand_bits, rand_bits) == BitMatrix::identity(rand_bits);
    v.secure = systematic && !has_zero_column(g4());
    v.sparsity_gh = gh_.ones_count();
    v.sparsity_gh_inv = gh_inv_ ? gh_inv_->ones_count() : 0;
    return v;
}

BitMatrix combined_generator(const WiretapCode& w, const LinearBlockCode& ecc) {
    if (ecc.k() != w.m())
        throw std::invalid_argument("combined generator: ecc message length must equal m");
    return mat_mul(w.gh(), ecc.generator());
}

}  // namespace wtsim
