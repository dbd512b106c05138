#include "wtsim/codespec.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace wtsim {

namespace {

// "k=4,r=3" -> pairs; a comma token without '=' continues the previous
// value, so "taps=8,6,5,4" stays one entry.
std::vector<std::pair<std::string, std::string>> parse_kv(std::string_view s) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        if (comma == std::string_view::npos) comma = s.size();
        const std::string_view tok = s.substr(start, comma - start);
        const std::size_t eq = tok.find('=');
        if (eq == std::string_view::npos) {
            if (out.empty()) throw std::invalid_argument("spec: expected key=value");
            out.back().second += ',';
            out.back().second += std::string(tok);
        } else {
            out.emplace_back(std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1)));
        }
        start = comma + 1;
        if (comma == s.size()) break;
    }
    return out;
}

std::string find_kv(const std::vector<std::pair<std::string, std::string>>& kv,
                    const std::string& key) {
    for (const auto& [k, v] : kv)
        if (k == key) return v;
    throw std::invalid_argument("spec: missing field '" + key + "'");
}

std::size_t to_count(const std::string& s) {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("spec: bad number '" + s + "'");
    return static_cast<std::size_t>(v);
}

}  // namespace

LinearBlockCode parse_ecc_spec(std::string_view spec) {
    if (spec == "hamming74") return make_hamming_7_4();
    if (spec.starts_with("rep:")) {
        const auto kv = parse_kv(spec.substr(4));
        return make_repetition(to_count(find_kv(kv, "k")), to_count(find_kv(kv, "r")));
    }
    if (spec.starts_with("matrix:"))
        return LinearBlockCode(BitMatrix::parse(spec.substr(7)));
    throw std::invalid_argument("ecc spec: expected rep:..., hamming74 or matrix:...");
}

WiretapCode parse_wiretap_spec(std::string_view spec) {
    if (!spec.starts_with("coset:"))
        throw std::invalid_argument("wiretap spec: expected coset:l=...,inner=matrix:...");
    const auto kv = parse_kv(spec.substr(6));
    const std::size_t l = to_count(find_kv(kv, "l"));
    std::string inner = find_kv(kv, "inner");
    if (!inner.starts_with("matrix:"))
        throw std::invalid_argument("wiretap spec: inner generator must be matrix:...");
    inner = inner.substr(7);
    const std::size_t bar = inner.find('|');
    BitMatrix gen = bar == std::string::npos
                        ? BitMatrix::parse(inner)
                        : hconcat(BitMatrix::parse(inner.substr(0, bar)),
                                  BitMatrix::parse(inner.substr(bar + 1)));
    return WiretapCode::build(l, gen);
}

KeystreamModel parse_keystream_spec(std::string_view spec) {
    if (spec == "ideal") return KeystreamModel::ideal();
    if (spec.starts_with("lfsr:")) {
        const auto kv = parse_kv(spec.substr(5));
        const std::size_t bits = to_count(find_kv(kv, "bits"));
        std::vector<unsigned> taps;
        const std::string tap_str = find_kv(kv, "taps");
        std::size_t start = 0;
        while (start <= tap_str.size()) {
            std::size_t comma = tap_str.find(',', start);
            if (comma == std::string::npos) comma = tap_str.size();
            taps.push_back(static_cast<unsigned>(to_count(tap_str.substr(start, comma - start))));
            start = comma + 1;
            if (comma == tap_str.size()) break;
        }
        return KeystreamModel::lfsr(bits, std::move(taps));
    }
    throw std::invalid_argument("keystream spec: expected ideal or lfsr:bits=...,taps=...");
}

std::string default_wiretap_spec(std::size_t l, std::size_t m) {
    if (l == 0 || m <= l) throw std::invalid_argument("wiretap default: need 0 < l < m");
    const std::size_t rand_bits = m - l;
    std::string left, right;
    for (std::size_t i = 0; i < rand_bits; ++i) {
        if (i) {
            left += ';';
            right += ';';
        }
        for (std::size_t j = 0; j < rand_bits; ++j) left += (i == j) ? '1' : '0';
        for (std::size_t j = 0; j < l; ++j) right += (i == j % rand_bits) ? '1' : '0';
    }
    return "coset:l=" + std::to_string(l) + ",inner=matrix:" + left + "|" + right;
}

std::string default_keystream_spec(std::size_t key_bits) {
    const KeystreamModel m = KeystreamModel::default_lfsr(key_bits);
    std::string s = "lfsr:bits=" + std::to_string(key_bits) + ",taps=";
    for (std::size_t i = 0; i < m.taps.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(m.taps[i]);
    }
    return s;
}

}  // namespace wtsim
