#include "wtsim/equivocation.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace wtsim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

// Noise probability for every Hamming weight 0..n.
std::vector<double> weight_probs(double p, std::size_t n) {
    std::vector<double> pv(n + 1);
    for (std::size_t w = 0; w <= n; ++w)
        pv[w] = std::pow(p, static_cast<double>(w)) *
                std::pow(1.0 - p, static_cast<double>(n - w));
    return pv;
}

struct DecodeTables {
    std::vector<std::uint8_t> ok;    // per packed received word
    std::vector<std::uint32_t> a_hat;  // packed decoded data (valid when ok)
};

DecodeTables build_decode_tables(const SystemParams& params) {
    const std::size_t n = params.n();
    if (n > kDecodeTableCapBits)
        throw std::invalid_argument("codeword length above the decode-table cap");
    DecodeTables t;
    t.ok.assign(std::size_t{1} << n, 0);
    t.a_hat.assign(std::size_t{1} << n, 0);
    for (std::uint64_t d = 0; d < (std::uint64_t{1} << n); ++d) {
        const DecodeOutcome out = params.ecc.decode(BitVector::from_word(d, n));
        if (out.detected_failure) continue;
        t.ok[d] = 1;
        const BitVector data =
            params.wiretap ? params.wiretap->decode(*out.message).first : *out.message;
        t.a_hat[d] = static_cast<std::uint32_t>(data.as_word());
    }
    return t;
}

// Packed codeword C_ECC(C_H(a||u)) for every packed [a||u] (u absent in
// the baseline system).
std::vector<std::uint64_t> build_encoder_table(const SystemParams& params) {
    const std::size_t l = params.l();
    const std::size_t u_bits = params.wiretap ? params.m() - l : 0;
    std::vector<std::uint64_t> enc(std::size_t{1} << (l + u_bits));
    for (std::uint64_t au = 0; au < enc.size(); ++au) {
        const BitVector a = BitVector::from_word(au & ((std::uint64_t{1} << l) - 1), l);
        const BitVector word =
            params.wiretap
                ? params.ecc.encode(params.wiretap->encode(a, BitVector::from_word(au >> l, u_bits)))
                : params.ecc.encode(a);
        enc[au] = word.as_word();
    }
    return enc;
}

}  // namespace

double entropy_bits(std::span<const double> probs) {
    // Kahan-compensated; terms at or below the floor are exact zeros.
    double sum = 0.0, carry = 0.0;
    for (double p : probs) {
        if (p <= kProbFloor) continue;
        const double term = -p * std::log2(p) - carry;
        const double next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    return sum;
}

ObservationSet ObservationSet::from_session(std::span<const TransmissionRecord> records,
                                            bool include_flag) {
    ObservationSet obs;
    obs.rounds.reserve(records.size());
    for (const auto& r : records) {
        ObservationRound round{r.a, r.z, r.v_star, std::nullopt};
        if (include_flag) round.f_d = r.f_d;
        obs.rounds.push_back(std::move(round));
    }
    return obs;
}

PosteriorContext::PosteriorContext(const SystemParams& params, std::size_t tau_max)
    : params_(params), l_(params.l()),
      u_bits_(params.wiretap ? params.m() - params.l() : 0),
      n_(params.n()), kb_(params.key_bits), tau_max_(tau_max) {
    if (params.keystream.kind != KeystreamModel::Kind::keyed_fsm)
        throw std::invalid_argument("posterior: keyed keystream model required");
    if (kb_ > 20) throw std::invalid_argument("posterior: key space above the enumeration cap");
    if (tau_max < 1) throw std::invalid_argument("posterior: tau_max must be >= 1");

    enc_ = build_encoder_table(params);
    pv_ = weight_probs(params.channel.p, n_);
    DecodeTables dt = build_decode_tables(params);
    dec_ok_ = std::move(dt.ok);
    dec_msg_ = std::move(dt.a_hat);

    ks_.assign((std::size_t{1} << kb_) * tau_max_, 0);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << kb_); ++k) {
        const Key key{BitVector::from_word(k, kb_)};
        const BitVector stream = keystream_prefix(params.keystream, key, tau_max_ * n_);
        for (std::size_t t = 0; t < tau_max_; ++t)
            ks_[k * tau_max_ + t] = stream.slice(t * n_, n_).as_word();
    }
}

bool PosteriorContext::flag_for(std::uint64_t a_packed, std::uint64_t decrypt_packed) const {
    if (!dec_ok_[decrypt_packed]) return false;
    if (params_.flag_mode == FlagMode::detected) return true;
    return dec_msg_[decrypt_packed] == a_packed;
}

PosteriorResult PosteriorContext::posterior(const ObservationSet& obs) const {
    const std::size_t tau = obs.rounds.size();
    if (tau > tau_max_) throw std::invalid_argument("posterior: more rounds than tau_max");
    for (const auto& r : obs.rounds)
        if (r.a.size() != l_ || r.z.size() != n_ || r.v_star.size() != n_)
            throw std::invalid_argument("posterior: observation dimensions disagree");

    const std::size_t n_keys = std::size_t{1} << kb_;
    const double inv_u = std::exp2(-static_cast<double>(u_bits_));
    std::vector<double> logp(n_keys, 0.0);

    for (std::size_t k = 0; k < n_keys; ++k) {
        double lg = 0.0;
        for (std::size_t t = 0; t < tau && lg != kNegInf; ++t) {
            const auto& r = obs.rounds[t];
            const std::uint64_t ks = ks_[k * tau_max_ + t];
            const std::uint64_t zw = r.z.as_word();
            const std::uint64_t aw = r.a.as_word();
            if (r.f_d && flag_for(aw, zw ^ ks) != *r.f_d) {
                lg = kNegInf;
                break;
            }
            // v = z xor [a||u]G xor x xor v*, summed over u with its
            // closed-form Bernoulli likelihood.
            const std::uint64_t base = zw ^ ks ^ r.v_star.as_word();
            double s = 0.0;
            for (std::uint64_t u = 0; u < (std::uint64_t{1} << u_bits_); ++u) {
                const std::uint64_t v = base ^ enc_[aw | (u << l_)];
                s += pv_[std::popcount(v)];
            }
            s *= inv_u;
            lg = s > 0.0 ? lg + std::log2(s) : kNegInf;
        }
        logp[k] = lg;
    }

    double max_lg = kNegInf;
    for (double lg : logp) max_lg = std::max(max_lg, lg);

    PosteriorResult result;
    result.probs.assign(n_keys, 0.0);
    if (max_lg == kNegInf) {
        result.degenerate = true;
        for (double& p : result.probs) p = 1.0 / static_cast<double>(n_keys);
        return result;
    }
    for (std::size_t k = 0; k < n_keys; ++k)
        if (logp[k] != kNegInf) result.probs[k] = std::exp2(logp[k] - max_lg);
    const double total = pairwise_sum(result.probs);
    for (double& p : result.probs) p /= total;
    return result;
}

PosteriorResult posterior_over_keys(const SystemParams& params, const ObservationSet& obs) {
    return PosteriorContext(params, std::max<std::size_t>(obs.rounds.size(), 1)).posterior(obs);
}

std::string var_set_label(VarSet target, VarSet cond) {
    static constexpr std::pair<Var, const char*> kNames[] = {
        {VarK, "K"}, {VarA, "A"}, {VarU, "U"}, {VarX, "X"},
        {VarV, "V"}, {VarZ, "Z"}, {VarFd, "Fd"},
    };
    auto join = [](VarSet set) {
        std::string s;
        for (const auto& [var, name] : kNames) {
            if (!(set & var)) continue;
            if (!s.empty()) s += ',';
            s += name;
        }
        return s;
    };
    return "H(" + join(target) + "|" + join(cond) + ")";
}

namespace {

// Full enumeration of the joint distribution of tau rounds. Accumulates
// the (target, cond) and cond marginals, then H(T|C) = H(T,C) - H(C).
class ExactEngine {
public:
    ExactEngine(const SystemParams& params, const ExactOptions& opts)
        : params_(params), tau_(opts.tau), l_(params.l()),
          u_bits_(params.wiretap ? params.m() - params.l() : 0), n_(params.n()),
          kb_(params.key_bits),
          keyed_(params.keystream.kind == KeystreamModel::Kind::keyed_fsm) {
        if (tau_ < 1) throw std::invalid_argument("exact: tau must be >= 1");
        v_star_w_ = opts.v_star.empty() ? 0 : opts.v_star.as_word();
        if (!opts.v_star.empty() && opts.v_star.size() != n_)
            throw std::invalid_argument("exact: v* length mismatch");

        const std::size_t state_bits =
            tau_ * (l_ + u_bits_ + n_) + (keyed_ ? kb_ : tau_ * n_);
        if (state_bits > kExactStateCapBits)
            throw std::invalid_argument(
                "exact: joint state space exceeds 2^" + std::to_string(kExactStateCapBits) +
                "; use the Monte-Carlo estimator");

        enc_ = build_encoder_table(params);
        pv_ = weight_probs(params.channel.p, n_);
        DecodeTables dt = build_decode_tables(params);
        dec_ok_ = std::move(dt.ok);
        dec_a_ = std::move(dt.a_hat);

        a_.resize(tau_);
        u_.resize(tau_);
        x_.resize(tau_);
        v_.resize(tau_);
        z_.resize(tau_);
        fd_.resize(tau_);
    }

    double conditional_entropy(VarSet target, VarSet cond) {
        if ((target | cond) & VarK) {
            if (!keyed_) throw std::invalid_argument("exact: K requires the keyed model");
        }
        if (width_of(target) + width_of(cond) > 62)
            throw std::invalid_argument("exact: tuple too wide to pack");
        target_ = target;
        cond_ = cond;
        joint_.clear();
        condm_.clear();

        if (keyed_) {
            const std::size_t n_keys = std::size_t{1} << kb_;
            const double w_key = std::exp2(-static_cast<double>(kb_));
            for (std::uint64_t k = 0; k < n_keys; ++k) {
                key_ = k;
                const Key key{BitVector::from_word(k, kb_)};
                const BitVector stream = keystream_prefix(params_.keystream, key, tau_ * n_);
                for (std::size_t t = 0; t < tau_; ++t)
                    x_[t] = stream.slice(t * n_, n_).as_word();
                recurse(0, w_key);
            }
        } else {
            key_ = 0;
            recurse(0, 1.0);
        }
        return map_entropy(joint_) - map_entropy(condm_);
    }

private:
    std::size_t width_of(VarSet set) const {
        std::size_t w = 0;
        if (set & VarA) w += tau_ * l_;
        if (set & VarU) w += tau_ * u_bits_;
        if (set & VarX) w += tau_ * n_;
        if (set & VarV) w += tau_ * n_;
        if (set & VarZ) w += tau_ * n_;
        if (set & VarFd) w += tau_;
        if (set & VarK) w += kb_;
        return w;
    }

    std::uint64_t pack(VarSet set) const {
        std::uint64_t out = 0;
        std::size_t shift = 0;
        auto append_rounds = [&](const std::vector<std::uint64_t>& vals, std::size_t width) {
            for (std::size_t t = 0; t < tau_; ++t) {
                out |= vals[t] << shift;
                shift += width;
            }
        };
        if (set & VarA) append_rounds(a_, l_);
        if (set & VarU) append_rounds(u_, u_bits_);
        if (set & VarX) append_rounds(x_, n_);
        if (set & VarV) append_rounds(v_, n_);
        if (set & VarZ) append_rounds(z_, n_);
        if (set & VarFd) append_rounds(fd_, 1);
        if (set & VarK) out |= key_ << shift;
        return out;
    }

    void recurse(std::size_t t, double weight) {
        if (t == tau_) {
            joint_[pack(target_ | cond_)] += weight;
            condm_[pack(cond_)] += weight;
            return;
        }
        const double w_au =
            weight * std::exp2(-static_cast<double>(l_ + u_bits_)) *
            (keyed_ ? 1.0 : std::exp2(-static_cast<double>(n_)));
        const std::uint64_t x_hi = keyed_ ? 1 : (std::uint64_t{1} << n_);
        for (std::uint64_t av = 0; av < (std::uint64_t{1} << l_); ++av) {
            a_[t] = av;
            for (std::uint64_t uv = 0; uv < (std::uint64_t{1} << u_bits_); ++uv) {
                u_[t] = uv;
                const std::uint64_t cw = enc_[av | (uv << l_)];
                for (std::uint64_t xi = 0; xi < x_hi; ++xi) {
                    if (!keyed_) x_[t] = xi;
                    const std::uint64_t d_base = cw ^ v_star_w_;  // decode input before v
                    for (std::uint64_t vv = 0; vv < (std::uint64_t{1} << n_); ++vv) {
                        const double pw = pv_[std::popcount(vv)];
                        if (pw == 0.0) continue;
                        v_[t] = vv;
                        const std::uint64_t d = d_base ^ vv;
                        z_[t] = d ^ x_[t];
                        fd_[t] = flag_of(av, d);
                        recurse(t + 1, w_au * pw);
                    }
                }
            }
        }
    }

    std::uint64_t flag_of(std::uint64_t a_packed, std::uint64_t decrypt) const {
        if (!dec_ok_[decrypt]) return 0;
        if (params_.flag_mode == FlagMode::detected) return 1;
        return dec_a_[decrypt] == a_packed ? 1 : 0;
    }

    static double map_entropy(const std::unordered_map<std::uint64_t, double>& m) {
        double sum = 0.0, carry = 0.0;
        for (const auto& [key, p] : m) {
            if (p <= kProbFloor) continue;
            const double term = -p * std::log2(p) - carry;
            const double next = sum + term;
            carry = (next - sum) - term;
            sum = next;
        }
        return sum;
    }

    const SystemParams& params_;
    std::size_t tau_, l_, u_bits_, n_, kb_;
    bool keyed_;
    std::uint64_t v_star_w_ = 0;
    std::vector<std::uint64_t> enc_;
    std::vector<double> pv_;
    std::vector<std::uint8_t> dec_ok_;
    std::vector<std::uint32_t> dec_a_;

    VarSet target_ = 0, cond_ = 0;
    std::vector<std::uint64_t> a_, u_, x_, v_, z_, fd_;
    std::uint64_t key_ = 0;
    std::unordered_map<std::uint64_t, double> joint_, condm_;
};

}  // namespace

EquivocationReport conditional_entropy_exact(const SystemParams& params, VarSet target,
                                             VarSet cond, const ExactOptions& opts) {
    ExactEngine engine(params, opts);
    EquivocationReport report;
    report.quantity = var_set_label(target, cond);
    report.value_bits = engine.conditional_entropy(target, cond);
    report.mode = EquivocationReport::Mode::exact;
    return report;
}

ChainRuleCheck chain_rule_identity_check(const SystemParams& params, bool with_flag,
                                         const ExactOptions& opts) {
    ExactEngine engine(params, opts);
    ChainRuleCheck check;
    check.lhs = engine.conditional_entropy(VarX, VarA | VarZ);
    if (!with_flag) {
        check.rhs = engine.conditional_entropy(VarU, VarA | VarZ) +
                    engine.conditional_entropy(VarV, VarA | VarU | VarZ) -
                    engine.conditional_entropy(VarU, VarA | VarX | VarZ);
    } else {
        check.flag_determinism = engine.conditional_entropy(VarFd, VarA | VarX | VarZ);
        check.rhs = engine.conditional_entropy(VarU, VarA | VarZ) +
                    engine.conditional_entropy(VarFd, VarA | VarU | VarZ) +
                    engine.conditional_entropy(VarV, VarA | VarU | VarZ | VarFd) -
                    engine.conditional_entropy(VarU, VarA | VarX | VarZ | VarFd) -
                    check.flag_determinism;
    }
    check.residual = std::abs(check.lhs - check.rhs);
    return check;
}

std::string mc_quantity_label(McQuantity q) {
    return q == McQuantity::key_given_az ? "H(K|A,Z)" : "H(K|A,Z,Fd)";
}

EquivocationReport conditional_entropy_mc(const SystemParams& params, McQuantity quantity,
                                          std::size_t tau, std::size_t n_samples,
                                          const AdversaryStrategy& strategy, const Rng& base,
                                          std::size_t workers) {
    if (n_samples < 1) throw std::invalid_argument("mc: need at least one sample");
    const PosteriorContext ctx(params, std::max<std::size_t>(tau, 1));
    const bool with_flag = quantity == McQuantity::key_given_az_fd;

    std::vector<double> h(n_samples);
    if (tau == 0) {
        // No observations: the posterior is the uniform prior.
        std::fill(h.begin(), h.end(), static_cast<double>(params.key_bits));
    } else {
        auto run_range = [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                Rng rng = base.split(i);
                const Key key{rng.bits(params.key_bits)};
                const auto session =
                    run_session(params, key, tau, PlaintextSource{}, strategy, rng);
                h[i] = ctx.posterior(ObservationSet::from_session(session, with_flag)).entropy();
            }
        };
        const std::size_t nw = std::max<std::size_t>(1, std::min(workers, n_samples));
        if (nw == 1) {
            run_range(0, n_samples);
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (n_samples + nw - 1) / nw;
            for (std::size_t w = 0; w < nw; ++w) {
                const std::size_t begin = w * chunk;
                const std::size_t end = std::min(n_samples, begin + chunk);
                if (begin < end) pool.emplace_back(run_range, begin, end);
            }
            for (auto& th : pool) th.join();
        }
    }

    const double mean = pairwise_sum(h) / static_cast<double>(n_samples);
    double se = 0.0;
    if (n_samples > 1) {
        std::vector<double> dev(n_samples);
        for (std::size_t i = 0; i < n_samples; ++i) dev[i] = (h[i] - mean) * (h[i] - mean);
        const double var = pairwise_sum(dev) / static_cast<double>(n_samples - 1);
        se = std::sqrt(std::max(var, 0.0) / static_cast<double>(n_samples));
    }

    EquivocationReport report;
    report.quantity = mc_quantity_label(quantity);
    report.value_bits = mean;
    report.stderr_bits = se;
    report.mode = EquivocationReport::Mode::monte_carlo;
    report.samples = n_samples;
    return report;
}

double delta_ecc(std::size_t m_minus_l, double pe) {
    if (m_minus_l < 1) throw std::invalid_argument("delta_ecc: m-l must be >= 1");
    if (!(pe >= 0.0 && pe <= 1.0)) throw std::invalid_argument("delta_ecc: P_e outside [0, 1]");
    double v = binary_entropy(pe);
    if (pe > 0.0 && m_minus_l > 1)
        v += pe * std::log2(std::exp2(static_cast<double>(m_minus_l)) - 1.0);
    return v;
}

double map_decode_error_rate(const SystemParams& params, ErrorRateMode mode,
                             std::size_t n_trials, Rng* rng) {
    if (!params.wiretap)
        throw std::invalid_argument("map error rate: the coset recovery problem needs a wiretap code");
    const std::size_t u_bits = params.m() - params.l();
    const std::size_t n = params.n();
    const BitVector zero_a(params.l());

    std::vector<std::uint64_t> g(std::size_t{1} << u_bits);
    for (std::uint64_t u = 0; u < g.size(); ++u)
        g[u] = params.ecc.encode(params.wiretap->encode(zero_a, BitVector::from_word(u, u_bits)))
                   .as_word();
    const std::vector<double> pv = weight_probs(params.channel.p, n);

    // argmax_u P(w | u), lowest packed u on ties; p < 1/2 makes this the
    // minimum-weight residual.
    auto map_decode = [&](std::uint64_t w) {
        std::uint64_t best_u = 0;
        double best_p = -1.0;
        for (std::uint64_t u = 0; u < g.size(); ++u) {
            const double prob = pv[std::popcount(w ^ g[u])];
            if (prob > best_p) {
                best_p = prob;
                best_u = u;
            }
        }
        return best_u;
    };

    if (mode == ErrorRateMode::exact) {
        if (n > kDecodeTableCapBits)
            throw std::invalid_argument("map error rate: exact mode capped at n <= 20");
        const double inv_u = std::exp2(-static_cast<double>(u_bits));
        double p_correct = 0.0, carry = 0.0;
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
            const double term = inv_u * pv[std::popcount(w ^ g[map_decode(w)])] - carry;
            const double next = p_correct + term;
            carry = (next - p_correct) - term;
            p_correct = next;
        }
        return 1.0 - p_correct;
    }

    if (n_trials < 1 || rng == nullptr)
        throw std::invalid_argument("map error rate: sampled mode needs trials and a generator");
    std::size_t errors = 0;
    for (std::size_t i = 0; i < n_trials; ++i) {
        const std::uint64_t u = rng->bits(u_bits).as_word();
        const std::uint64_t w = g[u] ^ sample_noise(params.channel, n, *rng).as_word();
        if (map_decode(w) != u) ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(n_trials);
}

BoundReport lemma_bound(const BoundTerms& terms, std::optional<double> exact_bits) {
    BoundReport report;
    report.terms = terms;
    report.bound_bits = std::min(terms.h_u, terms.h_x + terms.h_v) +
                        std::min(terms.h_v, terms.h_x) - terms.delta;
    if (exact_bits) report.satisfied = *exact_bits >= report.bound_bits - 1e-9;
    return report;
}

double ideal_keystream_equivocation(const SystemParams& params) {
    if (!params.wiretap)
        throw std::invalid_argument("ideal equivocation: wiretap code required");
    const std::size_t u_bits = params.m() - params.l();
    const std::size_t n = params.n();
    if (n > kDecodeTableCapBits)
        throw std::invalid_argument("ideal equivocation: codeword length above the mixture cap");
    const BitVector zero_a(params.l());
    std::vector<std::uint64_t> g(std::size_t{1} << u_bits);
    for (std::uint64_t u = 0; u < g.size(); ++u)
        g[u] = params.ecc.encode(params.wiretap->encode(zero_a, BitVector::from_word(u, u_bits)))
                   .as_word();
    const std::vector<double> pv = weight_probs(params.channel.p, n);
    const double inv_u = std::exp2(-static_cast<double>(u_bits));

    std::vector<double> mix(std::size_t{1} << n, 0.0);
    for (std::uint64_t w = 0; w < mix.size(); ++w)
        for (std::uint64_t u = 0; u < g.size(); ++u)
            mix[w] += inv_u * pv[std::popcount(w ^ g[u])];
    return entropy_bits(mix);
}

ThresholdResult find_threshold(const SystemParams& params, const AdversaryStrategy& strategy,
                               McQuantity quantity, double epsilon_frac, std::size_t tau_max,
                               std::size_t n_samples, const Rng& base, std::size_t workers) {
    if (tau_max < 1) throw std::invalid_argument("find_threshold: tau_max must be >= 1");
    const double threshold = epsilon_frac * static_cast<double>(params.key_bits);
    ThresholdResult result;
    result.curve.reserve(tau_max);
    for (std::size_t tau = 1; tau <= tau_max; ++tau) {
        EquivocationReport rep =
            conditional_entropy_mc(params, quantity, tau, n_samples, strategy, base, workers);
        if (!result.tau_thres && rep.value_bits < threshold) result.tau_thres = tau;
        result.curve.push_back({tau, std::move(rep)});
    }
    return result;
}

ProofTerms theorem_proof_terms(const SystemParams& params, std::size_t tau,
                               std::size_t n_trials, const Rng& base) {
    if (tau < 1 || n_trials < 1) throw std::invalid_argument("proof terms: need tau, trials >= 1");
    if (!params.wiretap) throw std::invalid_argument("proof terms: wiretap code required");
    const std::size_t l = params.l();
    const std::size_t u_bits = params.m() - l;
    const std::size_t n = params.n();
    const std::size_t n_keys = std::size_t{1} << params.key_bits;
    const auto enc = build_encoder_table(params);
    const auto pv = weight_probs(params.channel.p, n);

    // Keystream blocks per candidate key.
    std::vector<std::uint64_t> ks(n_keys * tau);
    for (std::uint64_t k = 0; k < n_keys; ++k) {
        const BitVector stream = keystream_prefix(
            params.keystream, Key{BitVector::from_word(k, params.key_bits)}, tau * n);
        for (std::size_t t = 0; t < tau; ++t) ks[k * tau + t] = stream.slice(t * n, n).as_word();
    }

    // Joint MAP decode of (key, u_1..u_tau): the per-round u maximization
    // factors out, so per candidate key the score is a product of
    // per-round maxima.
    std::size_t errors = 0;
    std::vector<std::uint64_t> best_us(tau);
    for (std::size_t i = 0; i < n_trials; ++i) {
        Rng rng = base.split(i);
        const Key key{rng.bits(params.key_bits)};
        const auto session =
            run_session(params, key, tau, PlaintextSource{}, AdversaryStrategy::passive(), rng);
        double best_lg = kNegInf;
        std::uint64_t best_k = 0;
        for (std::uint64_t k = 0; k < n_keys; ++k) {
            double lg = 0.0;
            std::vector<std::uint64_t> us(tau, 0);
            for (std::size_t t = 0; t < tau && lg != kNegInf; ++t) {
                const std::uint64_t base_w =
                    session[t].z.as_word() ^ ks[k * tau + t] ^ session[t].v_star.as_word();
                const std::uint64_t aw = session[t].a.as_word();
                double best_p = -1.0;
                for (std::uint64_t u = 0; u < (std::uint64_t{1} << u_bits); ++u) {
                    const double prob = pv[std::popcount(base_w ^ enc[aw | (u << l)])];
                    if (prob > best_p) {
                        best_p = prob;
                        us[t] = u;
                    }
                }
                lg = best_p > 0.0 ? lg + std::log2(best_p) : kNegInf;
            }
            if (lg > best_lg) {
                best_lg = lg;
                best_k = k;
                best_us = us;
            }
        }
        bool wrong = best_k != key.bits.as_word();
        for (std::size_t t = 0; t < tau && !wrong; ++t)
            wrong = best_us[t] != session[t].u.as_word();
        if (wrong) ++errors;
    }

    ProofTerms terms;
    terms.pe_star = static_cast<double>(errors) / static_cast<double>(n_trials);

    const double pe_block = map_decode_error_rate(params, ErrorRateMode::exact);
    const double pe_joint = 1.0 - std::pow(1.0 - pe_block, static_cast<double>(tau));
    const double q = static_cast<double>(tau * u_bits);
    // log2(2^q - 1) via log1p for large q.
    const double log_term = q + std::log1p(-std::exp2(-q)) / std::numbers::ln2;
    terms.fano_u_given_key_bits =
        binary_entropy(pe_joint) + (pe_joint > 0.0 ? pe_joint * log_term : 0.0);
    return terms;
}

}  // namespace wtsim
