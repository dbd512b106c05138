// Exact and Monte-Carlo computation of the conditional entropies behind
// the equivocation bounds: key posteriors given known-plaintext
// observations, enumerated joint entropies for the chain-rule identities,
// the Fano correction term, the lower-bound evaluator, and the
// threshold-vs-tau sweep.
//
// Two computation modes with a hard cap between them: exhaustive
// enumeration of the joint state space (<= 2^26 states), and Monte Carlo
// over sessions where each sample's key posterior is still computed
// exactly, which keeps the estimator unbiased for E[H(K|obs)].

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wtsim/system.hpp"

namespace wtsim {

inline constexpr std::size_t kExactStateCapBits = 26;
inline constexpr std::size_t kDecodeTableCapBits = 20;
// Probabilities at or below this floor are treated as exact zeros inside
// entropy sums (the 0 log 0 = 0 convention, kept away from denormals).
inline constexpr double kProbFloor = 1e-300;

// Entropy of a discrete distribution given as (not necessarily normalized)
// probability masses; -sum p log2 p over entries above the floor.
double entropy_bits(std::span<const double> probs);

struct ObservationRound {
    BitVector a, z, v_star;
    std::optional<bool> f_d;
};

struct ObservationSet {
    std::vector<ObservationRound> rounds;

    static ObservationSet from_session(std::span<const TransmissionRecord> records,
                                       bool include_flag);
};

struct PosteriorResult {
    std::vector<double> probs;  // indexed by packed key value
    bool degenerate = false;    // all-zero likelihood (possible only at p = 0)

    double entropy() const { return entropy_bits(probs); }
};

// Reusable tables for repeated posterior evaluation against one system:
// the combined encoder output for every (a, u), noise likelihood by
// weight, the bounded-distance decode result for every n-bit word, and
// every key's keystream blocks up to tau_max.
class PosteriorContext {
public:
    PosteriorContext(const SystemParams& params, std::size_t tau_max);

    // P(key | observations), u marginalized in closed form per round; the
    // noise likelihood needs no enumeration over v.
    PosteriorResult posterior(const ObservationSet& obs) const;

    std::size_t key_count() const { return std::size_t{1} << kb_; }

private:
    const SystemParams& params_;
    std::size_t l_, u_bits_, n_, kb_, tau_max_;
    std::vector<std::uint64_t> enc_;    // packed codeword per packed [a||u]
    std::vector<double> pv_;            // noise probability by weight
    std::vector<std::uint8_t> dec_ok_;  // per packed received word
    std::vector<std::uint32_t> dec_msg_;
    std::vector<std::uint64_t> ks_;     // [key * tau_max + t-1]

    bool flag_for(std::uint64_t a_packed, std::uint64_t decrypt_packed) const;
};

PosteriorResult posterior_over_keys(const SystemParams& params, const ObservationSet& obs);

// Variables of the per-period joint distribution. A/U/X/V/Z/Fd take one
// value per round; K is the key, global across rounds (keyed model only).
enum Var : unsigned {
    VarA = 1u << 0,
    VarU = 1u << 1,
    VarX = 1u << 2,
    VarV = 1u << 3,
    VarZ = 1u << 4,
    VarFd = 1u << 5,
    VarK = 1u << 6,
};
using VarSet = unsigned;

std::string var_set_label(VarSet target, VarSet cond);

struct ExactOptions {
    std::size_t tau = 1;
    BitVector v_star;  // empty = all-zero (passive)
};

struct EquivocationReport {
    std::string quantity;
    double value_bits = 0.0;
    double stderr_bits = 0.0;
    enum class Mode { exact, monte_carlo } mode = Mode::exact;
    std::size_t samples = 0;
};

// H(target | cond) by full enumeration of (a, u, noise, x-or-key) over tau
// rounds. Throws when the state space exceeds the cap.
EquivocationReport conditional_entropy_exact(const SystemParams& params, VarSet target,
                                             VarSet cond, const ExactOptions& opts = {});

// Both chain-rule decompositions of the same joint entropy, reduced to the
// identity they force:
//   plain:  H(X|A,Z) = H(U|A,Z) + H(V|A,U,Z) - H(U|A,X,Z)
//   flag:   H(X|A,Z) = H(U|A,Z) + H(Fd|A,U,Z) + H(V|A,U,Z,Fd)
//                      - H(U|A,X,Z,Fd) - H(Fd|A,X,Z)
// Residuals are pure chain-rule algebra, so they vanish for any joint
// distribution. flag_determinism reports H(Fd|A,X,Z), the term that is
// itself zero because the flag is computable from (a, x, z).
struct ChainRuleCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double flag_determinism = 0.0;
};
ChainRuleCheck chain_rule_identity_check(const SystemParams& params, bool with_flag,
                                         const ExactOptions& opts = {});

enum class McQuantity { key_given_az, key_given_az_fd };
std::string mc_quantity_label(McQuantity q);

// Unbiased sampled estimate of H(K | A, Z [, Fd]) at horizon tau: sample
// (key, session), compute the exact posterior for the realized
// observations, average the posterior entropies. Sample i always draws
// from substream i of `base`, so values are identical for any worker
// count; sums are reduced pairwise in fixed order, so the result is
// bit-stable.
EquivocationReport conditional_entropy_mc(const SystemParams& params, McQuantity quantity,
                                          std::size_t tau, std::size_t n_samples,
                                          const AdversaryStrategy& strategy, const Rng& base,
                                          std::size_t workers = 1);

// Fano correction delta(C_ECC) = h(P_e) + P_e log2(2^(m-l) - 1).
double delta_ecc(std::size_t m_minus_l, double pe);

enum class ErrorRateMode { exact, sampled };

// Error probability of MAP decoding of the coset randomness: recover u
// from C_ECC(C_H(0||u)) xor v with the data part already removed. Ties
// break toward the lowest packed u. This is the P_e the Fano term wants.
double map_decode_error_rate(const SystemParams& params, ErrorRateMode mode,
                             std::size_t n_trials = 0, Rng* rng = nullptr);

struct BoundTerms {
    double h_u = 0.0;
    double h_v = 0.0;  // H(V^n) or H(V^n|Fd), caller's choice
    double h_x = 0.0;
    double delta = 0.0;
};

struct BoundReport {
    double bound_bits = 0.0;
    BoundTerms terms;
    std::optional<bool> satisfied;  // set when compared against an exact value
};

// min{H_U, H_X + H_V} + min{H_V, H_X} - delta; a negative value is
// reported as-is (the bound is then vacuous).
BoundReport lemma_bound(const BoundTerms& terms, std::optional<double> exact_bits = {});

// Ideal-model closed form for the keystream equivocation: with X uniform
// the posterior of (U, V) given (a, z) is its prior, so
// H(X^n | A, Z) = H(C_ECC(C_H(0||U)) xor V), a 2^(m-l)-component mixture.
// Exact for any p; the second computation route next to the enumeration
// engine.
double ideal_keystream_equivocation(const SystemParams& params);

struct ThresholdPoint {
    std::size_t tau = 0;
    EquivocationReport report;
};

struct ThresholdResult {
    std::optional<std::size_t> tau_thres;  // absent: never crossed within tau_max
    std::vector<ThresholdPoint> curve;
};

// Sweeps tau = 1..tau_max and reports the first tau whose estimate falls
// below epsilon_frac * key_bits. Every tau reuses the same substream
// layout of `base`, so longer sessions extend shorter ones sample by
// sample and the curve is tightly coupled.
ThresholdResult find_threshold(const SystemParams& params, const AdversaryStrategy& strategy,
                               McQuantity quantity, double epsilon_frac, std::size_t tau_max,
                               std::size_t n_samples, const Rng& base, std::size_t workers = 1);

// The two decoding-argument quantities from the threshold proofs, as
// side information for reports: the joint MAP error over (key, coset
// randomness) and the Fano bound on H(U^tau | A, K, Z).
struct ProofTerms {
    double pe_star = 0.0;
    double fano_u_given_key_bits = 0.0;
};
ProofTerms theorem_proof_terms(const SystemParams& params, std::size_t tau,
                               std::size_t n_trials, const Rng& base);

}  // namespace wtsim
