// Reproducible experiment runner: configuration parsing (flags over
// config file over defaults), scenario dispatch, CSV emission. Output
// starts with a timestamp comment line; everything after it is a
// deterministic function of (config, seed).

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wtsim/equivocation.hpp"
#include "wtsim/system.hpp"

namespace wtsim {

inline constexpr const char* kArtifactVersion = "wtsim 0.1.0";

struct ExperimentConfig {
    std::string scenario = "passive";
    std::size_t l = 2;
    std::size_t m = 4;
    std::string ecc = "rep:k=4,r=3";
    std::string wiretap;    // empty: stock coset code for (l, m)
    std::string keystream;  // empty: stock maximal-length LFSR for key_bits
    double p = 0.1;
    std::size_t key_bits = 8;
    std::size_t tau_lo = 1;
    std::size_t tau_hi = 64;
    std::size_t samples = 2000;
    std::uint64_t seed = 42;
    double epsilon_frac = 0.05;
    std::string flag_mode = "genie";
    std::string vstar;      // bitstring; active scenario only (empty: weight-2 default)
    std::size_t workers = 1;
    std::string out = "-";  // "-" = stdout
};

struct ParseResult {
    std::optional<ExperimentConfig> config;  // engaged on success
    int exit_code = 0;
    std::string message;  // help or usage-error text when config is absent
};

// Flags override config-file values override defaults; unknown keys and
// inconsistent dimensions are rejected with a usage message.
ParseResult parse_config(int argc, const char* const* argv);

// A config with every default filled in and the system built from it.
// The noisefree and lemma1-check scenarios force the ideal keystream
// model (noisefree additionally forces p = 0); the echoed config reflects
// what actually ran.
struct Experiment {
    ExperimentConfig cfg;
    SystemParams params;
    AdversaryStrategy strategy;
    McQuantity quantity;
};
Experiment materialize(const ExperimentConfig& cfg);

// Executes the scenario and writes the results file. Returns the process
// exit status: nonzero on invariant violations, failed checks, or errors.
int run_experiment(const ExperimentConfig& cfg);

}  // namespace wtsim
