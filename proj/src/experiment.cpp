#include "wtsim/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wtsim/codespec.hpp"

namespace wtsim {

namespace {

const std::vector<std::string> kScenarios = {
    "passive", "active", "noisefree", "lemma1-check", "chainrule-check", "threshold-sweep"};

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string effective_config_line(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "scenario=" << c.scenario << " l=" << c.l << " m=" << c.m << " ecc=" << c.ecc
       << " wiretap=" << c.wiretap << " keystream=" << c.keystream << " p=" << fmt_num(c.p)
       << " key_bits=" << c.key_bits << " tau=" << c.tau_lo << ".." << c.tau_hi
       << " samples=" << c.samples << " seed=" << c.seed
       << " epsilon_frac=" << fmt_num(c.epsilon_frac) << " flag_mode=" << c.flag_mode
       << " vstar=" << c.vstar << " workers=" << c.workers;
    return os.str();
}

void write_header(std::ostream& os, const Experiment& ex) {
    char stamp[32] = "unknown";
    const std::time_t now = std::time(nullptr);
    if (std::tm tmv{}; gmtime_r(&now, &tmv) != nullptr)
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tmv);
    os << "# generated: " << stamp << "\n";
    os << "# artifact: " << kArtifactVersion << "\n";
    os << "# rng: " << kRngAlgorithm << "\n";
    os << "# config: " << effective_config_line(ex.cfg) << "\n";
}

int run_sweep(const Experiment& ex, std::ostream& os) {
    const ExperimentConfig& c = ex.cfg;
    os << "tau,quantity,value_bits,stderr_bits,samples,scenario,p,key_bits,seed\n";
    const Rng base(c.seed);
    const double threshold = c.epsilon_frac * static_cast<double>(c.key_bits);
    std::optional<std::size_t> crossing;
    for (std::size_t tau = c.tau_lo; tau <= c.tau_hi; ++tau) {
        const EquivocationReport rep = conditional_entropy_mc(
            ex.params, ex.quantity, tau, c.samples, ex.strategy, base, c.workers);
        if (!crossing && rep.value_bits < threshold) crossing = tau;
        os << tau << ',' << rep.quantity << ',' << fmt_num(rep.value_bits) << ','
           << fmt_num(rep.stderr_bits) << ',' << rep.samples << ',' << c.scenario << ','
           << fmt_num(c.p) << ',' << c.key_bits << ',' << c.seed << '\n';
    }
    if (c.scenario == "threshold-sweep") {
        os << "# tau_thres = ";
        if (crossing) os << *crossing;
        else os << "not reached";
        os << " (epsilon_frac=" << fmt_num(c.epsilon_frac) << ")\n";
    }
    return 0;
}

int run_noisefree(const Experiment& ex, std::ostream& os) {
    const ExperimentConfig& c = ex.cfg;
    const double value = ideal_keystream_equivocation(ex.params);
    const double h_u = static_cast<double>(c.m - c.l);
    const double h_x = static_cast<double>(ex.params.n());
    const double bound = std::min(h_u, h_x);
    const bool ok = value >= bound - 1e-9;
    os << "quantity,value_bits,bound_bits,satisfied,scenario,p,key_bits,seed\n";
    os << "H(X|A,Z)," << fmt_num(value) << ',' << fmt_num(bound) << ',' << (ok ? 1 : 0) << ','
       << c.scenario << ',' << fmt_num(c.p) << ',' << c.key_bits << ',' << c.seed << '\n';
    return ok ? 0 : 1;
}

int run_lemma1(const Experiment& ex, std::ostream& os) {
    const ExperimentConfig& c = ex.cfg;
    BoundTerms terms;
    terms.h_u = static_cast<double>(c.m - c.l);
    terms.h_x = static_cast<double>(ex.params.n());
    terms.h_v = static_cast<double>(ex.params.n()) * binary_entropy(c.p);
    const double pe = map_decode_error_rate(ex.params, ErrorRateMode::exact);
    terms.delta = delta_ecc(c.m - c.l, pe);
    const double exact = ideal_keystream_equivocation(ex.params);
    const BoundReport rep = lemma_bound(terms, exact);
    os << "p,h_u_bits,h_v_bits,h_x_bits,p_e,delta_bits,bound_bits,exact_bits,satisfied\n";
    os << fmt_num(c.p) << ',' << fmt_num(terms.h_u) << ',' << fmt_num(terms.h_v) << ','
       << fmt_num(terms.h_x) << ',' << fmt_num(pe) << ',' << fmt_num(terms.delta) << ','
       << fmt_num(rep.bound_bits) << ',' << fmt_num(exact) << ','
       << (rep.satisfied.value_or(false) ? 1 : 0) << '\n';
    return rep.satisfied.value_or(false) ? 0 : 1;
}

int run_chainrule(const Experiment& ex, std::ostream& os) {
    const ExperimentConfig& c = ex.cfg;
    const bool keyed = ex.params.keystream.kind == KeystreamModel::Kind::keyed_fsm;
    const std::string model = keyed ? "keyed" : "ideal";
    bool ok = true;
    os << "model,identity,p,flag_mode,residual\n";
    for (const bool with_flag : {false, true}) {
        const ChainRuleCheck chk = chain_rule_identity_check(ex.params, with_flag);
        ok = ok && chk.residual <= 1e-9;
        os << model << ',' << (with_flag ? "flag-decomposition" : "plain-decomposition") << ','
           << fmt_num(c.p) << ',' << c.flag_mode << ',' << fmt_num(chk.residual) << '\n';
    }
    return ok ? 0 : 1;
}

}  // namespace

Experiment materialize(const ExperimentConfig& in) {
    ExperimentConfig cfg = in;
    if (std::find(kScenarios.begin(), kScenarios.end(), cfg.scenario) == kScenarios.end())
        throw std::invalid_argument("unknown scenario '" + cfg.scenario + "'");
    if (cfg.tau_lo < 1 || cfg.tau_lo > cfg.tau_hi)
        throw std::invalid_argument("tau range must satisfy 1 <= lo <= hi");
    if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (cfg.key_bits < 1 || cfg.key_bits > 20)
        throw std::invalid_argument("key_bits must lie in [1, 20]");
    if (!(cfg.epsilon_frac > 0.0 && cfg.epsilon_frac < 1.0))
        throw std::invalid_argument("epsilon_frac must lie in (0, 1)");

    if (cfg.scenario == "noisefree") cfg.p = 0.0;
    if (cfg.scenario == "noisefree" || cfg.scenario == "lemma1-check") cfg.keystream = "ideal";

    if (cfg.wiretap.empty()) cfg.wiretap = default_wiretap_spec(cfg.l, cfg.m);
    if (cfg.keystream.empty()) cfg.keystream = default_keystream_spec(cfg.key_bits);

    WiretapCode wiretap = parse_wiretap_spec(cfg.wiretap);
    if (wiretap.l() != cfg.l || wiretap.m() != cfg.m)
        throw std::invalid_argument("wiretap spec dimensions disagree with --l/--m");
    LinearBlockCode ecc = parse_ecc_spec(cfg.ecc);
    if (ecc.k() != cfg.m)
        throw std::invalid_argument("ecc message length must equal m (got k=" +
                                    std::to_string(ecc.k()) + ", m=" + std::to_string(cfg.m) + ")");
    const std::size_t n = ecc.n();

    FlagMode flag_mode;
    if (cfg.flag_mode == "genie") flag_mode = FlagMode::genie;
    else if (cfg.flag_mode == "detected") flag_mode = FlagMode::detected;
    else throw std::invalid_argument("flag-mode must be genie or detected");

    AdversaryStrategy strategy = AdversaryStrategy::passive();
    McQuantity quantity = McQuantity::key_given_az;
    if (cfg.scenario == "active") {
        if (cfg.vstar.empty()) {
            cfg.vstar = std::string(n, '0');
            cfg.vstar[0] = cfg.vstar[1] = '1';  // stock weight-2 perturbation
        }
        const BitVector v_star = BitVector::from_string(cfg.vstar);
        if (v_star.size() != n)
            throw std::invalid_argument("vstar must have exactly n=" + std::to_string(n) + " bits");
        strategy = AdversaryStrategy::constant_vector(v_star);
        quantity = McQuantity::key_given_az_fd;
    } else if (!cfg.vstar.empty()) {
        throw std::invalid_argument("vstar applies to the active scenario only");
    }

    SystemParams params(std::move(wiretap), std::move(ecc), ChannelParams(cfg.p),
                        parse_keystream_spec(cfg.keystream), cfg.key_bits, flag_mode);
    return Experiment{std::move(cfg), std::move(params), std::move(strategy), quantity};
}

ParseResult parse_config(int argc, const char* const* argv) {
    ExperimentConfig cfg;
    std::string tau = "1..64";

    CLI::App app{"wiretap coset-coding and key-equivocation simulator"};
    app.set_config("--config", "", "config file with 'key = value' lines, '#' comments");
    app.allow_config_extras(false);
    app.add_option("--scenario", cfg.scenario, "one of: passive, active, noisefree, "
                   "lemma1-check, chainrule-check, threshold-sweep")
        ->check(CLI::IsMember(kScenarios));
    app.add_option("--l", cfg.l, "plaintext bits per block");
    app.add_option("--m", cfg.m, "wiretap block length");
    app.add_option("--ecc", cfg.ecc, "rep:k=..,r=.. | hamming74 | matrix:<rows>");
    app.add_option("--wiretap", cfg.wiretap, "coset:l=..,inner=matrix:<I|G4>");
    app.add_option("--keystream", cfg.keystream, "ideal | lfsr:bits=..,taps=..");
    app.add_option("--p", cfg.p, "channel crossover probability in [0, 0.5)");
    app.add_option("--key-bits", cfg.key_bits, "secret key length");
    app.add_option("--tau", tau, "observation horizon: single value or a..b");
    app.add_option("--samples", cfg.samples, "Monte-Carlo samples per tau");
    app.add_option("--seed", cfg.seed, "root RNG seed");
    app.add_option("--epsilon-frac", cfg.epsilon_frac, "threshold crossing fraction of key_bits");
    app.add_option("--flag-mode", cfg.flag_mode, "genie | detected");
    app.add_option("--vstar", cfg.vstar, "injected noise bitstring (active scenario)");
    app.add_option("--workers", cfg.workers, "worker threads");
    app.add_option("--out", cfg.out, "output path, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        return {std::nullopt, code, out.str() + err.str()};
    }

    const std::size_t dots = tau.find("..");
    try {
        if (dots == std::string::npos) {
            cfg.tau_lo = cfg.tau_hi = std::stoull(tau);
        } else {
            cfg.tau_lo = std::stoull(tau.substr(0, dots));
            cfg.tau_hi = std::stoull(tau.substr(dots + 2));
        }
    } catch (const std::exception&) {
        return {std::nullopt, 1, "usage error: --tau expects a count or a..b\n"};
    }

    try {
        materialize(cfg);  // full validation: specs parse, dimensions agree
    } catch (const std::exception& e) {
        return {std::nullopt, 1, std::string("usage error: ") + e.what() + "\n"};
    }
    return {cfg, 0, ""};
}

int run_experiment(const ExperimentConfig& cfg) {
    try {
        const Experiment ex = materialize(cfg);
        std::ofstream file;
        std::ostream* os = &std::cout;
        if (ex.cfg.out != "-") {
            file.open(ex.cfg.out);
            if (!file) throw std::runtime_error("cannot open output file '" + ex.cfg.out + "'");
            os = &file;
        }
        write_header(*os, ex);
        int status = 1;
        if (ex.cfg.scenario == "passive" || ex.cfg.scenario == "active" ||
            ex.cfg.scenario == "threshold-sweep") {
            status = run_sweep(ex, *os);
        } else if (ex.cfg.scenario == "noisefree") {
            status = run_noisefree(ex, *os);
        } else if (ex.cfg.scenario == "lemma1-check") {
            status = run_lemma1(ex, *os);
        } else if (ex.cfg.scenario == "chainrule-check") {
            status = run_chainrule(ex, *os);
        }
        os->flush();
        if (!*os) throw std::runtime_error("write failure on output");
        return status;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace wtsim
