// Copyright 2026 The qdswap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: entangled-pair fidelity, swapped-state fidelity,
// resonance probability, population Monte Carlo, tomography and Gaussian
// fitting. All stochastic commands take an explicit seed and write
// byte-identical output for identical inputs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qdswap/qdswap.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericError = 3;

struct Range {
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;
};

Range parse_range(const std::string& text) {
    Range r;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> r.lo >> c1 >> r.hi >> c2 >> r.n) || c1 != ':' || c2 != ':' || r.n < 1 ||
        !(is >> std::ws).eof())
        throw std::invalid_argument("range must be lo:hi:count, got '" + text + "'");
    return r;
}

double range_value(const Range& r, int i) {
    if (r.n == 1) return r.lo;
    return r.lo + (r.hi - r.lo) * static_cast<double>(i) / (r.n - 1);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

qdswap::RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot read config file: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return qdswap::parse_config_text(buf.str());
}

qdswap::BellKind parse_bell_flag(const std::string& s) {
    if (s == "phi_plus") return qdswap::BellKind::phi_plus;
    if (s == "phi_minus") return qdswap::BellKind::phi_minus;
    if (s == "psi_plus") return qdswap::BellKind::psi_plus;
    if (s == "psi_minus") return qdswap::BellKind::psi_minus;
    throw std::invalid_argument("unknown Bell state '" + s + "'");
}

// ---------------------------------------------------------------------------
// pair-fidelity

struct PairArgs {
    double fss = 0.0;
    double t1x = 0.3;
    std::optional<double> t2star;
    std::optional<double> gate;
    std::string target = "phi_plus";
    bool csv = false;
};

int run_pair(const PairArgs& a) {
    using namespace qdswap;
    QdParams p;
    p.fss_uev = a.fss;
    p.t1_x_ns = a.t1x;
    if (a.t2star) p.t2_star_ns = *a.t2star;
    const double f = pair_fidelity(p, a.gate, parse_bell_flag(a.target));
    const double coh = std::abs(coherence_factor(a.fss, a.t1x, a.gate));
    if (a.csv) {
        std::cout << "fidelity,coherence_abs";
        if (a.t2star) std::cout << ",indistinguishability";
        std::cout << "\n" << fmt_double(f) << ',' << fmt_double(coh);
        if (a.t2star) std::cout << ',' << fmt_double(indistinguishability(a.t1x, *a.t2star));
        std::cout << "\n";
    } else {
        std::cout << "pair fidelity:        " << fmt_fixed(f) << "\n";
        std::cout << "|coherence|:          " << fmt_fixed(coh) << "\n";
        if (a.t2star)
            std::cout << "indistinguishability: "
                      << fmt_fixed(indistinguishability(a.t1x, *a.t2star)) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// swap

struct SwapArgs {
    double fss_a = 0.0;
    double fss_b = 0.0;
    double t1x = 0.3;
    double t1xx = 0.15;
    double t2star = 0.5;
    double detuning = 0.0;
    bool ideal_bsm = false;
    bool include_cascade = true;
    bool cross_dephasing = false;
    std::string grid;
    std::string out;
};

int run_swap(const SwapArgs& a) {
    using namespace qdswap;
    QdParams qa;
    qa.t1_x_ns = a.t1x;
    qa.t1_xx_ns = a.t1xx;
    qa.t2_star_ns = a.t2star;
    QdParams qb = qa;
    SwapModelConfig cfg;
    cfg.ideal_bsm = a.ideal_bsm;
    cfg.include_cascade = a.include_cascade;
    cfg.pair_cross_dephasing = a.cross_dephasing;

    if (a.grid.empty()) {
        qa.fss_uev = a.fss_a;
        qb.fss_uev = a.fss_b;
        const double f = swap_fidelity_analytic(qa, qb, a.detuning, cfg);
        std::cout << "swap fidelity: " << fmt_fixed(f) << "\n";
        if (!cfg.ideal_bsm)
            std::cout << "visibility:    "
                      << fmt_fixed(hom_visibility(qa, qb, a.detuning, cfg.include_cascade))
                      << "\n";
        return kExitOk;
    }

    const Range r = parse_range(a.grid);
    std::ostringstream csv;
    csv << "fss_a_ueV,fss_b_ueV,fidelity\n";
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j) {
            qa.fss_uev = range_value(r, i);
            qb.fss_uev = range_value(r, j);
            csv << fmt_double(qa.fss_uev) << ',' << fmt_double(qb.fss_uev) << ','
                << fmt_double(swap_fidelity_analytic(qa, qb, a.detuning, cfg)) << '\n';
        }
    if (a.out.empty()) {
        std::cout << csv.str();
    } else {
        auto os = open_output(a.out);
        os << csv.str();
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// montecarlo

struct McArgs {
    std::string config_path;
    int scenario = 0;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::optional<int> bins;
    std::string out;
    std::string raw_out;
};

int run_montecarlo(const McArgs& a) {
    using namespace qdswap;
    McSection sec;
    if (!a.config_path.empty()) {
        const RunConfig file = load_config(a.config_path);
        if (file.montecarlo) sec = *file.montecarlo;
    }
    if (a.scenario != 0) sec.mc.scenario = scenario_preset(a.scenario);
    if (sec.mc.scenario.stack.empty() && sec.mc.scenario.id == 0)
        throw std::invalid_argument("montecarlo: no scenario given (use --scenario or config)");
    if (a.seed) {
        sec.mc.seed = *a.seed;
        sec.has_seed = true;
    }
    if (!sec.has_seed)
        throw std::invalid_argument("montecarlo: seed is mandatory (use --seed or config)");
    if (a.samples) sec.mc.n_samples = *a.samples;
    if (a.bins) sec.mc.bins = *a.bins;
    sec.mc.validate();

    std::vector<double> raw;
    const FidelityHistogram h =
        run(sec.mc, 0, a.raw_out.empty() ? nullptr : &raw);
    {
        auto os = open_output(a.out);
        write_histogram_csv(os, h);
    }
    {
        auto os = open_output(a.out + ".summary.txt");
        write_histogram_summary(os, h);
    }
    if (!a.raw_out.empty()) {
        auto os = open_output(a.raw_out);
        os << "fidelity\n";
        for (double f : raw) os << fmt_double(f) << '\n';
    }
    write_histogram_summary(std::cout, h);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// resonance

struct ResonanceArgs {
    double mu_a = 777.85;
    double mu_b = 777.85;
    double sigma_a = 2.19;
    double sigma_b = 2.19;
    double tune_a = 1.0;
    double tune_b = 1.0;
    bool sweep = false;
    std::string dmu_range = "0:5:51";
    std::string sigma_range = "0.05:3:60";
    std::string out;
};

int run_resonance(const ResonanceArgs& a) {
    using namespace qdswap;
    if (!a.sweep) {
        const double p = resonance_probability({a.mu_a, a.sigma_a, std::nullopt, std::nullopt},
                                               {a.mu_b, a.sigma_b, std::nullopt, std::nullopt},
                                               a.tune_a, a.tune_b);
        std::cout << "resonance probability: " << fmt_fixed(p) << "\n";
        return kExitOk;
    }
    const Range dmu = parse_range(a.dmu_range);
    const Range sig = parse_range(a.sigma_range);
    std::ostringstream csv;
    csv << "delta_mu_nm,sigma_nm,probability\n";
    for (int i = 0; i < dmu.n; ++i)
        for (int j = 0; j < sig.n; ++j) {
            const double d = range_value(dmu, i);
            const double s = range_value(sig, j);
            const double p =
                resonance_probability({a.mu_a, s, std::nullopt, std::nullopt},
                                      {a.mu_a + d, s, std::nullopt, std::nullopt}, a.tune_a,
                                      a.tune_b);
            csv << fmt_double(d) << ',' << fmt_double(s) << ',' << fmt_double(p) << '\n';
        }
    if (a.out.empty()) {
        std::cout << csv.str();
    } else {
        auto os = open_output(a.out);
        os << csv.str();
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// tomography

struct TomoArgs {
    double fss = 4.22;
    double t1x = 0.3;
    std::optional<double> gate;
    double shots = 1e6;
    bool noise = false;
    std::optional<std::uint64_t> seed;
    std::string basis = "minimal16";
    std::string counts_path;  // reconstruct-only mode
    std::string out = "tomography";
};

int run_tomography(const TomoArgs& a) {
    using namespace qdswap;
    std::vector<CoincidenceRecord> records;
    if (!a.counts_path.empty()) {
        std::ifstream is(a.counts_path);
        if (!is) throw std::invalid_argument("cannot read counts file: " + a.counts_path);
        records = read_counts_csv(is);
    } else {
        if (a.noise && !a.seed)
            throw std::invalid_argument("tomography: --seed is mandatory with --noise");
        MeasurementBasis basis = a.basis == "full36" ? MeasurementBasis::full36()
                                                     : MeasurementBasis::minimal16();
        if (a.basis != "full36" && a.basis != "minimal16")
            throw std::invalid_argument("tomography: basis must be minimal16 or full36");
        QdParams p;
        p.fss_uev = a.fss;
        p.t1_x_ns = a.t1x;
        records = forward_counts(p, a.gate, a.shots, a.noise, a.seed.value_or(0), basis);
        auto os = open_output(a.out + "_counts.csv");
        write_counts_csv(os, records);
    }

    const Reconstruction rec = reconstruct(records);
    {
        auto os = open_output(a.out + "_matrix.csv");
        write_matrix_csv(os, rec.rho);
    }
    std::cout << "settings:               " << records.size() << "\n";
    std::cout << "fidelity to phi_plus:   "
              << fmt_fixed(fidelity(rec.rho, bell_state(BellKind::phi_plus))) << "\n";
    std::cout << "min eigenvalue (raw):   " << fmt_double(rec.min_eigenvalue_pre_clip)
              << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// fit

int run_fit(const std::string& path) {
    using namespace qdswap;
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot read sample file: " + path);
    const SampleColumn col = read_sample_csv(is);
    const GaussianFit fit = fit_gaussian(col.values);
    Json j;
    j[col.unit_header] = cfg_detail::dump_gaussian(fit.spec);
    j["n_samples"] = fit.n_samples;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement-swapping statistics for quantum-dot photon sources"};
    app.require_subcommand(1);

    PairArgs pair;
    auto* cmd_pair = app.add_subcommand("pair-fidelity",
                                        "Fidelity of one source's entangled pair");
    cmd_pair->add_option("--fss", pair.fss, "Fine-structure splitting (ueV)")->required();
    cmd_pair->add_option("--t1x", pair.t1x, "X radiative lifetime (ns)");
    double pair_t2 = 0.0, pair_gate = 0.0;
    auto* pair_t2_opt = cmd_pair->add_option("--t2star", pair_t2, "Pure dephasing time (ns)");
    auto* pair_gate_opt = cmd_pair->add_option("--gate", pair_gate, "Gate window (ns)");
    cmd_pair->add_option("--target", pair.target, "Bell state (phi_plus)");
    cmd_pair->add_flag("--csv", pair.csv, "Machine-readable output");

    SwapArgs swap;
    auto* cmd_swap = app.add_subcommand("swap", "Swapped-state fidelity for two sources");
    cmd_swap->add_option("--fss-a", swap.fss_a, "FSS of source A (ueV)");
    cmd_swap->add_option("--fss-b", swap.fss_b, "FSS of source B (ueV)");
    cmd_swap->add_option("--t1x", swap.t1x, "X radiative lifetime (ns)");
    cmd_swap->add_option("--t1xx", swap.t1xx, "XX radiative lifetime (ns)");
    cmd_swap->add_option("--t2star", swap.t2star, "Pure dephasing time (ns)");
    cmd_swap->add_option("--detuning", swap.detuning, "XX frequency detuning (ueV)");
    cmd_swap->add_flag("--ideal-bsm", swap.ideal_bsm, "Assume unit interference visibility");
    cmd_swap->add_flag("--include-cascade,!--no-cascade", swap.include_cascade,
                       "Apply the cascade timing ceiling to the visibility (default on)");
    cmd_swap->add_flag("--cross-dephasing", swap.cross_dephasing,
                       "Dephase the pair coherence as well");
    cmd_swap->add_option("--grid", swap.grid, "Emit a fidelity surface, FSS range lo:hi:n");
    cmd_swap->add_option("--out", swap.out, "CSV output file (default stdout)");

    McArgs mc;
    auto* cmd_mc = app.add_subcommand("montecarlo",
                                      "Population Monte Carlo of the swapped fidelity");
    cmd_mc->add_option("--config", mc.config_path, "JSON config file");
    cmd_mc->add_option("--scenario", mc.scenario, "Preset scenario id")
        ->check(CLI::Range(1, 6));
    std::uint64_t mc_seed = 0, mc_samples = 0;
    int mc_bins = 0;
    auto* mc_seed_opt = cmd_mc->add_option("--seed", mc_seed, "RNG seed (mandatory)");
    auto* mc_samples_opt = cmd_mc->add_option("--samples", mc_samples, "Sample count");
    auto* mc_bins_opt = cmd_mc->add_option("--bins", mc_bins, "Histogram bins");
    cmd_mc->add_option("--out", mc.out, "Histogram CSV output file")->required();
    cmd_mc->add_option("--raw-out", mc.raw_out,
                       "Also dump the per-sample fidelities for exact re-binning");

    ResonanceArgs res;
    auto* cmd_res = app.add_subcommand("resonance",
                                       "Probability of tuning two devices into resonance");
    cmd_res->add_option("--mu-a", res.mu_a, "Mean wavelength of device A (nm)");
    cmd_res->add_option("--mu-b", res.mu_b, "Mean wavelength of device B (nm)");
    cmd_res->add_option("--sigma-a", res.sigma_a, "Wavelength std dev of device A (nm)");
    cmd_res->add_option("--sigma-b", res.sigma_b, "Wavelength std dev of device B (nm)");
    cmd_res->add_option("--tune-a", res.tune_a, "Tuning range of device A (nm)");
    cmd_res->add_option("--tune-b", res.tune_b, "Tuning range of device B (nm)");
    cmd_res->add_flag("--sweep", res.sweep, "Emit a (delta_mu, sigma, P) CSV surface");
    cmd_res->add_option("--dmu", res.dmu_range, "Sweep range for delta_mu, lo:hi:n");
    cmd_res->add_option("--sigma", res.sigma_range, "Sweep range for sigma, lo:hi:n");
    cmd_res->add_option("--out", res.out, "CSV output file (default stdout)");

    TomoArgs tomo;
    auto* cmd_tomo = app.add_subcommand("tomography",
                                        "Forward-simulate counts and reconstruct the state");
    cmd_tomo->add_option("--fss", tomo.fss, "Fine-structure splitting (ueV)");
    cmd_tomo->add_option("--t1x", tomo.t1x, "X radiative lifetime (ns)");
    double tomo_gate = 0.0;
    auto* tomo_gate_opt = cmd_tomo->add_option("--gate", tomo_gate, "Gate window (ns)");
    cmd_tomo->add_option("--shots", tomo.shots, "Number of excitation cycles");
    cmd_tomo->add_flag("--noise", tomo.noise, "Poisson-sample the counts");
    std::uint64_t tomo_seed = 0;
    auto* tomo_seed_opt = cmd_tomo->add_option("--seed", tomo_seed, "RNG seed");
    cmd_tomo->add_option("--basis", tomo.basis, "minimal16 or full36");
    cmd_tomo->add_option("--counts", tomo.counts_path,
                         "Reconstruct from an existing counts CSV instead");
    cmd_tomo->add_option("--out", tomo.out, "Output file prefix");

    std::string fit_path;
    auto* cmd_fit = app.add_subcommand("fit", "Fit a Gaussian to a sample CSV");
    cmd_fit->add_option("--csv", fit_path, "Sample file, one value per line")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (*cmd_pair) {
            if (*pair_t2_opt) pair.t2star = pair_t2;
            if (*pair_gate_opt) pair.gate = pair_gate;
            return run_pair(pair);
        }
        if (*cmd_swap) return run_swap(swap);
        if (*cmd_mc) {
            if (*mc_seed_opt) mc.seed = mc_seed;
            if (*mc_samples_opt) mc.samples = mc_samples;
            if (*mc_bins_opt) mc.bins = mc_bins;
            return run_montecarlo(mc);
        }
        if (*cmd_res) return run_resonance(res);
        if (*cmd_tomo) {
            if (*tomo_gate_opt) tomo.gate = tomo_gate;
            if (*tomo_seed_opt) tomo.seed = tomo_seed;
            return run_tomography(tomo);
        }
        if (*cmd_fit) return run_fit(fit_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericError;
    }
    return kExitOk;
}
