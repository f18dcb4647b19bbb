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

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qdswap/parallel.hpp"
#include "qdswap/rng.hpp"
#include "qdswap/scenario.hpp"
#include "qdswap/stats.hpp"
#include "qdswap/swap.hpp"
#include "qdswap/version.hpp"

namespace qdswap {

/// One population-level Monte Carlo run: sample a device pair per trial,
/// apply the scenario's tuning stack, evaluate the swapped-state fidelity.
struct McConfig {
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 0;
    Scenario scenario;
    ParamDistributions dists_a;
    ParamDistributions dists_b;
    int bins = 200;
    SwapModelConfig swap;  ///< default: real interference at the BSM

    void validate() const {
        if (n_samples < 1) throw std::invalid_argument("McConfig: n_samples must be >= 1");
        if (bins < 2) throw std::invalid_argument("McConfig: bins must be >= 2");
        scenario.validate();
        dists_a.validate();
        dists_b.validate();
    }
};

inline constexpr double kFidelityFloor = 0.5;
inline constexpr double kFidelityCeiling = 1.0;
inline constexpr std::array<int, 6> kSummaryPercentiles{1, 5, 25, 75, 95, 99};

/// Binned probability density of the swapped-state fidelity over
/// [0.5, 1.0], with summary statistics computed from the raw samples and
/// the full provenance needed to reproduce the run.
struct FidelityHistogram {
    std::vector<double> edges;    ///< bins + 1 monotone edges
    std::vector<double> density;  ///< normalized so the integral over F is 1
    double mean = 0.0;
    double median = 0.0;
    std::array<double, kSummaryPercentiles.size()> percentiles{};
    McConfig provenance;
    std::string code_version = kVersion;
};

namespace detail {

/// Percentile with linear interpolation between closest ranks; `sorted`
/// must be ascending.
inline double percentile_sorted(const std::vector<double>& sorted, double q) {
    const double pos = q / 100.0 * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace detail

/// Fidelity of one sampled pair under a scenario; the hot-loop path shared
/// by run() and the scenario property tests.
inline double sample_swap_fidelity(const McConfig& cfg, RngStream& rng,
                                   const ParamDistributions& da,
                                   const ParamDistributions& db) {
    const QdParams qa = da.sample(rng);
    const QdParams qb = db.sample(rng);
    const TunedPair tuned = apply_scenario_stack(cfg.scenario, qa, qb);
    return swap_fidelity_analytic(tuned.a, tuned.b, tuned.residual_detuning_uev, cfg.swap);
}

/// Effective distributions after scenario-level overrides (dephasing-time
/// override and zero_sigma).
inline ParamDistributions effective_dists(const ParamDistributions& d,
                                          const Scenario& scenario) {
    ParamDistributions out = d;
    if (scenario.t2_star_override) out.t2_star = *scenario.t2_star_override;
    if (scenario.zero_sigma) {
        out.wavelength_x.sigma = 0.0;
        out.fss.sigma = 0.0;
        out.t1_x.sigma = 0.0;
        out.t1_xx.sigma = 0.0;
        out.t2_star.sigma = 0.0;
    }
    return out;
}

/// Runs the Monte Carlo. Per-sample RNG streams are keyed by
/// (seed, sample index) and aggregation walks fixed-size blocks in index
/// order, so the histogram is bit-identical for any worker count. Pass
/// raw_samples to keep the per-sample fidelities for exact re-binning.
inline FidelityHistogram run(const McConfig& cfg, unsigned workers = 0,
                             std::vector<double>* raw_samples = nullptr) {
    cfg.validate();
    const ParamDistributions da = effective_dists(cfg.dists_a, cfg.scenario);
    const ParamDistributions db = effective_dists(cfg.dists_b, cfg.scenario);

    std::vector<double> samples(cfg.n_samples);
    for_each_block(cfg.n_samples, workers,
                   [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
                       for (std::uint64_t i = begin; i < end; ++i) {
                           RngStream rng(cfg.seed, i);
                           samples[i] = sample_swap_fidelity(cfg, rng, da, db);
                       }
                   });

    FidelityHistogram h;
    h.provenance = cfg;
    const double width = (kFidelityCeiling - kFidelityFloor) / cfg.bins;
    h.edges.resize(cfg.bins + 1);
    for (int i = 0; i <= cfg.bins; ++i) h.edges[i] = kFidelityFloor + i * width;
    h.edges.back() = kFidelityCeiling;

    std::vector<std::uint64_t> counts(cfg.bins, 0);
    double sum = 0.0;
    for (double f : samples) {
        sum += f;
        int bin = static_cast<int>((f - kFidelityFloor) / width);
        bin = std::clamp(bin, 0, cfg.bins - 1);
        ++counts[bin];
    }
    h.density.resize(cfg.bins);
    const double n = static_cast<double>(cfg.n_samples);
    for (int i = 0; i < cfg.bins; ++i)
        h.density[i] = static_cast<double>(counts[i]) / (n * width);

    h.mean = sum / n;
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    h.median = detail::percentile_sorted(sorted, 50.0);
    for (std::size_t i = 0; i < kSummaryPercentiles.size(); ++i)
        h.percentiles[i] = detail::percentile_sorted(sorted, kSummaryPercentiles[i]);
    if (raw_samples) *raw_samples = std::move(samples);
    return h;
}

/// Probability mass of the density within [lo, hi] (integral of the
/// piecewise-constant density over the overlap with each bin).
inline double summarize(const FidelityHistogram& h, double lo, double hi) {
    if (!(lo < hi)) return 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i < h.density.size(); ++i) {
        const double overlap =
            std::min(hi, h.edges[i + 1]) - std::max(lo, h.edges[i]);
        if (overlap > 0.0) mass += h.density[i] * overlap;
    }
    return mass;
}

}  // namespace qdswap
