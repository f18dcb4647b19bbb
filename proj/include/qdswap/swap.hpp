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

#include <cmath>
#include <cstdint>
#include <vector>

#include "qdswap/cascade.hpp"
#include "qdswap/density_matrix.hpp"
#include "qdswap/ket.hpp"
#include "qdswap/parallel.hpp"
#include "qdswap/rng.hpp"

namespace qdswap {

/// Model switches for the swapped-state fidelity. The population model runs
/// with a real BSM (ideal_bsm off) and the cascade timing ceiling folded
/// into the visibility.
struct SwapModelConfig {
    bool ideal_bsm = false;            ///< force interference visibility to 1
    bool include_cascade = true;       ///< fold the cascade timing ceiling into V
    bool pair_cross_dephasing = false; ///< dephase the HH-VV pair coherence too
    BellKind target = BellKind::psi_minus;
};

/// Detection times entering the phase reconstruction, all in ns.
/// t1/t4 are the X photons kept at the outer nodes; t_bsm1/t_bsm2 the two
/// detector clicks of the Bell-state measurement on the XX photons.
struct EmissionTimes {
    double t1_ns = 0.0;
    double t4_ns = 0.0;
    double t_bsm1_ns = 0.0;
    double t_bsm2_ns = 0.0;
};

enum class PhaseVariant { primed, double_primed };

/// One of the two phase assignments consistent with the measured detection
/// times. The beam splitter erases which XX photon reached which detector,
/// so both assignments below are equally likely and experimentally
/// indistinguishable.
struct PhaseAssignment {
    double alpha_rad = 0.0;
    double beta_rad = 0.0;
    PhaseVariant variant = PhaseVariant::primed;
    EmissionTimes times;

    /// alpha' = -(S_A/hbar)(t1 - t_bsm1), beta' = -(S_B/hbar)(t4 - t_bsm2)
    static PhaseAssignment primed(double fss_a_uev, double fss_b_uev,
                                  const EmissionTimes& t) {
        return {-fss_a_uev / kHbar * (t.t1_ns - t.t_bsm1_ns),
                -fss_b_uev / kHbar * (t.t4_ns - t.t_bsm2_ns),
                PhaseVariant::primed, t};
    }

    /// alpha'' = -(S_A/hbar)(t1 - t_bsm2), beta'' = -(S_B/hbar)(t4 - t_bsm1)
    static PhaseAssignment double_primed(double fss_a_uev, double fss_b_uev,
                                         const EmissionTimes& t) {
        return {-fss_a_uev / kHbar * (t.t1_ns - t.t_bsm2_ns),
                -fss_b_uev / kHbar * (t.t4_ns - t.t_bsm1_ns),
                PhaseVariant::double_primed, t};
    }
};

/// Product of the two pair emissions with their accumulated phases:
/// (1/2)(|H1H2> + e^{i alpha}|V1V2>)(|H3H4> + e^{i beta}|V3V4>).
inline Ket four_photon_state(double alpha_rad, double beta_rad) {
    const double r = std::numbers::sqrt2 / 2.0;
    const Ket pair_a{Complex{r, 0.0}, 0.0, 0.0, r * std::exp(Complex{0.0, alpha_rad})};
    const Ket pair_b{Complex{r, 0.0}, 0.0, 0.0, r * std::exp(Complex{0.0, beta_rad})};
    return tensor(pair_a, pair_b);
}

namespace detail {

/// Normalized two-photon state left on photons (1,4) after projecting the
/// BSM photons (2,3) of the four-photon state onto psi_minus.
inline Ket swapped_ket(double alpha_rad, double beta_rad) {
    return project(bell_state(BellKind::psi_minus),
                   four_photon_state(alpha_rad, beta_rad))
        .normalized();
}

/// Classically correlated remainder once interference contrast is gone:
/// an even HV/VH mixture with no coherence. Its fidelity to either psi
/// Bell state is exactly 1/2, which sets the fidelity floor.
inline DensityMatrix dephased_swap_floor() {
    DensityMatrix rho(kDimPair);
    rho(pair_index(0, 1), pair_index(0, 1)) = 0.5;
    rho(pair_index(1, 0), pair_index(1, 0)) = 0.5;
    return rho;
}

}  // namespace detail

/// Equal-weight statistical mixture of the two swapped states allowed by the
/// which-path ambiguity of the BSM detection times. When t_bsm1 == t_bsm2
/// the two variants coincide and the state is pure.
inline DensityMatrix swapped_mixture(double fss_a_uev, double fss_b_uev,
                                     const EmissionTimes& times) {
    const auto primed = PhaseAssignment::primed(fss_a_uev, fss_b_uev, times);
    const auto second = PhaseAssignment::double_primed(fss_a_uev, fss_b_uev, times);
    DensityMatrix rho =
        0.5 * DensityMatrix::pure(detail::swapped_ket(primed.alpha_rad, primed.beta_rad));
    rho += 0.5 * DensityMatrix::pure(detail::swapped_ket(second.alpha_rad, second.beta_rad));
    return rho;
}

/// HH-VV coherence of one source after averaging over its exciton emission
/// time; optionally includes pure dephasing of the pair coherence itself.
inline Complex pair_coherence(const QdParams& p, bool cross_dephasing) {
    const double s = p.fss_uev * p.t1_x_ns / kHbar;
    const double extra = cross_dephasing ? p.t1_x_ns / p.t2_star_ns : 0.0;
    return 1.0 / Complex{1.0 + extra, s};
}

/// Core algebraic form of the swapped-state fidelity:
/// F = 1/2 + (V/2) Re[C_A conj(C_B)]. The visibility enters as a mixture
/// weight between the ideal swapped state and the dephased floor, so
/// F ranges over [0.5, 1] and V = 0 gives exactly 0.5.
inline double swap_fidelity_core(double visibility, Complex c_a, Complex c_b) {
    return 0.5 + 0.5 * visibility * (c_a * std::conj(c_b)).real();
}

/// Closed-form swapped-state fidelity for two sources. With the default
/// flags Re[C_A conj(C_B)] = (1 + s_A s_B)/((1+s_A^2)(1+s_B^2)).
inline double swap_fidelity_analytic(const QdParams& a, const QdParams& b,
                                     double detuning_uev, const SwapModelConfig& cfg) {
    a.validate();
    b.validate();
    const double v =
        cfg.ideal_bsm ? 1.0 : hom_visibility(a, b, detuning_uev, cfg.include_cascade);
    return swap_fidelity_core(v, pair_coherence(a, cfg.pair_cross_dephasing),
                              pair_coherence(b, cfg.pair_cross_dephasing));
}

struct McEstimate {
    double mean = 0.0;
    double stderr_mean = 0.0;
};

/// Monte Carlo oracle for swap_fidelity_analytic running the full state
/// machinery per sample: draw the exciton emission delays from
/// Exponential(T1_X), the BSM detection-time offsets from the XX decay law,
/// build the swapped mixture and average its fidelity to the target.
///
/// Under ideal_bsm the two BSM clicks are taken as simultaneous (the
/// paper-equivalent ideal-interference case), which makes the mixture pure
/// and the average agree with the closed form. With real detection-time
/// offsets the which-path ambiguity adds extra dephasing that the closed
/// form deliberately excludes.
///
/// Deterministic for a fixed seed, independent of worker count.
inline McEstimate swap_fidelity_mc(const QdParams& a, const QdParams& b,
                                   double detuning_uev, const SwapModelConfig& cfg,
                                   std::uint64_t n_samples, std::uint64_t seed,
                                   unsigned workers = 0) {
    if (n_samples == 0)
        throw std::invalid_argument("swap_fidelity_mc: n_samples must be >= 1");
    a.validate();
    b.validate();
    const double v =
        cfg.ideal_bsm ? 1.0 : hom_visibility(a, b, detuning_uev, cfg.include_cascade);
    const Ket target = bell_state(cfg.target);
    const DensityMatrix floor_state = detail::dephased_swap_floor();

    const std::uint64_t n_blocks = (n_samples + kMcBlockSize - 1) / kMcBlockSize;
    std::vector<double> block_sum(n_blocks, 0.0);
    std::vector<double> block_sumsq(n_blocks, 0.0);

    for_each_block(n_samples, workers, [&](std::uint64_t block, std::uint64_t begin,
                                           std::uint64_t end) {
        double sum = 0.0, sumsq = 0.0;
        for (std::uint64_t i = begin; i < end; ++i) {
            RngStream rng(seed, i);
            const double tau_a = rng.exponential(a.t1_x_ns);
            const double tau_b = rng.exponential(b.t1_x_ns);
            EmissionTimes times;
            if (cfg.ideal_bsm) {
                times = {tau_a, tau_b, 0.0, 0.0};
            } else {
                const double u_a = rng.exponential(a.t1_xx_ns);
                const double u_b = rng.exponential(b.t1_xx_ns);
                times = {u_a + tau_a, u_b + tau_b, u_a, u_b};
            }
            DensityMatrix rho = v * swapped_mixture(a.fss_uev, b.fss_uev, times);
            rho += (1.0 - v) * floor_state;
            const double f = fidelity(rho, target);
            sum += f;
            sumsq += f * f;
        }
        block_sum[block] = sum;
        block_sumsq[block] = sumsq;
    });

    double total = 0.0, total_sq = 0.0;
    for (std::uint64_t bidx = 0; bidx < n_blocks; ++bidx) {
        total += block_sum[bidx];
        total_sq += block_sumsq[bidx];
    }
    const double n = static_cast<double>(n_samples);
    const double mean = total / n;
    double stderr_mean = 0.0;
    if (n_samples > 1) {
        const double var = std::max(0.0, (total_sq - n * mean * mean) / (n - 1.0));
        stderr_mean = std::sqrt(var / n);
    }
    return {mean, stderr_mean};
}

}  // namespace qdswap
