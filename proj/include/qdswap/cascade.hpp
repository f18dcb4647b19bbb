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
#include <complex>
#include <optional>
#include <stdexcept>

#include "qdswap/constants.hpp"
#include "qdswap/ket.hpp"
#include "qdswap/qd_params.hpp"

namespace qdswap {

/// Two-photon state of one XX-X cascade emission after the exciton evolved
/// for time t: (|HH> + e^{-i S t / hbar} |VV>) / sqrt(2).
inline Ket pair_state(double fss_uev, double t_ns) {
    if (t_ns < 0.0) throw std::invalid_argument("pair_state: t_ns must be >= 0");
    const double r = std::numbers::sqrt2 / 2.0;
    const double phase = -fss_uev * t_ns / kHbar;
    return Ket{Complex{r, 0.0}, 0.0, 0.0, r * std::exp(Complex{0.0, phase})};
}

/// Expectation of the HH-VV phase factor over the exciton emission time,
/// t ~ Exponential(T1). Ungated: C = 1/(1 + i s) with s = S*T1/hbar.
/// With a gate window the distribution is truncated to [0, gate]:
/// C(g) = [1/(1+is)] * [1 - e^{-(1+is) g/T1}] / [1 - e^{-g/T1}].
inline Complex coherence_factor(double fss_uev, double t1_x_ns,
                                std::optional<double> gate_ns = std::nullopt) {
    if (!(t1_x_ns > 0.0))
        throw std::invalid_argument("coherence_factor: t1_x_ns must be > 0");
    const double s = fss_uev * t1_x_ns / kHbar;
    const Complex one_is{1.0, s};
    if (!gate_ns) return 1.0 / one_is;
    if (!(*gate_ns > 0.0))
        throw std::invalid_argument("coherence_factor: gate_ns must be > 0");
    const double x = *gate_ns / t1_x_ns;
    if (x < 1e-9) return Complex{1.0, 0.0};  // gate -> 0 limit
    const double denom = -std::expm1(-x);
    return (1.0 - std::exp(-one_is * x)) / (one_is * denom);
}

/// Time-averaged (optionally gated) fidelity of the emitted pair to phi_plus:
/// F = 1/2 + Re(C)/2. phi_plus is the reference state of the cascade; the
/// fine-structure phase is defined relative to it.
inline double pair_fidelity(const QdParams& params,
                            std::optional<double> gate_ns = std::nullopt,
                            BellKind target = BellKind::phi_plus) {
    if (target != BellKind::phi_plus)
        throw std::invalid_argument("pair_fidelity: target must be phi_plus");
    params.validate();
    return 0.5 + 0.5 * coherence_factor(params.fss_uev, params.t1_x_ns, gate_ns).real();
}

/// Single-source photon indistinguishability V = T2 / (2 T1).
inline double indistinguishability(double t1_ns, double t2_star_ns) {
    return derived_t2(t1_ns, t2_star_ns) / (2.0 * t1_ns);
}

/// Indistinguishability ceiling from the timing jitter of the cascade:
/// c = T1_X / (T1_X + T1_XX). Approaches 1 when the XX decay is fast.
inline double cascade_limit(double t1_x_ns, double t1_xx_ns) {
    if (!(t1_x_ns > 0.0) || !(t1_xx_ns > 0.0))
        throw std::invalid_argument("cascade_limit: lifetimes must be > 0");
    return t1_x_ns / (t1_x_ns + t1_xx_ns);
}

/// Two-photon interference visibility for the XX photons of two remote
/// sources, modeled as exponential wavepackets with pure dephasing and a
/// frequency detuning:
///
///   V = Gamma_A Gamma_B (Gamma_bar + gamma*) /
///       [Gamma_bar ((Gamma_bar + gamma*)^2 + Delta^2)]
///
/// with Gamma_i = 1/T1_XX,i, Gamma_bar their mean, gamma* = 1/T2*_A + 1/T2*_B
/// and Delta = detuning/hbar. For identical sources at zero detuning this
/// reduces exactly to T2/(2 T1_XX). With include_cascade the ceiling
/// sqrt(c_A c_B) from cascade_limit() is applied on top.
inline double hom_visibility(const QdParams& a, const QdParams& b,
                             double detuning_uev, bool include_cascade) {
    a.validate();
    b.validate();
    const double gamma_a = 1.0 / a.t1_xx_ns;
    const double gamma_b = 1.0 / b.t1_xx_ns;
    const double gamma_bar = 0.5 * (gamma_a + gamma_b);
    const double gamma_star = 1.0 / a.t2_star_ns + 1.0 / b.t2_star_ns;
    const double delta = detuning_uev / kHbar;
    const double width = gamma_bar + gamma_star;
    double v = gamma_a * gamma_b * width / (gamma_bar * (width * width + delta * delta));
    if (include_cascade)
        v *= std::sqrt(cascade_limit(a.t1_x_ns, a.t1_xx_ns) *
                       cascade_limit(b.t1_x_ns, b.t1_xx_ns));
    return v;
}

/// On-fraction of a blinking emitter from the bunching amplitude `a` of a
/// telegraph-noise g2 envelope 1 + a*exp(-|tau|/tau_b): beta = 1/(1+a).
inline double on_fraction_from_bunching(double bunching_amplitude) {
    if (!(bunching_amplitude >= 0.0))
        throw std::invalid_argument("on_fraction_from_bunching: amplitude must be >= 0");
    return 1.0 / (1.0 + bunching_amplitude);
}

/// Efficiency of two-source interference under blinking: sqrt(beta_A beta_B).
/// Blinking reduces rates only, never the state fidelity.
inline double interference_efficiency(double beta_a, double beta_b) {
    if (!(beta_a >= 0.0 && beta_a <= 1.0) || !(beta_b >= 0.0 && beta_b <= 1.0))
        throw std::invalid_argument("interference_efficiency: on-fractions must be in [0,1]");
    return std::sqrt(beta_a * beta_b);
}

}  // namespace qdswap
