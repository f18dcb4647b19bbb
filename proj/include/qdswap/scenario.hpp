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
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdswap/constants.hpp"
#include "qdswap/qd_params.hpp"
#include "qdswap/stats.hpp"

namespace qdswap {

enum class TuningKind { temperature, strain_wavelength, strain_fss, purcell_xx };

inline const char* to_string(TuningKind k) {
    switch (k) {
        case TuningKind::temperature: return "temperature";
        case TuningKind::strain_wavelength: return "strain_wavelength";
        case TuningKind::strain_fss: return "strain_fss";
        case TuningKind::purcell_xx: return "purcell_xx";
    }
    return "?";
}

inline constexpr double kTemperatureShiftNm = 0.445;
inline constexpr double kStrainFssRangeUev = 50.0;
inline constexpr double kPurcellFactor = 10.0;

/// One tuning mechanism. `range` is the maximum wavelength shift in nm for
/// temperature, the splitting reduction in ueV for strain_fss and the
/// enhancement factor for purcell_xx; strain_wavelength has unlimited reach
/// and takes no range.
struct TuningSpec {
    TuningKind kind = TuningKind::strain_wavelength;
    double range = 0.0;

    void validate() const {
        if (!(range >= 0.0)) throw std::invalid_argument("TuningSpec: range must be >= 0");
        if (kind == TuningKind::purcell_xx && !(range >= 1.0))
            throw std::invalid_argument("TuningSpec: Purcell factor must be >= 1");
    }

    /// Declared side effect of each mechanism on other parameters.
    static const char* side_effects(TuningKind k) {
        switch (k) {
            case TuningKind::temperature:
                return "degrades T2* of the shifted device, down to 1/3 at full range";
            case TuningKind::strain_wavelength:
                return "none";
            case TuningKind::strain_fss:
                return "none";
            case TuningKind::purcell_xx:
                return "shortens T1_XX only (selective enhancement)";
        }
        return "?";
    }
};

/// A tuning stack plus sampling switches; presets 1..6 below form the
/// cumulative ladder of improvements.
struct Scenario {
    int id = 0;  ///< 1..6 for presets, 0 for custom stacks
    std::vector<TuningSpec> stack;
    bool zero_sigma = false;
    std::optional<GaussianSpec> t2_star_override;

    void validate() const {
        for (const auto& t : stack) t.validate();
        if (t2_star_override) t2_star_override->validate();
    }
};

struct TunedPair {
    QdParams a;
    QdParams b;
    double residual_detuning_uev = 0.0;
};

namespace detail {

inline double detuning_from_gap(double gap_nm, double mid_wavelength_nm) {
    return kHc * gap_nm / (mid_wavelength_nm * mid_wavelength_nm);
}

}  // namespace detail

/// Temperature tuning: each device may shift its emission by up to
/// max_shift_nm, closing wavelength gaps up to twice that. The shift is
/// allocated greedily (bluer device first) and each device pays for the used
/// fraction u of its range with T2* -> T2*/(1 + 2u), i.e. a threefold
/// coherence loss at full range. The unremovable gap is returned as an
/// energy detuning evaluated at the pair's mid wavelength.
inline TunedPair apply_temperature_tuning(const QdParams& a, const QdParams& b,
                                          double max_shift_nm = kTemperatureShiftNm) {
    if (!(max_shift_nm >= 0.0))
        throw std::invalid_argument("apply_temperature_tuning: max shift must be >= 0");
    TunedPair out{a, b, 0.0};
    const double gap = std::abs(a.wavelength_x_nm - b.wavelength_x_nm);
    if (gap == 0.0) return out;
    QdParams& bluer = a.wavelength_x_nm < b.wavelength_x_nm ? out.a : out.b;
    QdParams& redder = a.wavelength_x_nm < b.wavelength_x_nm ? out.b : out.a;
    const double shift_bluer = std::min(gap, max_shift_nm);
    const double shift_redder = std::clamp(gap - max_shift_nm, 0.0, max_shift_nm);
    const double residual_nm = std::max(0.0, gap - 2.0 * max_shift_nm);
    bluer.wavelength_x_nm += shift_bluer;
    redder.wavelength_x_nm -= shift_redder;
    if (max_shift_nm > 0.0) {
        bluer.t2_star_ns /= 1.0 + 2.0 * (shift_bluer / max_shift_nm);
        redder.t2_star_ns /= 1.0 + 2.0 * (shift_redder / max_shift_nm);
    }
    const double mid = 0.5 * (out.a.wavelength_x_nm + out.b.wavelength_x_nm);
    out.residual_detuning_uev = detail::detuning_from_gap(residual_nm, mid);
    return out;
}

/// Strain-based wavelength tuning: unlimited reach and no side effects.
/// Parameters pass through bit-identical; only the detuning is zeroed.
inline TunedPair apply_strain_wavelength(const QdParams& a, const QdParams& b) {
    return {a, b, 0.0};
}

/// Fine-structure tuning: S -> max(0, S - magnitude).
inline QdParams apply_strain_fss(const QdParams& params, double magnitude_uev) {
    if (!(magnitude_uev >= 0.0))
        throw std::invalid_argument("apply_strain_fss: magnitude must be >= 0");
    QdParams out = params;
    out.fss_uev = std::max(0.0, out.fss_uev - magnitude_uev);
    return out;
}

/// Selective Purcell enhancement of the XX transition: T1_XX -> T1_XX / F_P,
/// everything else untouched.
inline QdParams apply_purcell(const QdParams& params, double purcell_factor) {
    if (!(purcell_factor >= 1.0))
        throw std::invalid_argument("apply_purcell: factor must be >= 1");
    QdParams out = params;
    out.t1_xx_ns /= purcell_factor;
    return out;
}

/// The cumulative preset ladder:
///   1 temperature tuning only
///   2 ideal wavelength tuning (strain)
///   3 + fine-structure tuning by 50 ueV
///   4 + selective Purcell enhancement of the XX, factor 10
///   5 + pure dephasing times raised to 4 +- 2 ns
///   6 as 5 with all statistical spread removed
inline Scenario scenario_preset(int id) {
    Scenario s;
    s.id = id;
    switch (id) {
        case 1:
            s.stack = {{TuningKind::temperature, kTemperatureShiftNm}};
            return s;
        case 2:
            s.stack = {{TuningKind::strain_wavelength, 0.0}};
            return s;
        case 3:
            s.stack = {{TuningKind::strain_wavelength, 0.0},
                       {TuningKind::strain_fss, kStrainFssRangeUev}};
            return s;
        case 4:
            s.stack = {{TuningKind::strain_wavelength, 0.0},
                       {TuningKind::strain_fss, kStrainFssRangeUev},
                       {TuningKind::purcell_xx, kPurcellFactor}};
            return s;
        case 5:
        case 6:
            s.stack = {{TuningKind::strain_wavelength, 0.0},
                       {TuningKind::strain_fss, kStrainFssRangeUev},
                       {TuningKind::purcell_xx, kPurcellFactor}};
            s.t2_star_override = GaussianSpec{4.0, 2.0, 0.04, std::nullopt};
            s.zero_sigma = (id == 6);
            return s;
        default:
            throw std::invalid_argument("scenario_preset: id must be in 1..6");
    }
}

/// Applies a scenario's tuning stack to one sampled device pair. Without any
/// wavelength mechanism the raw wavelength gap remains as detuning.
inline TunedPair apply_scenario_stack(const Scenario& scenario, const QdParams& a,
                                      const QdParams& b) {
    scenario.validate();
    TunedPair cur{a, b, 0.0};
    const double mid = 0.5 * (a.wavelength_x_nm + b.wavelength_x_nm);
    cur.residual_detuning_uev =
        detail::detuning_from_gap(std::abs(a.wavelength_x_nm - b.wavelength_x_nm), mid);
    for (const auto& t : scenario.stack) {
        switch (t.kind) {
            case TuningKind::temperature:
                cur = apply_temperature_tuning(cur.a, cur.b, t.range);
                break;
            case TuningKind::strain_wavelength:
                cur = apply_strain_wavelength(cur.a, cur.b);
                break;
            case TuningKind::strain_fss:
                cur.a = apply_strain_fss(cur.a, t.range);
                cur.b = apply_strain_fss(cur.b, t.range);
                break;
            case TuningKind::purcell_xx:
                cur.a = apply_purcell(cur.a, t.range);
                cur.b = apply_purcell(cur.b, t.range);
                break;
        }
    }
    return cur;
}

}  // namespace qdswap
