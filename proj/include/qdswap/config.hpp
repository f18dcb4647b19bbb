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

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qdswap/mc.hpp"
#include "qdswap/scenario.hpp"
#include "qdswap/stats.hpp"
#include "qdswap/swap.hpp"
#include "qdswap/tomography.hpp"

namespace qdswap {

using Json = nlohmann::json;

namespace cfg_detail {

inline void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                       const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known)
            throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
    }
}

inline GaussianSpec parse_gaussian(const Json& j, const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument("config: " + where + " must be an object");
    check_keys(j, {"mu", "sigma", "lower", "upper"}, where);
    GaussianSpec spec;
    spec.mu = j.at("mu").get<double>();
    spec.sigma = j.at("sigma").get<double>();
    if (j.contains("lower")) spec.lower = j.at("lower").get<double>();
    if (j.contains("upper")) spec.upper = j.at("upper").get<double>();
    spec.validate();
    return spec;
}

inline Json dump_gaussian(const GaussianSpec& spec) {
    Json j;
    j["mu"] = spec.mu;
    j["sigma"] = spec.sigma;
    if (spec.lower) j["lower"] = *spec.lower;
    if (spec.upper) j["upper"] = *spec.upper;
    return j;
}

inline ParamDistributions parse_dists(const Json& j, const std::string& where) {
    check_keys(j, {"wavelength_x_nm", "fss_uev", "t1_x_ns", "t1_xx_ns", "t2_star_ns"}, where);
    ParamDistributions d;
    if (j.contains("wavelength_x_nm"))
        d.wavelength_x = parse_gaussian(j.at("wavelength_x_nm"), where + ".wavelength_x_nm");
    if (j.contains("fss_uev")) d.fss = parse_gaussian(j.at("fss_uev"), where + ".fss_uev");
    if (j.contains("t1_x_ns")) d.t1_x = parse_gaussian(j.at("t1_x_ns"), where + ".t1_x_ns");
    if (j.contains("t1_xx_ns"))
        d.t1_xx = parse_gaussian(j.at("t1_xx_ns"), where + ".t1_xx_ns");
    if (j.contains("t2_star_ns"))
        d.t2_star = parse_gaussian(j.at("t2_star_ns"), where + ".t2_star_ns");
    d.validate();
    return d;
}

inline Json dump_dists(const ParamDistributions& d) {
    Json j;
    j["wavelength_x_nm"] = dump_gaussian(d.wavelength_x);
    j["fss_uev"] = dump_gaussian(d.fss);
    j["t1_x_ns"] = dump_gaussian(d.t1_x);
    j["t1_xx_ns"] = dump_gaussian(d.t1_xx);
    j["t2_star_ns"] = dump_gaussian(d.t2_star);
    return j;
}

inline TuningKind parse_tuning_kind(const std::string& s) {
    if (s == "temperature") return TuningKind::temperature;
    if (s == "strain_wavelength") return TuningKind::strain_wavelength;
    if (s == "strain_fss") return TuningKind::strain_fss;
    if (s == "purcell_xx") return TuningKind::purcell_xx;
    throw std::invalid_argument("config: unknown tuning kind '" + s + "'");
}

inline TuningSpec parse_tuning(const Json& j, const std::string& where) {
    check_keys(j, {"kind", "max_shift_nm", "magnitude_uev", "factor"}, where);
    TuningSpec t;
    t.kind = parse_tuning_kind(j.at("kind").get<std::string>());
    switch (t.kind) {
        case TuningKind::temperature:
            t.range = j.value("max_shift_nm", kTemperatureShiftNm);
            break;
        case TuningKind::strain_wavelength:
            t.range = 0.0;
            break;
        case TuningKind::strain_fss:
            t.range = j.value("magnitude_uev", kStrainFssRangeUev);
            break;
        case TuningKind::purcell_xx:
            t.range = j.value("factor", kPurcellFactor);
            break;
    }
    t.validate();
    return t;
}

inline Json dump_tuning(const TuningSpec& t) {
    Json j;
    j["kind"] = to_string(t.kind);
    switch (t.kind) {
        case TuningKind::temperature: j["max_shift_nm"] = t.range; break;
        case TuningKind::strain_wavelength: break;
        case TuningKind::strain_fss: j["magnitude_uev"] = t.range; break;
        case TuningKind::purcell_xx: j["factor"] = t.range; break;
    }
    return j;
}

inline Scenario parse_scenario(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return scenario_preset(j.get<int>());
    if (!j.is_object())
        throw std::invalid_argument("config: " + where + " must be a preset id or object");
    check_keys(j, {"preset", "stack", "zero_sigma", "t2_star_override"}, where);
    if (j.contains("preset")) {
        if (j.size() != 1)
            throw std::invalid_argument("config: " + where +
                                        ": preset excludes custom scenario keys");
        return scenario_preset(j.at("preset").get<int>());
    }
    Scenario s;
    s.id = 0;
    for (const auto& t : j.at("stack"))
        s.stack.push_back(parse_tuning(t, where + ".stack"));
    s.zero_sigma = j.value("zero_sigma", false);
    if (j.contains("t2_star_override"))
        s.t2_star_override =
            parse_gaussian(j.at("t2_star_override"), where + ".t2_star_override");
    s.validate();
    return s;
}

inline Json dump_scenario(const Scenario& s) {
    if (s.id >= 1 && s.id <= 6) {
        Json j;
        j["preset"] = s.id;
        return j;
    }
    Json j;
    j["stack"] = Json::array();
    for (const auto& t : s.stack) j["stack"].push_back(dump_tuning(t));
    j["zero_sigma"] = s.zero_sigma;
    if (s.t2_star_override) j["t2_star_override"] = dump_gaussian(*s.t2_star_override);
    return j;
}

inline BellKind parse_bell(const std::string& s) {
    if (s == "phi_plus") return BellKind::phi_plus;
    if (s == "phi_minus") return BellKind::phi_minus;
    if (s == "psi_plus") return BellKind::psi_plus;
    if (s == "psi_minus") return BellKind::psi_minus;
    throw std::invalid_argument("config: unknown Bell state '" + s + "'");
}

}  // namespace cfg_detail

/// montecarlo section; maps directly onto McConfig.
struct McSection {
    McConfig mc;
    bool has_seed = false;
};

struct PairSection {
    double fss_uev = 0.0;
    double t1_x_ns = 0.3;
    std::optional<double> t2_star_ns;
    std::optional<double> gate_ns;
    BellKind target = BellKind::phi_plus;
};

struct SwapSection {
    double fss_a_uev = 0.0;
    double fss_b_uev = 0.0;
    double t1_x_ns = 0.3;
    double t1_xx_ns = 0.15;
    double t2_star_ns = 0.5;
    double detuning_uev = 0.0;
    SwapModelConfig model;
};

struct ResonanceSection {
    double mu_a_nm = 777.85;
    double sigma_a_nm = 2.19;
    double mu_b_nm = 777.85;
    double sigma_b_nm = 2.19;
    double tune_a_nm = 1.0;
    double tune_b_nm = 1.0;
};

struct TomographySection {
    double fss_uev = 4.22;
    double t1_x_ns = 0.3;
    std::optional<double> gate_ns;
    double shots = 1e6;
    bool noise = false;
    std::uint64_t seed = 0;
    bool has_seed = false;
    BasisSet basis = BasisSet::minimal16;
};

/// Full config file: one optional section per workflow. Units are fixed
/// (nm, ueV, ns) and spelled in the key names; unknown keys are rejected.
struct RunConfig {
    std::optional<McSection> montecarlo;
    std::optional<PairSection> pair;
    std::optional<SwapSection> swap;
    std::optional<ResonanceSection> resonance;
    std::optional<TomographySection> tomography;
};

inline RunConfig parse_config(const Json& root) {
    using namespace cfg_detail;
    if (!root.is_object()) throw std::invalid_argument("config: root must be an object");
    check_keys(root, {"montecarlo", "pair", "swap", "resonance", "tomography"}, "root");
    RunConfig out;

    if (root.contains("montecarlo")) {
        const Json& j = root.at("montecarlo");
        check_keys(j,
                   {"n_samples", "seed", "bins", "scenario", "ideal_bsm", "include_cascade",
                    "pair_cross_dephasing", "device_a", "device_b"},
                   "montecarlo");
        McSection sec;
        sec.mc.n_samples = j.value("n_samples", std::uint64_t{1'000'000});
        if (j.contains("seed")) {
            sec.mc.seed = j.at("seed").get<std::uint64_t>();
            sec.has_seed = true;
        }
        sec.mc.bins = j.value("bins", 200);
        if (j.contains("scenario"))
            sec.mc.scenario = parse_scenario(j.at("scenario"), "montecarlo.scenario");
        sec.mc.swap.ideal_bsm = j.value("ideal_bsm", sec.mc.swap.ideal_bsm);
        sec.mc.swap.include_cascade =
            j.value("include_cascade", sec.mc.swap.include_cascade);
        sec.mc.swap.pair_cross_dephasing =
            j.value("pair_cross_dephasing", sec.mc.swap.pair_cross_dephasing);
        if (j.contains("device_a"))
            sec.mc.dists_a = parse_dists(j.at("device_a"), "montecarlo.device_a");
        if (j.contains("device_b"))
            sec.mc.dists_b = parse_dists(j.at("device_b"), "montecarlo.device_b");
        out.montecarlo = std::move(sec);
    }

    if (root.contains("pair")) {
        const Json& j = root.at("pair");
        check_keys(j, {"fss_uev", "t1_x_ns", "t2_star_ns", "gate_ns", "target"}, "pair");
        PairSection sec;
        sec.fss_uev = j.value("fss_uev", 0.0);
        sec.t1_x_ns = j.value("t1_x_ns", 0.3);
        if (j.contains("t2_star_ns")) sec.t2_star_ns = j.at("t2_star_ns").get<double>();
        if (j.contains("gate_ns")) sec.gate_ns = j.at("gate_ns").get<double>();
        if (j.contains("target")) sec.target = parse_bell(j.at("target").get<std::string>());
        out.pair = sec;
    }

    if (root.contains("swap")) {
        const Json& j = root.at("swap");
        check_keys(j,
                   {"fss_a_uev", "fss_b_uev", "t1_x_ns", "t1_xx_ns", "t2_star_ns",
                    "detuning_uev", "ideal_bsm", "include_cascade", "pair_cross_dephasing"},
                   "swap");
        SwapSection sec;
        sec.fss_a_uev = j.value("fss_a_uev", 0.0);
        sec.fss_b_uev = j.value("fss_b_uev", 0.0);
        sec.t1_x_ns = j.value("t1_x_ns", 0.3);
        sec.t1_xx_ns = j.value("t1_xx_ns", 0.15);
        sec.t2_star_ns = j.value("t2_star_ns", 0.5);
        sec.detuning_uev = j.value("detuning_uev", 0.0);
        sec.model.ideal_bsm = j.value("ideal_bsm", sec.model.ideal_bsm);
        sec.model.include_cascade = j.value("include_cascade", sec.model.include_cascade);
        sec.model.pair_cross_dephasing =
            j.value("pair_cross_dephasing", sec.model.pair_cross_dephasing);
        out.swap = sec;
    }

    if (root.contains("resonance")) {
        const Json& j = root.at("resonance");
        check_keys(j, {"mu_a_nm", "sigma_a_nm", "mu_b_nm", "sigma_b_nm", "tune_a_nm",
                       "tune_b_nm"},
                   "resonance");
        ResonanceSection sec;
        sec.mu_a_nm = j.value("mu_a_nm", 777.85);
        sec.sigma_a_nm = j.value("sigma_a_nm", 2.19);
        sec.mu_b_nm = j.value("mu_b_nm", 777.85);
        sec.sigma_b_nm = j.value("sigma_b_nm", 2.19);
        sec.tune_a_nm = j.value("tune_a_nm", 1.0);
        sec.tune_b_nm = j.value("tune_b_nm", 1.0);
        if (!(sec.sigma_a_nm >= 0.0) || !(sec.sigma_b_nm >= 0.0) ||
            !(sec.tune_a_nm >= 0.0) || !(sec.tune_b_nm >= 0.0))
            throw std::invalid_argument("config: resonance sigmas and ranges must be >= 0");
        out.resonance = sec;
    }

    if (root.contains("tomography")) {
        const Json& j = root.at("tomography");
        check_keys(j, {"fss_uev", "t1_x_ns", "gate_ns", "shots", "noise", "seed", "basis"},
                   "tomography");
        TomographySection sec;
        sec.fss_uev = j.value("fss_uev", 4.22);
        sec.t1_x_ns = j.value("t1_x_ns", 0.3);
        if (j.contains("gate_ns")) sec.gate_ns = j.at("gate_ns").get<double>();
        sec.shots = j.value("shots", 1e6);
        sec.noise = j.value("noise", false);
        if (j.contains("seed")) {
            sec.seed = j.at("seed").get<std::uint64_t>();
            sec.has_seed = true;
        }
        if (j.contains("basis")) {
            const std::string b = j.at("basis").get<std::string>();
            if (b == "minimal16")
                sec.basis = BasisSet::minimal16;
            else if (b == "full36")
                sec.basis = BasisSet::full36;
            else
                throw std::invalid_argument("config: basis must be minimal16 or full36");
        }
        out.tomography = sec;
    }

    return out;
}

inline RunConfig parse_config_text(const std::string& text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_config(root);
}

inline Json serialize_config(const RunConfig& cfg) {
    using namespace cfg_detail;
    Json root;
    if (cfg.montecarlo) {
        const McSection& sec = *cfg.montecarlo;
        Json j;
        j["n_samples"] = sec.mc.n_samples;
        if (sec.has_seed) j["seed"] = sec.mc.seed;
        j["bins"] = sec.mc.bins;
        j["scenario"] = dump_scenario(sec.mc.scenario);
        j["ideal_bsm"] = sec.mc.swap.ideal_bsm;
        j["include_cascade"] = sec.mc.swap.include_cascade;
        j["pair_cross_dephasing"] = sec.mc.swap.pair_cross_dephasing;
        j["device_a"] = dump_dists(sec.mc.dists_a);
        j["device_b"] = dump_dists(sec.mc.dists_b);
        root["montecarlo"] = std::move(j);
    }
    if (cfg.pair) {
        Json j;
        j["fss_uev"] = cfg.pair->fss_uev;
        j["t1_x_ns"] = cfg.pair->t1_x_ns;
        if (cfg.pair->t2_star_ns) j["t2_star_ns"] = *cfg.pair->t2_star_ns;
        if (cfg.pair->gate_ns) j["gate_ns"] = *cfg.pair->gate_ns;
        j["target"] = to_string(cfg.pair->target);
        root["pair"] = std::move(j);
    }
    if (cfg.swap) {
        Json j;
        j["fss_a_uev"] = cfg.swap->fss_a_uev;
        j["fss_b_uev"] = cfg.swap->fss_b_uev;
        j["t1_x_ns"] = cfg.swap->t1_x_ns;
        j["t1_xx_ns"] = cfg.swap->t1_xx_ns;
        j["t2_star_ns"] = cfg.swap->t2_star_ns;
        j["detuning_uev"] = cfg.swap->detuning_uev;
        j["ideal_bsm"] = cfg.swap->model.ideal_bsm;
        j["include_cascade"] = cfg.swap->model.include_cascade;
        j["pair_cross_dephasing"] = cfg.swap->model.pair_cross_dephasing;
        root["swap"] = std::move(j);
    }
    if (cfg.resonance) {
        Json j;
        j["mu_a_nm"] = cfg.resonance->mu_a_nm;
        j["sigma_a_nm"] = cfg.resonance->sigma_a_nm;
        j["mu_b_nm"] = cfg.resonance->mu_b_nm;
        j["sigma_b_nm"] = cfg.resonance->sigma_b_nm;
        j["tune_a_nm"] = cfg.resonance->tune_a_nm;
        j["tune_b_nm"] = cfg.resonance->tune_b_nm;
        root["resonance"] = std::move(j);
    }
    if (cfg.tomography) {
        Json j;
        j["fss_uev"] = cfg.tomography->fss_uev;
        j["t1_x_ns"] = cfg.tomography->t1_x_ns;
        if (cfg.tomography->gate_ns) j["gate_ns"] = *cfg.tomography->gate_ns;
        j["shots"] = cfg.tomography->shots;
        j["noise"] = cfg.tomography->noise;
        if (cfg.tomography->has_seed) j["seed"] = cfg.tomography->seed;
        j["basis"] = cfg.tomography->basis == BasisSet::minimal16 ? "minimal16" : "full36";
        root["tomography"] = std::move(j);
    }
    return root;
}

inline std::string serialize_config_text(const RunConfig& cfg) {
    return serialize_config(cfg).dump(2) + "\n";
}

}  // namespace qdswap
