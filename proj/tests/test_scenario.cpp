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

#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qdswap/cascade.hpp"
#include "qdswap/mc.hpp"
#include "qdswap/scenario.hpp"

using namespace qdswap;

namespace {

QdParams at_wavelength(double nm) {
    QdParams p;
    p.wavelength_x_nm = nm;
    return p;
}

std::vector<double> scenario_samples(int preset, std::uint64_t n, std::uint64_t seed) {
    McConfig cfg;
    cfg.scenario = scenario_preset(preset);
    cfg.n_samples = n;
    cfg.seed = seed;
    const ParamDistributions da = effective_dists(cfg.dists_a, cfg.scenario);
    const ParamDistributions db = effective_dists(cfg.dists_b, cfg.scenario);
    std::vector<double> out(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        RngStream rng(seed, i);
        out[i] = sample_swap_fidelity(cfg, rng, da, db);
    }
    return out;
}

double median_of(std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
}

}  // namespace

TEST_CASE("temperature tuning") {
    SECTION("already resonant pair is untouched") {
        const auto out = apply_temperature_tuning(at_wavelength(777.0), at_wavelength(777.0));
        CHECK(out.residual_detuning_uev == 0.0);
        CHECK(out.a.t2_star_ns == Approx(0.5));
        CHECK(out.b.t2_star_ns == Approx(0.5));
    }

    SECTION("a 0.89 nm gap is exactly closable at full range on both sides") {
        const auto out =
            apply_temperature_tuning(at_wavelength(777.0), at_wavelength(777.89));
        CHECK(out.residual_detuning_uev == Approx(0.0).margin(1e-12));
        CHECK(out.a.t2_star_ns == Approx(0.5 / 3.0).margin(1e-12));
        CHECK(out.b.t2_star_ns == Approx(0.5 / 3.0).margin(1e-12));
        CHECK(out.a.wavelength_x_nm == Approx(out.b.wavelength_x_nm).margin(1e-12));
    }

    SECTION("a 3 nm gap keeps 2.11 nm of detuning") {
        const auto out =
            apply_temperature_tuning(at_wavelength(776.35), at_wavelength(779.35));
        // hc * 2.11 nm / (777.85 nm)^2
        CHECK(out.residual_detuning_uev == Approx(4323.7).margin(1.0));
        QdParams a = out.a, b = out.b;
        CHECK(hom_visibility(a, b, out.residual_detuning_uev, false) < 1e-4);
    }

    SECTION("partial use degrades T2* proportionally") {
        const auto out =
            apply_temperature_tuning(at_wavelength(777.0), at_wavelength(777.2));
        const double u = 0.2 / kTemperatureShiftNm;
        CHECK(out.residual_detuning_uev == 0.0);
        // only the bluer device had to move
        CHECK(out.a.t2_star_ns == Approx(0.5 / (1.0 + 2.0 * u)).margin(1e-12));
        CHECK(out.b.t2_star_ns == Approx(0.5));
    }
}

TEST_CASE("strain wavelength tuning") {
    const QdParams a = at_wavelength(775.0), b = at_wavelength(781.0);
    const auto out = apply_strain_wavelength(a, b);
    CHECK(out.residual_detuning_uev == 0.0);
    CHECK(out.a.wavelength_x_nm == a.wavelength_x_nm);
    CHECK(out.a.t2_star_ns == a.t2_star_ns);
    CHECK(out.b.wavelength_x_nm == b.wavelength_x_nm);
    const auto twice = apply_strain_wavelength(out.a, out.b);
    CHECK(twice.residual_detuning_uev == 0.0);
    CHECK(twice.a.wavelength_x_nm == a.wavelength_x_nm);
}

TEST_CASE("fine structure strain tuning") {
    QdParams p;
    p.fss_uev = 11.0;
    CHECK(apply_strain_fss(p, 50.0).fss_uev == 0.0);
    p.fss_uev = 60.0;
    CHECK(apply_strain_fss(p, 50.0).fss_uev == Approx(10.0));

    SECTION("never increases the splitting") {
        RngStream rng(4, 4);
        for (int i = 0; i < 200; ++i) {
            p.fss_uev = rng.uniform() * 80.0;
            const double mag = rng.uniform() * 60.0;
            CHECK(apply_strain_fss(p, mag).fss_uev <= p.fss_uev);
            CHECK(apply_strain_fss(p, mag).fss_uev >= 0.0);
        }
    }

    SECTION("the default population is fully tuned to zero") {
        const ParamDistributions d;
        int above_zero = 0;
        for (std::uint64_t i = 0; i < 1'000'000; ++i) {
            RngStream rng(5005, i);
            QdParams q;
            q.fss_uev = d.fss.sample(rng);
            if (apply_strain_fss(q, 50.0).fss_uev > 0.0) ++above_zero;
        }
        CHECK(above_zero == 0);
    }
}

TEST_CASE("selective Purcell enhancement") {
    QdParams p;
    p.t1_xx_ns = 0.15;
    p.t1_x_ns = 0.3;
    const QdParams out = apply_purcell(p, 10.0);
    CHECK(out.t1_xx_ns == Approx(0.015));
    CHECK(out.t1_x_ns == p.t1_x_ns);
    CHECK(out.t2_star_ns == p.t2_star_ns);
    CHECK(out.fss_uev == p.fss_uev);
    CHECK(apply_purcell(p, 1.0).t1_xx_ns == p.t1_xx_ns);
    CHECK(cascade_limit(out.t1_x_ns, out.t1_xx_ns) == Approx(300.0 / 315.0).margin(1e-12));
    CHECK_THROWS_AS(apply_purcell(p, 0.5), std::invalid_argument);
}

TEST_CASE("scenario presets form the cumulative ladder") {
    const Scenario s1 = scenario_preset(1);
    REQUIRE(s1.stack.size() == 1);
    CHECK(s1.stack[0].kind == TuningKind::temperature);
    CHECK(s1.stack[0].range == Approx(0.445));
    CHECK_FALSE(s1.zero_sigma);
    CHECK_FALSE(s1.t2_star_override.has_value());

    const Scenario s4 = scenario_preset(4);
    REQUIRE(s4.stack.size() == 3);
    CHECK(s4.stack[0].kind == TuningKind::strain_wavelength);
    CHECK(s4.stack[1].kind == TuningKind::strain_fss);
    CHECK(s4.stack[1].range == Approx(50.0));
    CHECK(s4.stack[2].kind == TuningKind::purcell_xx);
    CHECK(s4.stack[2].range == Approx(10.0));

    const Scenario s5 = scenario_preset(5);
    REQUIRE(s5.t2_star_override.has_value());
    CHECK(s5.t2_star_override->mu == Approx(4.0));
    CHECK(s5.t2_star_override->sigma == Approx(2.0));
    CHECK_FALSE(s5.zero_sigma);

    const Scenario s6 = scenario_preset(6);
    CHECK(s6.zero_sigma);
    REQUIRE(s6.t2_star_override.has_value());

    CHECK_THROWS_AS(scenario_preset(0), std::invalid_argument);
    CHECK_THROWS_AS(scenario_preset(7), std::invalid_argument);
}

TEST_CASE("tuning preserves parameter positivity") {
    const ParamDistributions d;
    for (int preset = 1; preset <= 6; ++preset) {
        const Scenario scenario = scenario_preset(preset);
        const ParamDistributions eff = effective_dists(d, scenario);
        for (std::uint64_t i = 0; i < 500; ++i) {
            RngStream rng(99 + preset, i);
            const TunedPair tuned =
                apply_scenario_stack(scenario, eff.sample(rng), eff.sample(rng));
            CHECK_NOTHROW(tuned.a.validate());
            CHECK_NOTHROW(tuned.b.validate());
            CHECK(tuned.residual_detuning_uev >= 0.0);
        }
    }
}

TEST_CASE("scenario medians are ordered") {
    const std::uint64_t n = 100'000;
    std::vector<double> medians;
    for (int preset = 1; preset <= 5; ++preset)
        medians.push_back(median_of(scenario_samples(preset, n, 2468)));
    for (std::size_t k = 0; k + 1 < medians.size(); ++k)
        CHECK(medians[k] <= medians[k + 1]);
}

TEST_CASE("removing the statistics beats almost every sampled pair") {
    auto s5 = scenario_samples(5, 100'000, 1357);
    std::sort(s5.begin(), s5.end());
    const double p99 = s5[static_cast<std::size_t>(0.99 * (s5.size() - 1))];

    const auto s6 = scenario_samples(6, 3, 1357);
    CHECK(s6[0] == s6[1]);  // deterministic parameters, single value
    CHECK(s6[0] == s6[2]);
    CHECK(s6[0] >= p99 - 0.01);
}
