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

#include <cmath>
#include <numbers>
#include <vector>

#include "qdswap/stats.hpp"

using namespace qdswap;

namespace {

double std_normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

// Independent oracle for the resonance probability: trapezoid integration of
// the Gaussian difference density over the overlap window.
double resonance_by_quadrature(double dmu, double sigma_a, double sigma_b,
                               double delta, int steps = 20000) {
    const double sigma_d = std::hypot(sigma_a, sigma_b);
    const double h = 2.0 * delta / steps;
    double acc = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double x = -delta + i * h;
        const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
        acc += w * std_normal_pdf((x - dmu) / sigma_d) / sigma_d;
    }
    return acc * h;
}

// Mean of a lower-truncated normal, used as the sampling oracle.
double truncated_mean(double mu, double sigma, double lower) {
    const double a = (lower - mu) / sigma;
    const double tail = 1.0 - normal_cdf(a);
    return mu + sigma * std_normal_pdf(a) / tail;
}

}  // namespace

TEST_CASE("gaussian pdf") {
    CHECK(gaussian_pdf({0.0, 1.0, std::nullopt, std::nullopt}, 0.0) ==
          Approx(0.39894).margin(1e-5));
    CHECK(gaussian_pdf({777.85, 2.19, std::nullopt, std::nullopt}, 777.85) ==
          Approx(0.18217).margin(1e-5));
    // lower truncation at the mean doubles the density by symmetry
    CHECK(gaussian_pdf({0.0, 1.0, 0.0, std::nullopt}, 0.0) ==
          Approx(0.79788).margin(1e-5));
    CHECK(gaussian_pdf({0.0, 1.0, 0.0, std::nullopt}, -0.5) == 0.0);
    CHECK_THROWS_AS(gaussian_pdf({0.0, 0.0, std::nullopt, std::nullopt}, 0.0),
                    std::domain_error);
}

TEST_CASE("gaussian spec validation") {
    CHECK_THROWS_AS((GaussianSpec{0.0, -1.0, std::nullopt, std::nullopt}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((GaussianSpec{0.0, 1.0, 2.0, 1.0}.validate()), std::invalid_argument);
    CHECK_NOTHROW((GaussianSpec{0.0, 1.0, -1.0, 1.0}.validate()));
}

TEST_CASE("maximum likelihood gaussian fit") {
    SECTION("degenerate samples") {
        const auto fit = fit_gaussian({3.5, 3.5, 3.5});
        CHECK(fit.spec.mu == Approx(3.5));
        CHECK(fit.spec.sigma == Approx(0.0));
        CHECK(fit.n_samples == 3);
    }
    SECTION("population convention") {
        const auto fit = fit_gaussian({-1.0, 1.0});
        CHECK(fit.spec.mu == Approx(0.0));
        CHECK(fit.spec.sigma == Approx(1.0));
    }
    SECTION("recovers the generating parameters from 1e5 draws") {
        RngStream rng(20260805, 0);
        std::vector<double> samples(100'000);
        for (double& x : samples) x = rng.normal(777.85, 2.19);
        const auto fit = fit_gaussian(samples);
        CHECK(fit.spec.mu == Approx(777.85).margin(0.03));
        CHECK(fit.spec.sigma == Approx(2.19).margin(0.02));
    }
    CHECK_THROWS_AS(fit_gaussian({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_gaussian({}), std::invalid_argument);
}

TEST_CASE("resonance probability closed form") {
    const GaussianSpec narrow{777.0, 0.0, std::nullopt, std::nullopt};

    SECTION("trivial limits") {
        CHECK(resonance_probability(narrow, narrow, 0.5, 0.5) == 1.0);
        const GaussianSpec broad{777.0, 1.0, std::nullopt, std::nullopt};
        CHECK(resonance_probability(broad, broad, 0.0, 0.0) == Approx(0.0).margin(1e-12));
    }

    SECTION("derived anchor against the quadrature oracle") {
        const GaussianSpec a{779.0, 1.0, std::nullopt, std::nullopt};
        const GaussianSpec b{777.0, 1.0, std::nullopt, std::nullopt};
        const double p = resonance_probability(a, b, 1.0, 1.0);
        CHECK(p == Approx(0.49766).margin(1e-3));
        CHECK(p == Approx(resonance_by_quadrature(2.0, 1.0, 1.0, 2.0)).margin(1e-6));
    }

    SECTION("closed form matches quadrature on a parameter grid") {
        for (double dmu : {0.0, 0.5, 1.0, 2.0, 4.0})
            for (double sigma : {0.3, 0.8, 1.5, 3.0}) {
                const GaussianSpec a{777.85 + dmu, sigma, std::nullopt, std::nullopt};
                const GaussianSpec b{777.85, sigma, std::nullopt, std::nullopt};
                const double closed = resonance_probability(a, b, 1.0, 1.0);
                const double quad = resonance_by_quadrature(dmu, sigma, sigma, 2.0);
                CHECK(closed == Approx(quad).margin(1e-6));
            }
    }

    SECTION("monotonicity") {
        const GaussianSpec base{777.85, 1.3, std::nullopt, std::nullopt};
        double prev = 1.1;
        for (double dmu : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
            const GaussianSpec moved{777.85 + dmu, 1.3, std::nullopt, std::nullopt};
            const double p = resonance_probability(base, moved, 1.0, 1.0);
            CHECK(p <= prev + 1e-14);
            prev = p;
        }
        prev = -0.1;
        for (double tune : {0.0, 0.3, 1.0, 2.0, 5.0, 20.0}) {
            const double p = resonance_probability(base, base, tune, tune);
            CHECK(p >= prev - 1e-14);
            prev = p;
        }
        CHECK(resonance_probability(base, base, 1e4, 1e4) == Approx(1.0).margin(1e-12));
    }

    CHECK_THROWS_AS(resonance_probability(narrow, narrow, -1.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("truncated sampling is exact") {
    const ParamDistributions defaults;

    SECTION("one million fss draws stay non-negative with the right mean") {
        const GaussianSpec spec = defaults.fss;
        double sum = 0.0, sumsq = 0.0;
        int negatives = 0;
        const std::uint64_t n = 1'000'000;
        for (std::uint64_t i = 0; i < n; ++i) {
            RngStream rng(8881, i);
            const double x = spec.sample(rng);
            if (x < 0.0) ++negatives;
            sum += x;
            sumsq += x * x;
        }
        CHECK(negatives == 0);
        const double mean = sum / static_cast<double>(n);
        const double var = sumsq / static_cast<double>(n) - mean * mean;
        const double se = std::sqrt(var / static_cast<double>(n));
        // the comparison target is the truncated mean, not the raw mu
        const double expected = truncated_mean(11.0, 6.5, 0.0);
        CHECK(expected > 11.0);
        CHECK(std::abs(mean - expected) <= 3.0 * se);
    }

    SECTION("zero sigma collapses to the mean") {
        RngStream rng(1, 2);
        GaussianSpec spec{0.3, 0.0, 0.003, std::nullopt};
        CHECK(spec.sample(rng) == 0.3);
    }

    SECTION("fit of sampled data round-trips within statistical error") {
        const GaussianSpec spec{0.5, 0.1, std::nullopt, std::nullopt};
        std::vector<double> samples(50'000);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            RngStream rng(31415, i);
            samples[i] = spec.sample(rng);
        }
        const auto fit = fit_gaussian(samples);
        CHECK(fit.spec.mu == Approx(0.5).margin(3.0 * 0.1 / std::sqrt(50'000.0)));
        CHECK(fit.spec.sigma == Approx(0.1).margin(0.002));
    }
}

TEST_CASE("default parameter distributions") {
    const ParamDistributions d;
    CHECK(d.wavelength_x.mu == Approx(777.85));
    CHECK(d.wavelength_x.sigma == Approx(2.19));
    CHECK(d.fss.mu == Approx(11.0));
    CHECK(d.fss.sigma == Approx(6.5));
    CHECK(d.fss.lower == 0.0);
    CHECK(d.t1_x.mu == Approx(0.300));
    CHECK(d.t1_x.sigma == Approx(0.050));
    CHECK(d.t1_xx.mu == Approx(0.150));
    CHECK(d.t1_xx.sigma == Approx(0.025));
    CHECK(d.t2_star.mu == Approx(0.5));
    CHECK(d.t2_star.sigma == Approx(0.25));
    CHECK_NOTHROW(d.validate());

    RngStream rng(17, 4);
    for (int i = 0; i < 1000; ++i) {
        const QdParams p = d.sample(rng);
        CHECK_NOTHROW(p.validate());
        CHECK(p.fss_uev >= 0.0);
        CHECK(p.t1_x_ns > 0.0);
    }
}
