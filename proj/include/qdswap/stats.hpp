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
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qdswap/qd_params.hpp"
#include "qdswap/rng.hpp"

namespace qdswap {

inline double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

/// Gaussian with optional truncation bounds. Sampling rejects draws outside
/// the bounds, so truncated distributions have no pile-up at the edges.
struct GaussianSpec {
    double mu = 0.0;
    double sigma = 0.0;
    std::optional<double> lower;
    std::optional<double> upper;

    void validate() const {
        if (!(sigma >= 0.0)) throw std::invalid_argument("GaussianSpec: sigma must be >= 0");
        if (lower && upper && !(*lower < *upper))
            throw std::invalid_argument("GaussianSpec: lower must be < upper");
    }

    double sample(RngStream& rng) const {
        return rng.truncated_normal(mu, sigma,
                                    lower.value_or(-std::numeric_limits<double>::infinity()),
                                    upper.value_or(std::numeric_limits<double>::infinity()));
    }
};

/// Probability density of the (possibly truncated) Gaussian at x. Truncation
/// renormalizes the density over the retained interval.
inline double gaussian_pdf(const GaussianSpec& spec, double x) {
    spec.validate();
    if (!(spec.sigma > 0.0))
        throw std::domain_error("gaussian_pdf: sigma must be > 0 for a density");
    const double lo = spec.lower.value_or(-std::numeric_limits<double>::infinity());
    const double hi = spec.upper.value_or(std::numeric_limits<double>::infinity());
    if (x < lo || x > hi) return 0.0;
    const double z = (x - spec.mu) / spec.sigma;
    const double base = std::exp(-0.5 * z * z) /
                        (std::sqrt(2.0 * std::numbers::pi) * spec.sigma);
    double mass = 1.0;
    if (spec.lower || spec.upper)
        mass = normal_cdf((hi - spec.mu) / spec.sigma) -
               normal_cdf((lo - spec.mu) / spec.sigma);
    return base / mass;
}

struct GaussianFit {
    GaussianSpec spec;
    std::size_t n_samples = 0;
};

/// Maximum-likelihood Gaussian fit (population sigma, untruncated even when
/// the generating spec was truncated; the resulting bias mirrors a plain
/// histogram fit).
inline GaussianFit fit_gaussian(const std::vector<double>& samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("fit_gaussian: need at least 2 samples");
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(samples.size());
    double var = 0.0;
    for (double x : samples) var += (x - mean) * (x - mean);
    var /= static_cast<double>(samples.size());
    return {GaussianSpec{mean, std::sqrt(var), std::nullopt, std::nullopt}, samples.size()};
}

/// Probability that two devices can be tuned into resonance, i.e. that the
/// wavelength gap does not exceed the combined tuning reach:
/// P(|l_A - l_B| <= tune_a + tune_b) with l_A - l_B ~ Normal(mu_A - mu_B,
/// sigma_A^2 + sigma_B^2).
inline double resonance_probability(const GaussianSpec& a, const GaussianSpec& b,
                                    double tune_a, double tune_b) {
    if (!(tune_a >= 0.0) || !(tune_b >= 0.0))
        throw std::invalid_argument("resonance_probability: tuning ranges must be >= 0");
    a.validate();
    b.validate();
    const double delta = tune_a + tune_b;
    const double dmu = a.mu - b.mu;
    const double sigma_d = std::hypot(a.sigma, b.sigma);
    if (sigma_d == 0.0) return std::abs(dmu) <= delta ? 1.0 : 0.0;
    return normal_cdf((delta - dmu) / sigma_d) - normal_cdf((-delta - dmu) / sigma_d);
}

/// Per-parameter population distributions of one device. Defaults carry the
/// model's initial values; lifetimes and dephasing are truncated at 1% of
/// their mean, the fine structure at zero.
struct ParamDistributions {
    GaussianSpec wavelength_x{777.85, 2.19, std::nullopt, std::nullopt};  // nm
    GaussianSpec fss{11.0, 6.5, 0.0, std::nullopt};                       // ueV
    GaussianSpec t1_x{0.300, 0.050, 0.003, std::nullopt};                 // ns
    GaussianSpec t1_xx{0.150, 0.025, 0.0015, std::nullopt};               // ns
    GaussianSpec t2_star{0.5, 0.25, 0.005, std::nullopt};                 // ns

    void validate() const {
        wavelength_x.validate();
        fss.validate();
        t1_x.validate();
        t1_xx.validate();
        t2_star.validate();
    }

    /// Draws one device; the draw order is part of the determinism contract.
    QdParams sample(RngStream& rng) const {
        QdParams p;
        p.wavelength_x_nm = wavelength_x.sample(rng);
        p.fss_uev = fss.sample(rng);
        p.t1_x_ns = t1_x.sample(rng);
        p.t1_xx_ns = t1_xx.sample(rng);
        p.t2_star_ns = t2_star.sample(rng);
        return p;
    }
};

}  // namespace qdswap
