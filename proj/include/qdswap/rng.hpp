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
#include <numbers>
#include <stdexcept>

namespace qdswap {

namespace detail {

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

}  // namespace detail

/// Counter-derived random stream keyed by (seed, stream index).
///
/// Each Monte Carlo sample owns its stream, so results are independent of
/// execution order and worker count. All transforms are implemented here
/// rather than via std:: distributions, whose output is not pinned by the
/// standard; a given (seed, index, call sequence) always yields the same
/// values.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t index)
        : state_(detail::mix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return detail::mix64(state_);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Exponential with the given mean; mean > 0.
    double exponential(double mean) {
        // 1 - u in (0, 1], so the log is finite
        return -mean * std::log1p(-uniform());
    }

    /// Standard normal via Box-Muller.
    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mu, double sigma) { return mu + sigma * normal(); }

    /// Normal restricted to [lo, hi] by exact rejection (no clipping pile-up).
    /// sigma == 0 returns mu, which must lie within the bounds.
    double truncated_normal(double mu, double sigma, double lo, double hi) {
        if (sigma == 0.0) {
            if (mu < lo || mu > hi)
                throw std::domain_error("truncated_normal: mu outside bounds with sigma=0");
            return mu;
        }
        for (int i = 0; i < 100000000; ++i) {
            const double x = normal(mu, sigma);
            if (x >= lo && x <= hi) return x;
        }
        throw std::runtime_error("truncated_normal: rejection sampling did not terminate");
    }

    /// Poisson draw; exact (Knuth) for small rates, normal approximation above.
    std::uint64_t poisson(double lambda) {
        if (!(lambda > 0.0)) return 0;
        if (lambda < 64.0) {
            const double limit = std::exp(-lambda);
            std::uint64_t k = 0;
            double p = 1.0;
            do {
                ++k;
                p *= uniform();
            } while (p > limit);
            return k - 1;
        }
        const double x = std::llround(lambda + std::sqrt(lambda) * normal());
        return x < 0.0 ? 0 : static_cast<std::uint64_t>(x);
    }

  private:
    std::uint64_t state_;
};

}  // namespace qdswap
