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

#include <stdexcept>

namespace qdswap {

/// Physical parameters of one quantum-dot source.
///
/// The coherence time T2 is derived, 1/T2 = 1/(2*T1) + 1/T2star, so
/// T2 <= 2*T1 always holds. One t2_star is shared by the X and XX
/// transitions.
struct QdParams {
    double wavelength_x_nm = 777.85;
    double fss_uev = 11.0;    ///< exciton fine-structure splitting S
    double t1_x_ns = 0.300;   ///< X radiative lifetime
    double t1_xx_ns = 0.150;  ///< XX radiative lifetime
    double t2_star_ns = 0.5;  ///< pure dephasing time
    double on_fraction = 1.0; ///< fraction of time the emitter is optically active

    void validate() const {
        if (!(wavelength_x_nm > 0.0))
            throw std::invalid_argument("QdParams: wavelength_x_nm must be > 0");
        if (!(fss_uev >= 0.0))
            throw std::invalid_argument("QdParams: fss_uev must be >= 0");
        if (!(t1_x_ns > 0.0))
            throw std::invalid_argument("QdParams: t1_x_ns must be > 0");
        if (!(t1_xx_ns > 0.0))
            throw std::invalid_argument("QdParams: t1_xx_ns must be > 0");
        if (!(t2_star_ns > 0.0))
            throw std::invalid_argument("QdParams: t2_star_ns must be > 0");
        if (!(on_fraction >= 0.0 && on_fraction <= 1.0))
            throw std::invalid_argument("QdParams: on_fraction must be in [0,1]");
    }
};

/// Coherence time from radiative lifetime and pure dephasing.
inline double derived_t2(double t1_ns, double t2_star_ns) {
    if (!(t1_ns > 0.0) || !(t2_star_ns > 0.0))
        throw std::invalid_argument("derived_t2: lifetimes must be > 0");
    return 1.0 / (1.0 / (2.0 * t1_ns) + 1.0 / t2_star_ns);
}

}  // namespace qdswap
