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

namespace qdswap {

/// Physical constants in the unit system used throughout the library:
/// energies in ueV, times in ns, lengths in nm. Single source of truth.
struct PhysConstants {
    static constexpr double hbar_uev_ns = 0.6582119569;  // reduced Planck constant
    static constexpr double hc_uev_nm = 1.23984198e9;    // Planck constant times c
};

inline constexpr double kHbar = PhysConstants::hbar_uev_ns;
inline constexpr double kHc = PhysConstants::hc_uev_nm;

}  // namespace qdswap
