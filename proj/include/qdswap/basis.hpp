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

/// Polarization basis ordering used by every module.
///
/// Single photon:  H = 0, V = 1.
/// Two photons:    HH, HV, VH, VV        (photon 1 in the most significant slot).
/// Four photons:   HHHH ... VVVV, photons 1..4 from most to least significant.
///
/// Projection sign conventions depend on this ordering; do not reorder.
enum class Pol : int { H = 0, V = 1 };

inline constexpr int kDimSingle = 2;
inline constexpr int kDimPair = 4;
inline constexpr int kDimQuad = 16;

constexpr int pair_index(int p1, int p2) { return p1 * 2 + p2; }

constexpr int quad_index(int p1, int p2, int p3, int p4) {
    return ((p1 * 2 + p2) * 2 + p3) * 2 + p4;
}

}  // namespace qdswap
