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

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdswap/cascade.hpp"
#include "qdswap/density_matrix.hpp"
#include "qdswap/qd_params.hpp"
#include "qdswap/rng.hpp"

namespace qdswap {

namespace tomo {

/// Single-photon analyzer states. R = (|H> + i|V>)/sqrt(2), L its conjugate.
inline Eigen::Vector2cd analyzer_ket(char label) {
    const double r = std::numbers::sqrt2 / 2.0;
    switch (label) {
        case 'H': return {Complex{1.0, 0.0}, Complex{0.0, 0.0}};
        case 'V': return {Complex{0.0, 0.0}, Complex{1.0, 0.0}};
        case 'D': return {Complex{r, 0.0}, Complex{r, 0.0}};
        case 'A': return {Complex{r, 0.0}, Complex{-r, 0.0}};
        case 'R': return {Complex{r, 0.0}, Complex{0.0, r}};
        case 'L': return {Complex{r, 0.0}, Complex{0.0, -r}};
        default: throw std::invalid_argument("analyzer_ket: unknown label");
    }
}

/// Rank-1 two-photon projector |pq><pq| for a label like "DV".
inline Eigen::Matrix4cd pair_projector(const std::string& label) {
    if (label.size() != 2)
        throw std::invalid_argument("pair_projector: label must have two characters");
    const Eigen::Vector2cd k1 = analyzer_ket(label[0]);
    const Eigen::Vector2cd k2 = analyzer_ket(label[1]);
    Eigen::Vector4cd k;
    k << k1(0) * k2(0), k1(0) * k2(1), k1(1) * k2(0), k1(1) * k2(1);
    return k * k.adjoint();
}

}  // namespace tomo

enum class BasisSet { minimal16, full36 };

struct Projector {
    std::string label;
    Eigen::Matrix4cd op;
};

/// Set of polarization-resolved coincidence settings. The 16-setting
/// {H,V,D,R}x{H,V,D,R} set is informationally complete and inverts exactly;
/// the 36-setting {H,V,D,A,R,L}^2 set is over-complete and reconstructed by
/// least squares.
struct MeasurementBasis {
    BasisSet kind = BasisSet::minimal16;
    std::vector<Projector> projectors;

    static MeasurementBasis make(BasisSet kind) {
        static const std::string minimal = "HVDR";
        static const std::string full = "HVDARL";
        const std::string& letters = (kind == BasisSet::minimal16) ? minimal : full;
        MeasurementBasis basis;
        basis.kind = kind;
        for (char c1 : letters)
            for (char c2 : letters) {
                const std::string label{c1, c2};
                basis.projectors.push_back({label, tomo::pair_projector(label)});
            }
        return basis;
    }

    static MeasurementBasis minimal16() { return make(BasisSet::minimal16); }
    static MeasurementBasis full36() { return make(BasisSet::full36); }
};

/// One coincidence setting of a tomography run. For noiseless runs the
/// observation is the real-valued expected rate; with noise enabled it is
/// the Poisson-sampled integer count.
struct CoincidenceRecord {
    std::string basis_label;
    int basis_index = 0;
    double expected_rate = 0.0;
    std::uint64_t counts = 0;
    bool noisy = false;
    double gate_ns = std::numeric_limits<double>::infinity();  ///< inf = ungated

    double observed() const { return noisy ? static_cast<double>(counts) : expected_rate; }
};

/// Time-averaged pair state of one cascade source within a gate window:
/// ones on the HH/VV diagonal halves and the gated coherence factor on the
/// HH-VV corner.
inline DensityMatrix gated_pair_density(double fss_uev, double t1_x_ns,
                                        std::optional<double> gate_ns = std::nullopt) {
    const Complex c = coherence_factor(fss_uev, t1_x_ns, gate_ns);
    DensityMatrix rho(kDimPair);
    rho(0, 0) = 0.5;
    rho(3, 3) = 0.5;
    rho(0, 3) = 0.5 * std::conj(c);
    rho(3, 0) = 0.5 * c;
    return rho;
}

/// Forward-simulates coincidence counts for an arbitrary two-photon state.
/// Expected rate per setting: shots * Tr(Pi rho) * acceptance. Poisson noise
/// is seeded per record; noiseless records keep the exact real-valued rate.
inline std::vector<CoincidenceRecord> forward_counts(
    const DensityMatrix& rho, double shots, bool noise, std::uint64_t seed,
    const MeasurementBasis& basis = MeasurementBasis::minimal16(),
    double acceptance = 1.0,
    double gate_ns = std::numeric_limits<double>::infinity()) {
    if (!(shots >= 0.0)) throw std::invalid_argument("forward_counts: shots must be >= 0");
    if (rho.dim() != kDimPair)
        throw std::invalid_argument("forward_counts: state must be two-photon (dim 4)");
    std::vector<CoincidenceRecord> records;
    records.reserve(basis.projectors.size());
    for (std::size_t i = 0; i < basis.projectors.size(); ++i) {
        CoincidenceRecord rec;
        rec.basis_label = basis.projectors[i].label;
        rec.basis_index = static_cast<int>(i);
        rec.gate_ns = gate_ns;
        const double prob =
            std::max(0.0, (basis.projectors[i].op * rho.mat()).trace().real());
        rec.expected_rate = shots * prob * acceptance;
        rec.noisy = noise;
        if (noise) {
            RngStream rng(seed, i);
            rec.counts = rng.poisson(rec.expected_rate);
        } else {
            rec.counts = static_cast<std::uint64_t>(std::llround(rec.expected_rate));
        }
        records.push_back(std::move(rec));
    }
    return records;
}

/// Forward simulation for the gated pair state of one cascade source.
/// Gating trades counts for coherence: the acceptance P(t <= gate) scales
/// every rate while the state's coherence factor grows as the gate shrinks.
inline std::vector<CoincidenceRecord> forward_counts(
    const QdParams& src, std::optional<double> gate_ns, double shots, bool noise,
    std::uint64_t seed, const MeasurementBasis& basis = MeasurementBasis::minimal16()) {
    src.validate();
    const DensityMatrix rho = gated_pair_density(src.fss_uev, src.t1_x_ns, gate_ns);
    const double acceptance = gate_ns ? -std::expm1(-*gate_ns / src.t1_x_ns) : 1.0;
    return forward_counts(rho, shots, noise, seed, basis, acceptance,
                          gate_ns.value_or(std::numeric_limits<double>::infinity()));
}

struct Reconstruction {
    DensityMatrix rho{kDimPair};
    double min_eigenvalue_pre_clip = 0.0;
};

/// Linear-inversion tomography. Solves Tr(Pi_i rho) proportional to the
/// observed rates in the least-squares sense (exact inversion for an
/// informationally complete 16-setting input), Hermitizes, renormalizes the
/// trace, then clips negative eigenvalues and renormalizes again. The
/// smallest pre-clip eigenvalue is reported for diagnostics.
inline Reconstruction reconstruct(const std::vector<CoincidenceRecord>& records) {
    if (records.empty()) throw std::invalid_argument("reconstruct: no records");
    const int n = static_cast<int>(records.size());
    Eigen::MatrixXcd design(n, 16);
    Eigen::VectorXcd observed(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const Eigen::Matrix4cd proj = tomo::pair_projector(records[i].basis_label);
        // Tr(P rho) = <vec(P), vec(rho)> for Hermitian P (column-major vec)
        design.row(i) = Eigen::Map<const Eigen::Vector<Complex, 16>>(proj.data()).adjoint();
        observed(i) = records[i].observed();
        total += records[i].observed();
    }
    if (!(total > 0.0)) throw std::invalid_argument("reconstruct: zero total counts");

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(design);
    if (cod.rank() < 16)
        throw std::invalid_argument("reconstruct: basis set is not informationally complete");
    const Eigen::VectorXcd x = cod.solve(observed);
    Eigen::Matrix4cd raw = Eigen::Map<const Eigen::Matrix4cd>(x.data());
    raw = 0.5 * (raw + raw.adjoint()).eval();
    const double trace = raw.trace().real();
    if (!(std::abs(trace) > 0.0))
        throw std::invalid_argument("reconstruct: traceless solution");
    raw /= trace;

    Reconstruction out;
    DensityMatrix hermitized{Eigen::MatrixXcd(raw)};
    out.min_eigenvalue_pre_clip = hermitized.min_eigenvalue();
    out.rho = hermitized.clipped_psd();
    return out;
}

}  // namespace qdswap
