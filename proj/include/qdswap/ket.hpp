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
#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <utility>

#include "qdswap/basis.hpp"

namespace qdswap {

using Complex = std::complex<double>;

inline bool valid_ket_dim(int dim) {
    return dim == kDimSingle || dim == kDimPair || dim == kDimQuad;
}

/// Polarization state vector over 1, 2 or 4 photons (dimension 2, 4 or 16),
/// amplitudes ordered per basis.hpp. The norm may be below 1 for
/// post-projection states; squared_norm() then carries the projection
/// probability.
class Ket {
  public:
    explicit Ket(int dim) : amps_(Eigen::VectorXcd::Zero(check_dim(dim))) {}

    explicit Ket(Eigen::VectorXcd amps) : amps_(std::move(amps)) {
        check_dim(static_cast<int>(amps_.size()));
    }

    Ket(std::initializer_list<Complex> amps)
        : amps_(Eigen::Map<const Eigen::VectorXcd>(amps.begin(),
                                                   static_cast<Eigen::Index>(amps.size()))) {
        check_dim(static_cast<int>(amps.size()));
    }

    int dim() const { return static_cast<int>(amps_.size()); }

    Complex operator[](int i) const { return amps_(i); }
    Complex& operator[](int i) { return amps_(i); }

    const Eigen::VectorXcd& vec() const { return amps_; }
    Eigen::VectorXcd& vec() { return amps_; }

    double squared_norm() const { return amps_.squaredNorm(); }
    double norm() const { return amps_.norm(); }

    /// <this|other>
    Complex inner(const Ket& other) const {
        if (other.dim() != dim())
            throw std::invalid_argument("Ket::inner: dimension mismatch");
        return amps_.dot(other.amps_);
    }

    Ket normalized() const {
        const double n = norm();
        if (n <= 0.0) throw std::domain_error("Ket::normalized: zero norm");
        return Ket(Eigen::VectorXcd(amps_ / n));
    }

  private:
    static int check_dim(int dim) {
        if (!valid_ket_dim(dim))
            throw std::invalid_argument("Ket: dimension must be 2, 4 or 16");
        return dim;
    }

    Eigen::VectorXcd amps_;
};

enum class BellKind { phi_plus, phi_minus, psi_plus, psi_minus };

inline const char* to_string(BellKind k) {
    switch (k) {
        case BellKind::phi_plus: return "phi_plus";
        case BellKind::phi_minus: return "phi_minus";
        case BellKind::psi_plus: return "psi_plus";
        case BellKind::psi_minus: return "psi_minus";
    }
    return "?";
}

/// Unit-norm two-photon Bell state in the fixed HH,HV,VH,VV order.
inline Ket bell_state(BellKind kind) {
    const double r = std::numbers::sqrt2 / 2.0;
    switch (kind) {
        case BellKind::phi_plus: return Ket{r, 0.0, 0.0, r};
        case BellKind::phi_minus: return Ket{r, 0.0, 0.0, -r};
        case BellKind::psi_plus: return Ket{0.0, r, r, 0.0};
        case BellKind::psi_minus: return Ket{0.0, r, -r, 0.0};
    }
    throw std::invalid_argument("bell_state: unknown kind");
}

/// Kronecker product in photon order: photons of `a` precede photons of `b`.
inline Ket tensor(const Ket& a, const Ket& b) {
    const int dim = a.dim() * b.dim();
    if (dim > kDimQuad) throw std::invalid_argument("tensor: dimension overflow");
    Eigen::VectorXcd out(dim);
    for (int i = 0; i < a.dim(); ++i)
        out.segment(i * b.dim(), b.dim()) = a[i] * b.vec();
    return Ket(std::move(out));
}

/// Partial inner product <bell(2,3)|state(1..4)>: contracts photons 2 and 3
/// of a 16-dim state with a two-photon Bell ket, leaving an un-normalized
/// residual over photons (1,4). Its squared norm is the projection
/// probability; no normalization constant is dropped.
inline Ket project(const Ket& bell, const Ket& state,
                   std::pair<int, int> slots = {2, 3}) {
    if (slots != std::pair<int, int>{2, 3})
        throw std::invalid_argument("project: only slots (2,3) are supported");
    if (bell.dim() != kDimPair || state.dim() != kDimQuad)
        throw std::invalid_argument("project: expected 4-dim bell and 16-dim state");
    Ket out(kDimPair);
    for (int p1 = 0; p1 < 2; ++p1)
        for (int p4 = 0; p4 < 2; ++p4) {
            Complex acc{0.0, 0.0};
            for (int p2 = 0; p2 < 2; ++p2)
                for (int p3 = 0; p3 < 2; ++p3)
                    acc += std::conj(bell[pair_index(p2, p3)]) *
                           state[quad_index(p1, p2, p3, p4)];
            out[pair_index(p1, p4)] = acc;
        }
    return out;
}

}  // namespace qdswap
