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
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>
#include <utility>

#include "qdswap/ket.hpp"

namespace qdswap {

/// Complex square matrix over the fixed polarization basis. Two- and
/// four-photon states have dimension 4 or 16; dimension 2 is allowed so
/// single-photon operators can appear as tensor factors. Physical states are
/// Hermitian, unit-trace and positive semidefinite; helpers below check and
/// restore those properties for reconstructed input.
class DensityMatrix {
  public:
    explicit DensityMatrix(int dim) : m_(Eigen::MatrixXcd::Zero(check_dim(dim), dim)) {}

    explicit DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols())
            throw std::invalid_argument("DensityMatrix: matrix must be square");
        check_dim(static_cast<int>(m_.rows()));
    }

    /// |k><k| (no normalization of k applied; pass a unit ket for a state).
    static DensityMatrix pure(const Ket& k) {
        return DensityMatrix(Eigen::MatrixXcd(k.vec() * k.vec().adjoint()));
    }

    static DensityMatrix maximally_mixed(int dim) {
        DensityMatrix rho(dim);
        rho.m_ = Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
        return rho;
    }

    int dim() const { return static_cast<int>(m_.rows()); }

    const Eigen::MatrixXcd& mat() const { return m_; }
    Eigen::MatrixXcd& mat() { return m_; }

    Complex operator()(int r, int c) const { return m_(r, c); }
    Complex& operator()(int r, int c) { return m_(r, c); }

    Complex trace() const { return m_.trace(); }

    bool is_hermitian(double tol = 1e-12) const {
        return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }

    /// Eigenvalues ascending; requires a (numerically) Hermitian matrix.
    Eigen::VectorXd eigenvalues() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
        return es.eigenvalues();
    }

    double min_eigenvalue() const { return eigenvalues().minCoeff(); }

    DensityMatrix normalized() const {
        const double tr = m_.trace().real();
        if (tr <= 0.0) throw std::domain_error("DensityMatrix::normalized: trace <= 0");
        return DensityMatrix(Eigen::MatrixXcd(m_ / tr));
    }

    /// Clips negative eigenvalues to zero and renormalizes the trace.
    DensityMatrix clipped_psd() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_);
        Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
        const double tr = ev.sum();
        if (tr <= 0.0) throw std::domain_error("DensityMatrix::clipped_psd: no positive weight");
        Eigen::MatrixXcd out = es.eigenvectors() * (ev / tr).asDiagonal() *
                               es.eigenvectors().adjoint();
        return DensityMatrix(std::move(out));
    }

    DensityMatrix& operator+=(const DensityMatrix& other) {
        if (other.dim() != dim())
            throw std::invalid_argument("DensityMatrix: dimension mismatch");
        m_ += other.m_;
        return *this;
    }

    friend DensityMatrix operator*(double w, const DensityMatrix& rho) {
        return DensityMatrix(Eigen::MatrixXcd(w * rho.m_));
    }

  private:
    static int check_dim(int dim) {
        if (!valid_ket_dim(dim))
            throw std::invalid_argument("DensityMatrix: dimension must be 2, 4 or 16");
        return dim;
    }

    Eigen::MatrixXcd m_;
};

/// Kronecker product of density matrices, photon order as in tensor(Ket,Ket).
inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    const int dim = a.dim() * b.dim();
    if (dim > kDimQuad) throw std::invalid_argument("tensor: dimension overflow");
    Eigen::MatrixXcd out(dim, dim);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            out.block(i * b.dim(), j * b.dim(), b.dim(), b.dim()) = a(i, j) * b.mat();
    return DensityMatrix(std::move(out));
}

/// <target|rho|target>, real and clamped to [0,1]. Target must be unit norm.
inline double fidelity(const DensityMatrix& rho, const Ket& target) {
    if (rho.dim() != target.dim())
        throw std::invalid_argument("fidelity: dimension mismatch");
    const Complex v = target.vec().dot(rho.mat() * target.vec());
    return std::clamp(v.real(), 0.0, 1.0);
}

}  // namespace qdswap
