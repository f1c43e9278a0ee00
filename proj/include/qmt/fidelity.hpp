// Copyright 2026 The qmt-emu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// State quality metrics: overlap fidelity for pure states and the
/// mixed-state fidelity Tr sqrt(sqrt(r) s sqrt(r)) normalized by the
/// traces, plus the Pauli operator basis used by tomography. Matrix square
/// roots go through a Hermitian eigendecomposition with negative
/// eigenvalues clipped at zero, since sampling noise routinely leaves
/// estimates a hair outside the PSD cone.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>

#include "qmt/gates.hpp"
#include "qmt/state_vector.hpp"

namespace qmt {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPsdTolerance = 1e-10;

/// |<a|b>| / (|a| |b|). Scale-invariant in both arguments.
inline double fidelity_pure(const StateVector& a, const StateVector& b) {
    if (a.num_qubits != b.num_qubits) {
        throw std::domain_error("fidelity_pure: dimension mismatch");
    }
    const double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0) {
        throw std::domain_error("fidelity_pure: zero state");
    }
    return std::abs(inner_product(a, b)) / (na * nb);
}

inline Eigen::Matrix2cd to_matrix(const QubitGate& g) {
    Eigen::Matrix2cd m;
    m << g.u00, g.u01, g.u10, g.u11;
    return m;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline ComplexMatrix pure_density(const StateVector& state) {
    const Eigen::Index d = static_cast<Eigen::Index>(state.dimension());
    Eigen::VectorXcd v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = state.amplitudes[i];
    return v * v.adjoint();
}

inline void check_density_matrix(const ComplexMatrix& rho, double tol = kPsdTolerance) {
    if (rho.rows() != rho.cols()) {
        throw std::domain_error("density matrix must be square");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw std::domain_error("density matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (rho + rho.adjoint()),
                                                    Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) {
        throw std::domain_error("density matrix is not positive semi-definite");
    }
    if (rho.trace().real() <= 0.0) {
        throw std::domain_error("density matrix must have positive trace");
    }
}

/// PSD square root via eigendecomposition. Eigenvalues below a relative
/// floor clip to exactly zero: the square root would otherwise amplify
/// solver noise on zero modes from 1e-16 to 1e-8.
inline ComplexMatrix sqrtm_psd(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
    Eigen::VectorXd vals = es.eigenvalues();
    const double floor = 1e-12 * std::max(0.0, vals.maxCoeff());
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        vals(i) = vals(i) > floor ? std::sqrt(vals(i)) : 0.0;
    }
    return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

/// Nearest PSD projection (eigenvalue clipping), optionally renormalized to
/// unit trace.
inline ComplexMatrix clip_to_psd(const ComplexMatrix& m, bool unit_trace) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
    Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
    ComplexMatrix out = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
    if (unit_trace) {
        const double tr = out.trace().real();
        if (tr <= 0.0) {
            throw std::domain_error("clip_to_psd: matrix has no positive part");
        }
        out /= tr;
    }
    return out;
}

/// Trace-normalized mixed-state fidelity,
/// Tr sqrt(sqrt(rho_hat) rho sqrt(rho_hat)) / sqrt(Tr rho Tr rho_hat).
/// Evaluated as the nuclear norm of sqrt(rho_hat)*sqrt(rho), which is the
/// same quantity without the square root of a near-singular product.
/// Reduces to fidelity_pure for rank-one inputs.
inline double fidelity_mixed(const ComplexMatrix& rho_hat, const ComplexMatrix& rho) {
    if (rho_hat.rows() != rho.rows() || rho_hat.cols() != rho.cols()) {
        throw std::domain_error("fidelity_mixed: dimension mismatch");
    }
    check_density_matrix(rho_hat);
    check_density_matrix(rho);
    const ComplexMatrix product = sqrtm_psd(rho_hat) * sqrtm_psd(rho);
    Eigen::JacobiSVD<ComplexMatrix> svd(product);
    const double tr_sqrt = svd.singularValues().sum();
    return tr_sqrt / std::sqrt(rho.trace().real() * rho_hat.trace().real());
}

/// Single-qubit Pauli matrix; index 0..3 is I, X, Y, Z.
inline Eigen::Matrix2cd pauli(int index) {
    Eigen::Matrix2cd m;
    const cplx j{0.0, 1.0};
    switch (index) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -j, j, 0; break;
        case 3: m << 1, 0, 0, -1; break;
        default: throw std::domain_error("pauli: index out of range");
    }
    return m;
}

/// The 16 two-qubit Pauli products sigma_a (x) sigma_b, divided by 2 so the
/// set is orthonormal under the Hilbert-Schmidt inner product. Element
/// 4*a + b carries sigma_a on qubit 1 and sigma_b on qubit 0.
inline std::array<Eigen::Matrix4cd, 16> pauli_hs_basis() {
    std::array<Eigen::Matrix4cd, 16> basis;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            basis[4 * a + b] = kron(pauli(a), pauli(b)) / 2.0;
        }
    }
    return basis;
}

}  // namespace qmt
