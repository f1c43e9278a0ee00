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

/// Plain state-vector simulator. This is the ground truth the signal
/// pipeline is checked against throughout the test suite.
///
/// Bit convention: basis index x encodes qubit i as bit i of x,
/// x = x_0*2^0 + ... + x_{n-1}*2^{n-1}. States need not be normalized;
/// anything that wants probabilities normalizes explicitly.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmt/gates.hpp"

namespace qmt {

struct StateVector {
    int num_qubits = 0;
    std::vector<cplx> amplitudes;

    std::size_t dimension() const { return amplitudes.size(); }
};

inline std::size_t dimension_of(int num_qubits) {
    return std::size_t{1} << num_qubits;
}

inline void check_qubit(const StateVector& state, int qubit, const char* what) {
    if (qubit < 0 || qubit >= state.num_qubits) {
        throw std::domain_error(std::string(what) + ": qubit index " +
                                std::to_string(qubit) + " out of range for " +
                                std::to_string(state.num_qubits) + " qubits");
    }
}

inline StateVector basis_state(std::uint64_t x, int n) {
    if (n < 1) {
        throw std::domain_error("basis_state: need at least one qubit");
    }
    if (x >= dimension_of(n)) {
        throw std::domain_error("basis_state: index " + std::to_string(x) +
                                " out of range for " + std::to_string(n) + " qubits");
    }
    StateVector state{n, std::vector<cplx>(dimension_of(n), cplx{})};
    state.amplitudes[x] = 1.0;
    return state;
}

inline StateVector make_state(int n, std::vector<cplx> amplitudes) {
    if (amplitudes.size() != dimension_of(n)) {
        throw std::domain_error("make_state: amplitude count does not match qubit count");
    }
    return {n, std::move(amplitudes)};
}

inline double squared_norm(const StateVector& state) {
    double total = 0.0;
    for (const cplx& a : state.amplitudes) total += std::norm(a);
    return total;
}

inline double norm(const StateVector& state) { return std::sqrt(squared_norm(state)); }

inline StateVector normalized(const StateVector& state) {
    const double n = norm(state);
    if (n == 0.0) {
        throw std::domain_error("normalized: zero state");
    }
    StateVector out = state;
    for (cplx& a : out.amplitudes) a /= n;
    return out;
}

/// Applies a 2x2 matrix to the addressed qubit, leaving all other qubits
/// untouched. The matrix is used verbatim; unitarity is not enforced here.
inline StateVector apply_gate(const StateVector& state, const QubitGate& g, int target) {
    check_qubit(state, target, "apply_gate");
    StateVector out = state;
    const std::uint64_t bit = std::uint64_t{1} << target;
    for (std::uint64_t x = 0; x < state.dimension(); ++x) {
        if (x & bit) continue;
        const cplx a0 = state.amplitudes[x];
        const cplx a1 = state.amplitudes[x | bit];
        out.amplitudes[x] = g.u00 * a0 + g.u01 * a1;
        out.amplitudes[x | bit] = g.u10 * a0 + g.u11 * a1;
    }
    return out;
}

/// Applies the matrix to the target qubit within the control=1 subspace only.
inline StateVector apply_controlled(const StateVector& state, const QubitGate& g,
                                    int control, int target) {
    check_qubit(state, control, "apply_controlled");
    check_qubit(state, target, "apply_controlled");
    if (control == target) {
        throw std::domain_error("apply_controlled: control equals target");
    }
    StateVector out = state;
    const std::uint64_t cbit = std::uint64_t{1} << control;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    for (std::uint64_t x = 0; x < state.dimension(); ++x) {
        if (!(x & cbit) || (x & tbit)) continue;
        const cplx a0 = state.amplitudes[x];
        const cplx a1 = state.amplitudes[x | tbit];
        out.amplitudes[x] = g.u00 * a0 + g.u01 * a1;
        out.amplitudes[x | tbit] = g.u10 * a0 + g.u11 * a1;
    }
    return out;
}

/// Squared-amplitude weight of the bit=0 and bit=1 subspaces of one qubit.
/// The two weights sum to the squared norm of the state.
inline std::pair<double, double> subspace_weights(const StateVector& state, int qubit) {
    check_qubit(state, qubit, "subspace_weights");
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    double q0 = 0.0, q1 = 0.0;
    for (std::uint64_t x = 0; x < state.dimension(); ++x) {
        (x & bit ? q1 : q0) += std::norm(state.amplitudes[x]);
    }
    return {q0, q1};
}

inline cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_qubits != b.num_qubits) {
        throw std::domain_error("inner_product: dimension mismatch");
    }
    cplx acc{};
    for (std::size_t x = 0; x < a.dimension(); ++x) {
        acc += std::conj(a.amplitudes[x]) * b.amplitudes[x];
    }
    return acc;
}

/// Unnormalized collapse: zeroes every amplitude whose addressed qubit
/// differs from `bit`.
inline StateVector project(const StateVector& state, int qubit, int bit) {
    check_qubit(state, qubit, "project");
    StateVector out = state;
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    for (std::uint64_t x = 0; x < state.dimension(); ++x) {
        if (static_cast<int>((x & mask) != 0) != bit) out.amplitudes[x] = cplx{};
    }
    return out;
}

/// Normalized Born probabilities over the 2^n outcomes.
inline std::vector<double> born_distribution(const StateVector& state) {
    const double total = squared_norm(state);
    if (total <= 0.0) {
        throw std::domain_error("born_distribution: zero state");
    }
    std::vector<double> p(state.dimension());
    for (std::size_t x = 0; x < state.dimension(); ++x) {
        p[x] = std::norm(state.amplitudes[x]) / total;
    }
    return p;
}

}  // namespace qmt
