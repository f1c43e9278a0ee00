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

/// Measurement gates: subspace RMS power, Born probabilities computed from
/// the partial-projection powers, a uniform-draw comparator for the bit
/// decision, and the collapse switch that selects the unnormalized
/// projected signal. Full-register measurement threads the collapsed
/// signal through one qubit at a time.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmt/projection.hpp"

namespace qmt {

/// Mean squared magnitude over the signal duration, q = (1/T) int |psi|^2.
inline double rms_power(const TonalSignal& s) {
    double total = 0.0;
    for (const auto& [k, c] : s.coefficients) total += std::norm(c);
    return total;
}

inline double rms_power(const SampledSignal& s) {
    double total = 0.0;
    for (const cplx& v : s.samples) total += std::norm(v);
    return total / static_cast<double>(s.samples.size());
}

/// The single-rail shortcut: (1/T) int (Re psi + Im psi)^2. Equals
/// rms_power plus the cross term Im(sum_k c_k c_{-k}), so it matches the
/// true power only when the DC part of psi^2 is real. Kept as a
/// diagnostic; probabilities are always computed from rms_power.
inline double rms_sum_trick(const TonalSignal& s) {
    cplx dc_of_square{};
    for (const auto& [k, c] : s.coefficients) {
        auto it = s.coefficients.find(-k);
        if (it != s.coefficients.end()) dc_of_square += c * it->second;
    }
    return rms_power(s) + dc_of_square.imag();
}

inline double rms_sum_trick(const SampledSignal& s) {
    double total = 0.0;
    for (const cplx& v : s.samples) {
        const double rail_sum = v.real() + v.imag();
        total += rail_sum * rail_sum;
    }
    return total / static_cast<double>(s.samples.size());
}

/// RMS powers of the two partial-projection branches of one qubit.
template <class Signal>
std::pair<double, double> subspace_power(const Signal& s, const FrequencyLayout& layout,
                                         int qubit, const CombModel& comb = {}) {
    const PartialProjection<Signal> pp = partial_project(s, layout, qubit, comb);
    return {rms_power(pp.psi0), rms_power(pp.psi1)};
}

/// Born probabilities p0 = q0/(q0+q1), p1 = 1-p0.
template <class Signal>
std::pair<double, double> born_probability(const Signal& s, const FrequencyLayout& layout,
                                           int qubit, const CombModel& comb = {}) {
    const auto [q0, q1] = subspace_power(s, layout, qubit, comb);
    const double total = q0 + q1;
    if (total <= 0.0) {
        throw std::domain_error("born_probability: signal has no power on the qubit band");
    }
    const double p0 = q0 / total;
    return {p0, 1.0 - p0};
}

template <class Signal>
struct MeasureOutcome {
    int bit = 0;
    double p0 = 0.0;
    /// Unnormalized collapsed signal (the projector output, no rescaling).
    Signal collapsed;
};

/// Comparator measurement: bit = 1 exactly when u > p0. The degenerate
/// branches p0 = 0 and p0 = 1 resolve by the same comparison, so no
/// division or zero-power branch selection can occur for u in (0, 1).
template <class Signal>
MeasureOutcome<Signal> measure_qubit(const Signal& s, const FrequencyLayout& layout,
                                     int qubit, double u, const CombModel& comb = {}) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw std::domain_error("measure_qubit: comparator input must be in [0, 1]");
    }
    PartialProjection<Signal> pp = partial_project(s, layout, qubit, comb);
    const double q0 = rms_power(pp.psi0);
    const double q1 = rms_power(pp.psi1);
    if (q0 + q1 <= 0.0) {
        throw std::domain_error("measure_qubit: signal has no power on the qubit band");
    }
    const double p0 = q0 / (q0 + q1);
    MeasureOutcome<Signal> out;
    out.bit = u > p0 ? 1 : 0;
    out.p0 = p0;
    out.collapsed = out.bit == 0 ? shifted(pp.psi0, +pp.carrier)
                                 : shifted(pp.psi1, -pp.carrier);
    return out;
}

/// One full-register measurement record. Step k measured qubit order[k]
/// with comparator draw u_draws[k] against probability p0s[k].
struct MeasurementShot {
    std::vector<int> order;
    std::vector<int> bits;
    std::vector<double> u_draws;
    std::vector<double> p0s;

    /// Basis index assembled from the recorded bits; if a qubit was
    /// measured more than once, the latest result wins.
    std::uint64_t outcome() const {
        std::uint64_t x = 0;
        for (std::size_t k = 0; k < order.size(); ++k) {
            const std::uint64_t bit = std::uint64_t{1} << order[k];
            if (bits[k]) {
                x |= bit;
            } else {
                x &= ~bit;
            }
        }
        return x;
    }
};

inline std::vector<int> ascending_order(int num_qubits) {
    std::vector<int> order(num_qubits);
    for (int i = 0; i < num_qubits; ++i) order[i] = i;
    return order;
}

/// Sequential measurement of every qubit, threading the collapsed signal.
/// Default order is ascending qubit index; any permutation is accepted and
/// recorded in the shot.
template <class Signal>
std::pair<MeasurementShot, Signal> measure_all(const Signal& s, const FrequencyLayout& layout,
                                               std::span<const double> u,
                                               std::vector<int> order = {},
                                               const CombModel& comb = {}) {
    if (order.empty()) order = ascending_order(layout.num_qubits());
    if (u.size() != order.size()) {
        throw std::domain_error("measure_all: need one comparator draw per measured qubit");
    }
    MeasurementShot shot;
    Signal current = s;
    for (std::size_t step = 0; step < order.size(); ++step) {
        MeasureOutcome<Signal> m = measure_qubit(current, layout, order[step], u[step], comb);
        shot.order.push_back(order[step]);
        shot.bits.push_back(m.bit);
        shot.u_draws.push_back(u[step]);
        shot.p0s.push_back(m.p0);
        current = std::move(m.collapsed);
    }
    return {std::move(shot), std::move(current)};
}

}  // namespace qmt
