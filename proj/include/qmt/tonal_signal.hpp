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

/// Exact frequency-domain signal: a finite map from integer frequency index
/// (units of w0) to complex amplitude. The signal's value at time t is
/// sum_k c_k * e^{j k w0 t}. This is the primary backend: every operation
/// on it is sparse algebra with no sampling error.

#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "qmt/frequency_layout.hpp"
#include "qmt/state_vector.hpp"

namespace qmt {

struct TonalSignal {
    double omega0 = 2.0 * std::numbers::pi * kDefaultBaseFrequencyHz;
    // Canonical sparse form: no stored coefficient is exactly zero.
    std::map<int, cplx> coefficients;

    cplx coefficient(int k) const {
        auto it = coefficients.find(k);
        return it == coefficients.end() ? cplx{} : it->second;
    }
};

namespace detail {

inline void accumulate(TonalSignal& s, int k, cplx c) {
    auto [it, inserted] = s.coefficients.try_emplace(k, c);
    if (!inserted) it->second += c;
    if (it->second == cplx{}) s.coefficients.erase(it);
}

inline void check_same_family(const TonalSignal& a, const TonalSignal& b, const char* what) {
    if (a.omega0 != b.omega0) {
        throw std::domain_error(std::string(what) + ": incommensurate base frequencies");
    }
}

}  // namespace detail

/// The pure tonal e^{j k w0 t}.
inline TonalSignal unit_tonal(int k, double omega0) {
    TonalSignal s;
    s.omega0 = omega0;
    s.coefficients.emplace(k, cplx{1.0, 0.0});
    return s;
}

inline TonalSignal add(const TonalSignal& a, const TonalSignal& b) {
    detail::check_same_family(a, b, "add");
    TonalSignal out = a;
    for (const auto& [k, c] : b.coefficients) detail::accumulate(out, k, c);
    return out;
}

inline TonalSignal scaled(const TonalSignal& a, cplx factor) {
    TonalSignal out;
    out.omega0 = a.omega0;
    if (factor == cplx{}) return out;
    for (const auto& [k, c] : a.coefficients) {
        const cplx v = c * factor;
        if (v != cplx{}) out.coefficients.emplace(k, v);
    }
    return out;
}

/// Multiplication by e^{j dk w0 t}: every frequency index moves by dk.
inline TonalSignal shifted(const TonalSignal& a, int dk) {
    TonalSignal out;
    out.omega0 = a.omega0;
    for (const auto& [k, c] : a.coefficients) out.coefficients.emplace(k + dk, c);
    return out;
}

/// Pointwise product of the two time-domain signals; in the frequency
/// domain this is the convolution of the coefficient maps. Serves as the
/// tensor product between qubit signals.
inline TonalSignal multiply(const TonalSignal& a, const TonalSignal& b) {
    detail::check_same_family(a, b, "multiply");
    TonalSignal out;
    out.omega0 = a.omega0;
    for (const auto& [ka, ca] : a.coefficients) {
        for (const auto& [kb, cb] : b.coefficients) {
            detail::accumulate(out, ka + kb, ca * cb);
        }
    }
    return out;
}

/// (1/T) integral of conj(a)*b over one fundamental period.
inline cplx inner_product(const TonalSignal& a, const TonalSignal& b) {
    detail::check_same_family(a, b, "inner_product");
    // Iterate the sparser map.
    const TonalSignal& lhs = a.coefficients.size() <= b.coefficients.size() ? a : b;
    const TonalSignal& rhs = &lhs == &a ? b : a;
    cplx acc{};
    for (const auto& [k, c] : lhs.coefficients) {
        auto it = rhs.coefficients.find(k);
        if (it == rhs.coefficients.end()) continue;
        acc += &lhs == &a ? std::conj(c) * it->second : std::conj(it->second) * c;
    }
    return acc;
}

/// Signal value at time t.
inline cplx value_at(const TonalSignal& s, double t) {
    cplx acc{};
    for (const auto& [k, c] : s.coefficients) {
        acc += c * std::polar(1.0, k * s.omega0 * t);
    }
    return acc;
}

/// Places amplitude alpha_x on the basis frequency of every x.
inline TonalSignal synthesize(const StateVector& state, const FrequencyLayout& layout) {
    if (state.dimension() != layout.dimension()) {
        throw std::domain_error("synthesize: state dimension does not match layout");
    }
    TonalSignal out;
    out.omega0 = layout.omega0();
    for (std::uint64_t x = 0; x < state.dimension(); ++x) {
        const cplx a = state.amplitudes[x];
        if (a != cplx{}) out.coefficients.emplace(layout.basis_frequency(x), a);
    }
    return out;
}

struct Demodulated {
    StateVector state;
    /// Signal power found outside the layout's basis lattice. Expected to be
    /// nonzero for noisy signals; never an error.
    double residual = 0.0;
};

/// Recovers alpha_x = <phi_x|signal> for every basis state of the layout.
inline Demodulated demodulate(const TonalSignal& s, const FrequencyLayout& layout) {
    Demodulated out;
    out.state.num_qubits = layout.num_qubits();
    out.state.amplitudes.assign(layout.dimension(), cplx{});
    double in_band = 0.0;
    for (std::uint64_t x = 0; x < layout.dimension(); ++x) {
        const cplx a = s.coefficient(layout.basis_frequency(x));
        out.state.amplitudes[x] = a;
        in_band += std::norm(a);
    }
    double total = 0.0;
    for (const auto& [k, c] : s.coefficients) total += std::norm(c);
    out.residual = std::max(0.0, total - in_band);
    return out;
}

}  // namespace qmt
