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

/// Test-only reference implementations, kept independent of the library
/// code paths they check: dense Kronecker-lifted gate application, direct
/// quadrature for signal integrals, and chi-square statistics.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qmt/gates.hpp"
#include "qmt/state_vector.hpp"
#include "qmt/tonal_signal.hpp"

namespace test_support {

using qmt::cplx;

/// Dense matrix-vector reference for single-qubit gates: builds the full
/// 2^n x 2^n operator I x..x U x..x I by explicit index arithmetic and
/// multiplies it out.
inline qmt::StateVector kron_apply(const qmt::StateVector& state, const qmt::QubitGate& g,
                                   int target) {
    const std::size_t dim = state.dimension();
    std::vector<std::vector<cplx>> full(dim, std::vector<cplx>(dim, cplx{}));
    const std::size_t bit = std::size_t{1} << target;
    for (std::size_t row = 0; row < dim; ++row) {
        for (std::size_t col = 0; col < dim; ++col) {
            if ((row & ~bit) != (col & ~bit)) continue;
            const int r = (row & bit) ? 1 : 0;
            const int c = (col & bit) ? 1 : 0;
            const cplx entries[2][2] = {{g.u00, g.u01}, {g.u10, g.u11}};
            full[row][col] = entries[r][c];
        }
    }
    qmt::StateVector out = state;
    for (std::size_t row = 0; row < dim; ++row) {
        cplx acc{};
        for (std::size_t col = 0; col < dim; ++col) {
            acc += full[row][col] * state.amplitudes[col];
        }
        out.amplitudes[row] = acc;
    }
    return out;
}

/// Dense reference for controlled gates: identity outside the control=1
/// block, the lifted U inside it.
inline qmt::StateVector kron_apply_controlled(const qmt::StateVector& state,
                                              const qmt::QubitGate& g, int control,
                                              int target) {
    const std::size_t dim = state.dimension();
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    std::vector<std::vector<cplx>> full(dim, std::vector<cplx>(dim, cplx{}));
    for (std::size_t row = 0; row < dim; ++row) {
        for (std::size_t col = 0; col < dim; ++col) {
            if (!(row & cbit) || !(col & cbit)) {
                full[row][col] = row == col ? cplx{1.0, 0.0} : cplx{};
                continue;
            }
            if ((row & ~tbit) != (col & ~tbit)) continue;
            const int r = (row & tbit) ? 1 : 0;
            const int c = (col & tbit) ? 1 : 0;
            const cplx entries[2][2] = {{g.u00, g.u01}, {g.u10, g.u11}};
            full[row][col] = entries[r][c];
        }
    }
    qmt::StateVector out = state;
    for (std::size_t row = 0; row < dim; ++row) {
        cplx acc{};
        for (std::size_t col = 0; col < dim; ++col) {
            acc += full[row][col] * state.amplitudes[col];
        }
        out.amplitudes[row] = acc;
    }
    return out;
}

inline double max_component_error(const qmt::StateVector& a, const qmt::StateVector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        worst = std::max(worst, std::abs(a.amplitudes[i] - b.amplitudes[i]));
    }
    return worst;
}

/// Largest coefficient difference between two tonal signals.
inline double max_coefficient_error(const qmt::TonalSignal& a, const qmt::TonalSignal& b) {
    double worst = 0.0;
    for (const auto& [k, c] : a.coefficients) {
        worst = std::max(worst, std::abs(c - b.coefficient(k)));
    }
    for (const auto& [k, c] : b.coefficients) {
        worst = std::max(worst, std::abs(c - a.coefficient(k)));
    }
    return worst;
}

/// Midpoint-rule quadrature of f over [0, T]; dense enough sampling makes
/// this an independent check of the closed-form signal integrals.
template <class F>
double integrate_mean(F&& f, double period, int steps = 1 << 16) {
    double acc = 0.0;
    for (int i = 0; i < steps; ++i) {
        acc += f((i + 0.5) * period / steps);
    }
    return acc / steps;
}

/// Pearson chi-square statistic; cells with expected count below 5 pool
/// into one bin. Returns {statistic, dof}.
struct ChiSquare {
    double statistic = 0.0;
    int dof = 0;
};

inline ChiSquare chi_square_stat(const std::vector<std::uint64_t>& observed,
                                 const std::vector<double>& probabilities,
                                 std::uint64_t total) {
    double pooled_obs = 0.0, pooled_exp = 0.0;
    double stat = 0.0;
    int cells = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double expected = probabilities[i] * static_cast<double>(total);
        if (expected < 5.0) {
            pooled_obs += static_cast<double>(observed[i]);
            pooled_exp += expected;
            continue;
        }
        const double diff = static_cast<double>(observed[i]) - expected;
        stat += diff * diff / expected;
        ++cells;
    }
    if (pooled_exp > 0.0) {
        const double diff = pooled_obs - pooled_exp;
        stat += diff * diff / pooled_exp;
        ++cells;
    }
    return {stat, cells > 1 ? cells - 1 : 1};
}

/// Regularized upper incomplete gamma Q(a, x) by series / continued
/// fraction, the survival function of the chi-square distribution.
inline double regularized_gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) return 1.0;
    if (x == 0.0) return 1.0;
    const double log_gamma_a = std::lgamma(a);
    if (x < a + 1.0) {
        // Lower series, then complement.
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - log_gamma_a);
        return 1.0 - p;
    }
    // Lentz continued fraction for Q directly.
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - log_gamma_a);
}

inline double chi_square_pvalue(const ChiSquare& cs) {
    return regularized_gamma_q(cs.dof / 2.0, cs.statistic / 2.0);
}

/// The worked two-qubit example state used across the suite: an
/// unnormalized four-amplitude register exercising all quadrants.
inline qmt::StateVector example_two_qubit_state() {
    return qmt::make_state(2, {cplx{0.6579, -0.2895}, cplx{0.5385, 0.1383},
                               cplx{-0.2280, 0.3953}, cplx{-0.2460, -0.4277}});
}

/// Hand-entered gate whose off-diagonal imaginary parts disagree (0.8460
/// vs 0.8640); unitary only to ~3e-2. Exercises the loose tolerance path.
inline qmt::QubitGate example_gate_near_unitary() {
    return {cplx{0.1759, 0.1836}, cplx{0.4346, 0.8460}, cplx{-0.4346, 0.8640},
            cplx{0.1759, -0.1836}};
}

/// Same table with both imaginary parts at 0.8640, unitary to ~2e-5.
inline qmt::QubitGate example_gate_unitary() {
    return {cplx{0.1759, 0.1836}, cplx{0.4346, 0.8640}, cplx{-0.4346, 0.8640},
            cplx{0.1759, -0.1836}};
}

inline qmt::StateVector singlet_state() {
    const double r = 1.0 / std::numbers::sqrt2;
    return qmt::make_state(2, {0.0, r, -r, 0.0});
}

}  // namespace test_support
