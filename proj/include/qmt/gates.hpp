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

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace qmt {

using cplx = std::complex<double>;

/// A 2x2 complex matrix acting on a single qubit.
struct QubitGate {
    cplx u00{1.0, 0.0};
    cplx u01{0.0, 0.0};
    cplx u10{0.0, 0.0};
    cplx u11{1.0, 0.0};
};

/// Loose unitarity bound. Wide enough to admit hand-entered coefficient
/// tables whose row norms are only good to a couple of decimal places.
inline constexpr double kDefaultUnitarityTolerance = 5e-2;

/// Strict bound for exactly specified gates.
inline constexpr double kStrictUnitarityTolerance = 1e-10;

/// Max-abs entry of U†U - I. Zero for an exactly unitary matrix.
inline double unitarity_defect(const QubitGate& g) {
    const cplx d00 = std::conj(g.u00) * g.u00 + std::conj(g.u10) * g.u10 - 1.0;
    const cplx d01 = std::conj(g.u00) * g.u01 + std::conj(g.u10) * g.u11;
    const cplx d10 = std::conj(g.u01) * g.u00 + std::conj(g.u11) * g.u10;
    const cplx d11 = std::conj(g.u01) * g.u01 + std::conj(g.u11) * g.u11 - 1.0;
    return std::max(std::max(std::abs(d00), std::abs(d01)),
                    std::max(std::abs(d10), std::abs(d11)));
}

inline bool is_unitary(const QubitGate& g, double tol = kDefaultUnitarityTolerance) {
    return unitarity_defect(g) <= tol;
}

inline QubitGate adjoint(const QubitGate& g) {
    return {std::conj(g.u00), std::conj(g.u10), std::conj(g.u01), std::conj(g.u11)};
}

/// Matrix product a*b (apply b first, then a).
inline QubitGate matmul(const QubitGate& a, const QubitGate& b) {
    return {a.u00 * b.u00 + a.u01 * b.u10, a.u00 * b.u01 + a.u01 * b.u11,
            a.u10 * b.u00 + a.u11 * b.u10, a.u10 * b.u01 + a.u11 * b.u11};
}

namespace gates {

inline QubitGate identity() { return {1.0, 0.0, 0.0, 1.0}; }

inline QubitGate x() { return {0.0, 1.0, 1.0, 0.0}; }

inline QubitGate y() { return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}; }

inline QubitGate z() { return {1.0, 0.0, 0.0, -1.0}; }

inline QubitGate h() {
    const double r = 1.0 / std::numbers::sqrt2;
    return {r, r, r, -r};
}

inline QubitGate s() { return {1.0, 0.0, 0.0, cplx(0.0, 1.0)}; }

inline QubitGate sdg() { return {1.0, 0.0, 0.0, cplx(0.0, -1.0)}; }

inline QubitGate t() {
    const double r = 1.0 / std::numbers::sqrt2;
    return {1.0, 0.0, 0.0, cplx(r, r)};
}

inline QubitGate tdg() {
    const double r = 1.0 / std::numbers::sqrt2;
    return {1.0, 0.0, 0.0, cplx(r, -r)};
}

}  // namespace gates

}  // namespace qmt
