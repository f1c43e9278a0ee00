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

/// Time-domain backend: complex samples over an integer number of
/// fundamental periods. The real part models the in-phase voltage rail and
/// the imaginary part the quadrature rail. Everything the tonal backend
/// does algebraically happens here by pointwise arithmetic and discrete
/// Fourier correlation, which keeps the emulation honest about what the
/// physical rails can carry.
///
/// Sampling grid: t_m = m * T / N for m = 0 .. N*periods - 1, T = 2*pi/w0.
/// Discrete orthogonality holds exactly for integer frequency indices with
/// |k| < N/2, so demodulation is aliasing-free as long as signals stay
/// below Nyquist.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmt/frequency_layout.hpp"
#include "qmt/state_vector.hpp"
#include "qmt/tonal_signal.hpp"

namespace qmt {

/// Gate application pushes intermediates to |k| about 1.5 * 2^n; eight
/// samples per unit of the qubit band keeps everything well under Nyquist.
inline int oversampling_floor(int num_qubits) { return 8 << num_qubits; }

struct SampledSignal {
    double omega0 = 2.0 * std::numbers::pi * kDefaultBaseFrequencyHz;
    int samples_per_period = 0;
    int periods = 1;

    std::vector<cplx> samples;

    std::size_t size() const { return samples.size(); }
};

namespace detail {

inline void check_same_grid(const SampledSignal& a, const SampledSignal& b, const char* what) {
    if (a.omega0 != b.omega0) {
        throw std::domain_error(std::string(what) + ": incommensurate base frequencies");
    }
    if (a.samples_per_period != b.samples_per_period || a.periods != b.periods) {
        throw std::domain_error(std::string(what) + ": sampling grids differ");
    }
}

/// One turn of the unit circle in N steps: wheel[r] = e^{j 2 pi r / N}.
inline std::vector<cplx> twiddle_wheel(int n) {
    std::vector<cplx> wheel(n);
    for (int r = 0; r < n; ++r) {
        wheel[r] = std::polar(1.0, 2.0 * std::numbers::pi * r / n);
    }
    return wheel;
}

inline int wheel_index(std::int64_t k, std::int64_t m, int n) {
    int r = static_cast<int>((k * m) % n);
    return r < 0 ? r + n : r;
}

}  // namespace detail

/// Evaluates the tonal sum on the sampling grid.
inline SampledSignal render(const TonalSignal& s, int samples_per_period, int periods = 1) {
    if (samples_per_period < 1 || periods < 1) {
        throw std::invalid_argument("render: bad sampling grid");
    }
    for (const auto& [k, c] : s.coefficients) {
        if (2 * std::abs(k) >= samples_per_period) {
            throw std::invalid_argument("render: frequency index " + std::to_string(k) +
                                        " aliases at " + std::to_string(samples_per_period) +
                                        " samples per period");
        }
    }
    SampledSignal out;
    out.omega0 = s.omega0;
    out.samples_per_period = samples_per_period;
    out.periods = periods;
    out.samples.assign(static_cast<std::size_t>(samples_per_period) * periods, cplx{});
    const std::vector<cplx> wheel = detail::twiddle_wheel(samples_per_period);
    for (const auto& [k, c] : s.coefficients) {
        for (std::size_t m = 0; m < out.samples.size(); ++m) {
            out.samples[m] += c * wheel[detail::wheel_index(k, static_cast<std::int64_t>(m),
                                                            samples_per_period)];
        }
    }
    return out;
}

/// Correlation against e^{j k w0 t} over the full duration; exact for
/// integer k below Nyquist.
inline cplx frequency_component(const SampledSignal& s, int k) {
    const std::vector<cplx> wheel = detail::twiddle_wheel(s.samples_per_period);
    cplx acc{};
    for (std::size_t m = 0; m < s.samples.size(); ++m) {
        acc += s.samples[m] *
               std::conj(wheel[detail::wheel_index(k, static_cast<std::int64_t>(m),
                                                   s.samples_per_period)]);
    }
    return acc / static_cast<double>(s.samples.size());
}

/// Full spectral decomposition over the unambiguous bins, |k| < N/2.
inline TonalSignal analyze(const SampledSignal& s, double prune_tolerance = 0.0) {
    TonalSignal out;
    out.omega0 = s.omega0;
    const int n = s.samples_per_period;
    for (int b = 0; b < n; ++b) {
        if (2 * b == n) continue;  // +-N/2 cannot be told apart
        const int k = b < (n + 1) / 2 ? b : b - n;
        const cplx c = frequency_component(s, k);
        if (std::abs(c) > prune_tolerance && c != cplx{}) out.coefficients.emplace(k, c);
    }
    return out;
}

inline SampledSignal add(const SampledSignal& a, const SampledSignal& b) {
    detail::check_same_grid(a, b, "add");
    SampledSignal out = a;
    for (std::size_t m = 0; m < out.samples.size(); ++m) out.samples[m] += b.samples[m];
    return out;
}

inline SampledSignal scaled(const SampledSignal& a, cplx factor) {
    SampledSignal out = a;
    for (cplx& v : out.samples) v *= factor;
    return out;
}

/// Multiplication by e^{j dk w0 t}.
inline SampledSignal shifted(const SampledSignal& a, int dk) {
    SampledSignal out = a;
    const std::vector<cplx> wheel = detail::twiddle_wheel(a.samples_per_period);
    for (std::size_t m = 0; m < out.samples.size(); ++m) {
        out.samples[m] *= wheel[detail::wheel_index(dk, static_cast<std::int64_t>(m),
                                                    a.samples_per_period)];
    }
    return out;
}

/// Pointwise complex product; this is what a four-quadrant multiplier pair
/// does to the two rails.
inline SampledSignal multiply(const SampledSignal& a, const SampledSignal& b) {
    detail::check_same_grid(a, b, "multiply");
    SampledSignal out = a;
    for (std::size_t m = 0; m < out.samples.size(); ++m) out.samples[m] *= b.samples[m];
    return out;
}

inline cplx inner_product(const SampledSignal& a, const SampledSignal& b) {
    detail::check_same_grid(a, b, "inner_product");
    cplx acc{};
    for (std::size_t m = 0; m < a.samples.size(); ++m) {
        acc += std::conj(a.samples[m]) * b.samples[m];
    }
    return acc / static_cast<double>(a.samples.size());
}

inline SampledSignal synthesize_sampled(const StateVector& state, const FrequencyLayout& layout,
                                        int samples_per_period, int periods = 1) {
    return render(synthesize(state, layout), samples_per_period, periods);
}

inline Demodulated demodulate(const SampledSignal& s, const FrequencyLayout& layout) {
    Demodulated out;
    out.state.num_qubits = layout.num_qubits();
    out.state.amplitudes.assign(layout.dimension(), cplx{});
    double in_band = 0.0;
    for (std::uint64_t x = 0; x < layout.dimension(); ++x) {
        const cplx a = frequency_component(s, layout.basis_frequency(x));
        out.state.amplitudes[x] = a;
        in_band += std::norm(a);
    }
    double total = 0.0;
    for (const cplx& v : s.samples) total += std::norm(v);
    total /= static_cast<double>(s.samples.size());
    out.residual = std::max(0.0, total - in_band);
    return out;
}

}  // namespace qmt
