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

/// The gate mechanism: split a signal into the two partial-projection
/// signals of one qubit by down/up-conversion plus comb filtering, weight
/// the branches with the gate matrix entries, and remodulate.
///
/// The comb keep-set for qubit i is the frequency lattice of the remaining
/// qubits. Down-converting by the carrier drops one branch onto that
/// lattice and parks the other branch on the lattice shifted by twice the
/// carrier; the two sets never intersect (verified exhaustively in the
/// tests), so an ideal brick-wall comb separates the branches exactly.

#pragma once

#include <set>
#include <stdexcept>

#include "qmt/frequency_layout.hpp"
#include "qmt/gates.hpp"
#include "qmt/sampled_signal.hpp"
#include "qmt/tonal_signal.hpp"

namespace qmt {

struct CombFilterSpec {
    std::set<int> keep;

    static CombFilterSpec for_layout(const FrequencyLayout& layout) {
        CombFilterSpec spec;
        for (int k : layout.lattice()) spec.keep.insert(k);
        return spec;
    }
};

/// Filter realization. Zero taps means the ideal brick-wall comb; a
/// positive odd tap count selects a Hann-windowed FIR realization whose
/// passband ripple and stopband leakage model a physical filter. FIR mode
/// applies to the sampled backend only.
struct CombModel {
    int fir_taps = 0;
};

/// Brick-wall comb on the exact backend: plain map restriction.
inline TonalSignal comb_filter(const TonalSignal& s, const CombFilterSpec& spec) {
    TonalSignal out;
    out.omega0 = s.omega0;
    for (const auto& [k, c] : s.coefficients) {
        if (spec.keep.count(k)) out.coefficients.emplace(k, c);
    }
    return out;
}

/// Brick-wall comb on the sampled backend: correlate out the kept bins and
/// resynthesize. Equivalent to a DFT, zeroing all other bins, and
/// transforming back.
inline SampledSignal comb_filter(const SampledSignal& s, const CombFilterSpec& spec) {
    const int n = s.samples_per_period;
    SampledSignal out = s;
    out.samples.assign(s.samples.size(), cplx{});
    const std::vector<cplx> wheel = detail::twiddle_wheel(n);
    for (int k : spec.keep) {
        if (2 * std::abs(k) >= n) {
            throw std::invalid_argument("comb_filter: keep frequency beyond Nyquist");
        }
        const cplx c = frequency_component(s, k);
        for (std::size_t m = 0; m < out.samples.size(); ++m) {
            out.samples[m] += c * wheel[detail::wheel_index(k, static_cast<std::int64_t>(m), n)];
        }
    }
    return out;
}

/// Windowed-FIR comb realization. The exact comb's circular impulse
/// response over the whole rendered buffer is truncated to `taps` samples
/// under a Hann window and rescaled to unit mean passband gain; what is
/// left over (passband ripple, stopband leakage) models a physical filter
/// and shrinks as taps grow. Rejecting the projection images, which sit
/// two lattice steps away, takes an impulse response longer than one
/// period, so FIR pipelines should render several periods.
inline SampledSignal comb_filter_fir(const SampledSignal& s, const CombFilterSpec& spec,
                                     int taps) {
    const int n = s.samples_per_period;
    const std::int64_t total = static_cast<std::int64_t>(s.samples.size());
    if (taps < 3 || taps % 2 == 0 || taps > total) {
        throw std::invalid_argument(
            "comb_filter_fir: taps must be odd, >= 3, and fit the rendered buffer");
    }
    for (int k : spec.keep) {
        if (2 * std::abs(k) >= n) {
            throw std::invalid_argument("comb_filter_fir: keep frequency beyond Nyquist");
        }
    }
    const std::vector<cplx> wheel = detail::twiddle_wheel(n);
    const int half = (taps - 1) / 2;
    // Windowed ideal impulse response at offsets d in [-half, half]. The
    // keep sets are closed under negation, so h is real and symmetric.
    std::vector<cplx> h(taps);
    for (int d = -half; d <= half; ++d) {
        cplx ideal{};
        for (int k : spec.keep) {
            ideal += wheel[detail::wheel_index(k, d, n)];
        }
        ideal /= static_cast<double>(total);
        const double w = 0.5 * (1.0 + std::cos(std::numbers::pi * d / (half + 1.0)));
        h[d + half] = ideal * w;
    }
    // Mean gain over the kept tones; rescale so the passband sits at one.
    double gain = 0.0;
    for (int k : spec.keep) {
        cplx g{};
        for (int d = -half; d <= half; ++d) {
            g += h[d + half] * std::conj(wheel[detail::wheel_index(k, d, n)]);
        }
        gain += g.real();
    }
    gain /= static_cast<double>(spec.keep.size());
    if (gain <= 0.0) {
        throw std::invalid_argument("comb_filter_fir: taps too short for this keep set");
    }
    for (cplx& v : h) v /= gain;

    SampledSignal out = s;
    for (std::int64_t m = 0; m < total; ++m) {
        cplx acc{};
        for (int d = -half; d <= half; ++d) {
            std::int64_t src = (m - d) % total;
            if (src < 0) src += total;
            acc += h[d + half] * s.samples[src];
        }
        out.samples[m] = acc;
    }
    return out;
}

inline TonalSignal comb_apply(const TonalSignal& s, const CombFilterSpec& spec,
                              const CombModel& model) {
    if (model.fir_taps != 0) {
        throw std::invalid_argument("comb_apply: FIR combs require the sampled backend");
    }
    return comb_filter(s, spec);
}

inline SampledSignal comb_apply(const SampledSignal& s, const CombFilterSpec& spec,
                                const CombModel& model) {
    return model.fir_taps != 0 ? comb_filter_fir(s, spec, model.fir_taps)
                               : comb_filter(s, spec);
}

/// The two (n-1)-qubit branch signals of one addressed qubit, together with
/// the layout they live on and the carrier they were split from.
template <class Signal>
struct PartialProjection {
    Signal psi0;
    Signal psi1;
    FrequencyLayout reduced;
    int carrier = 0;
};

template <class Signal>
PartialProjection<Signal> partial_project(const Signal& s, const FrequencyLayout& layout,
                                          int qubit, const CombModel& comb = {}) {
    const int f = layout.carrier(qubit);  // throws on a bad qubit index
    FrequencyLayout reduced = layout.reduced(qubit);
    const CombFilterSpec spec = CombFilterSpec::for_layout(reduced);
    return {comb_apply(shifted(s, -f), spec, comb), comb_apply(shifted(s, +f), spec, comb),
            std::move(reduced), f};
}

/// Inverse of partial_project for untouched branches:
/// phi_0 * psi0 + phi_1 * psi1.
template <class Signal>
Signal remodulate(const PartialProjection<Signal>& pp) {
    return add(shifted(pp.psi0, +pp.carrier), shifted(pp.psi1, -pp.carrier));
}

/// Gate application per the projection scheme: the branch signals pass
/// through untouched, only the addressed qubit's basis tonals are
/// recombined with the matrix entries.
template <class Signal>
Signal apply_gate(const Signal& s, const FrequencyLayout& layout, const QubitGate& g,
                  int qubit, double unitarity_tolerance = kDefaultUnitarityTolerance,
                  const CombModel& comb = {}) {
    if (!is_unitary(g, unitarity_tolerance)) {
        throw std::domain_error("apply_gate: matrix fails the unitarity tolerance");
    }
    const PartialProjection<Signal> pp = partial_project(s, layout, qubit, comb);
    Signal out = add(scaled(shifted(pp.psi0, +pp.carrier), g.u00),
                     scaled(shifted(pp.psi0, -pp.carrier), g.u10));
    out = add(out, scaled(shifted(pp.psi1, +pp.carrier), g.u01));
    return add(out, scaled(shifted(pp.psi1, -pp.carrier), g.u11));
}

/// Controlled gate by nested projection: decompose on the control, run the
/// single-qubit gate on the control=1 branch in the reduced layout, pass
/// the control=0 branch through, remodulate.
template <class Signal>
Signal apply_controlled(const Signal& s, const FrequencyLayout& layout, const QubitGate& g,
                        int control, int target,
                        double unitarity_tolerance = kDefaultUnitarityTolerance,
                        const CombModel& comb = {}) {
    if (control == target) {
        throw std::domain_error("apply_controlled: control equals target");
    }
    layout.carrier(target);  // range check before any work
    PartialProjection<Signal> pp = partial_project(s, layout, control, comb);
    const int reduced_target = target > control ? target - 1 : target;
    const Signal transformed =
        apply_gate(pp.psi1, pp.reduced, g, reduced_target, unitarity_tolerance, comb);
    return add(shifted(pp.psi0, +pp.carrier), shifted(transformed, -pp.carrier));
}

}  // namespace qmt
