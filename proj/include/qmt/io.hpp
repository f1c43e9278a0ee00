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

/// CSV and text emitters. Columns are fixed and floats carry 12
/// significant digits, so identical runs produce byte-identical files.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qmt/engine.hpp"
#include "qmt/fidelity.hpp"
#include "qmt/format.hpp"
#include "qmt/measurement.hpp"
#include "qmt/sampled_signal.hpp"
#include "qmt/state_vector.hpp"
#include "qmt/tomography.hpp"
#include "qmt/tonal_signal.hpp"

namespace qmt {

/// Basis index printed with qubit n-1 first, e.g. x=1 at n=2 is "01".
inline std::string bitstring(std::uint64_t x, int num_qubits) {
    std::string out(num_qubits, '0');
    for (int i = 0; i < num_qubits; ++i) {
        if (x >> i & 1) out[num_qubits - 1 - i] = '1';
    }
    return out;
}

/// Columns: k, freq_hz, re, im — one row per stored coefficient, ascending k.
inline void write_spectrum_csv(std::ostream& os, const TonalSignal& s) {
    const double f0 = s.omega0 / (2.0 * std::numbers::pi);
    os << "k,freq_hz,re,im\n";
    for (const auto& [k, c] : s.coefficients) {
        os << k << ',' << format_double(k * f0) << ',' << format_double(c.real()) << ','
           << format_double(c.imag()) << '\n';
    }
}

/// Columns: time_s, re, im — the two voltage rails over the full duration.
inline void write_samples_csv(std::ostream& os, const SampledSignal& s) {
    const double f0 = s.omega0 / (2.0 * std::numbers::pi);
    const double dt = 1.0 / (f0 * s.samples_per_period);
    os << "time_s,re,im\n";
    for (std::size_t m = 0; m < s.samples.size(); ++m) {
        os << format_double(m * dt) << ',' << format_double(s.samples[m].real()) << ','
           << format_double(s.samples[m].imag()) << '\n';
    }
}

/// Columns: x, bitstring, re, im — demodulated amplitudes per basis state.
inline void write_state_csv(std::ostream& os, const StateVector& state) {
    os << "x,bitstring,re,im\n";
    for (std::size_t x = 0; x < state.dimension(); ++x) {
        os << x << ',' << bitstring(x, state.num_qubits) << ','
           << format_double(state.amplitudes[x].real()) << ','
           << format_double(state.amplitudes[x].imag()) << '\n';
    }
}

/// Columns: outcome, count, frequency.
inline void write_histogram_csv(std::ostream& os, const Histogram& hist) {
    os << "outcome,count,frequency\n";
    for (std::size_t x = 0; x < hist.counts.size(); ++x) {
        os << bitstring(x, hist.num_qubits) << ',' << hist.counts[x] << ','
           << format_double(static_cast<double>(hist.counts[x]) /
                            static_cast<double>(hist.shots))
           << '\n';
    }
}

/// Columns: shot, qubit, bit, u, p0 — one row per measurement step.
inline void write_shot_log_csv(std::ostream& os, const std::vector<MeasurementShot>& shots) {
    os << "shot,qubit,bit,u,p0\n";
    for (std::size_t i = 0; i < shots.size(); ++i) {
        const MeasurementShot& shot = shots[i];
        for (std::size_t k = 0; k < shot.order.size(); ++k) {
            os << i << ',' << shot.order[k] << ',' << shot.bits[k] << ','
               << format_double(shot.u_draws[k]) << ',' << format_double(shot.p0s[k]) << '\n';
        }
    }
}

/// Row-major complex matrix, one row per line, cells as `re+imj`.
inline void write_complex_matrix(std::ostream& os, const ComplexMatrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) os << ',';
            os << format_complex(m(r, c));
        }
        os << '\n';
    }
}

/// Columns: setting, outcome, count.
inline void write_tomo_dataset_csv(std::ostream& os, const TomoDataset& data) {
    os << "setting,outcome,count\n";
    const auto settings = tomo_settings();
    for (std::size_t s = 0; s < settings.size(); ++s) {
        for (int o = 0; o < 4; ++o) {
            os << settings[s].name() << ',' << bitstring(o, 2) << ','
               << format_double(data.counts[s][o]) << '\n';
        }
    }
}

/// Columns: realization, fidelity.
inline void write_fidelity_csv(std::ostream& os, const std::vector<double>& fidelities) {
    os << "realization,fidelity\n";
    for (std::size_t i = 0; i < fidelities.size(); ++i) {
        os << i << ',' << format_double(fidelities[i]) << '\n';
    }
}

}  // namespace qmt
