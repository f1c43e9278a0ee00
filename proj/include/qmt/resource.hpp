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

/// Back-of-envelope hardware scaling for an n-qubit device at base
/// frequency f0: the octave scheme occupies the band up to 2^n * f0, a gate
/// takes one fundamental period, each single-qubit projection needs a comb
/// with 2^n/4 positive pass bands, and two-qubit gates need n*(n-1)
/// distinct projection configurations.

#pragma once

#include <cstdint>
#include <stdexcept>

namespace qmt {

struct ResourceEstimate {
    double bandwidth_hz = 0.0;
    double gate_time_s = 0.0;
    std::int64_t comb_passbands = 0;
    std::int64_t projection_ops_per_2q_gate = 0;
};

inline ResourceEstimate resource_estimate(int num_qubits, double base_frequency_hz) {
    if (num_qubits < 1 || num_qubits > 62) {
        throw std::domain_error("resource_estimate: qubit count out of range");
    }
    if (base_frequency_hz <= 0.0) {
        throw std::domain_error("resource_estimate: base frequency must be positive");
    }
    ResourceEstimate est;
    est.bandwidth_hz = std::ldexp(base_frequency_hz, num_qubits);
    est.gate_time_s = 1.0 / base_frequency_hz;
    est.comb_passbands = num_qubits >= 2 ? (std::int64_t{1} << (num_qubits - 2)) : 0;
    est.projection_ops_per_2q_gate =
        static_cast<std::int64_t>(num_qubits) * (num_qubits - 1);
    return est;
}

}  // namespace qmt
