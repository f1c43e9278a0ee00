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

/// Hardware-imperfection models. Noise enters at the physically motivated
/// points of the signal chain: the DC voltages that set synthesis
/// coefficients (jitter), the rails of the sampled waveform (additive
/// Gaussian noise, gain imbalance, quadrature phase skew), and optionally
/// the comb-filter realization (FIR ripple, see CombModel). An all-zero
/// config leaves every pipeline output untouched.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qmt/fidelity.hpp"
#include "qmt/random.hpp"
#include "qmt/sampled_signal.hpp"
#include "qmt/state_vector.hpp"

namespace qmt {

struct NoiseConfig {
    /// Per-sample standard deviation added to each rail.
    double awgn_sigma = 0.0;
    /// Multiplicative rail mismatch; 0 is ideal.
    double gain_imbalance = 0.0;
    /// Quadrature error in radians; 0 is ideal.
    double phase_skew = 0.0;
    /// Standard deviation of the DC-voltage error on each synthesis
    /// coefficient component.
    double coefficient_jitter = 0.0;

    bool is_ideal() const {
        return awgn_sigma == 0.0 && gain_imbalance == 0.0 && phase_skew == 0.0 &&
               coefficient_jitter == 0.0;
    }
};

/// Independent Gaussian(0, sigma^2) on each rail of each sample.
inline SampledSignal add_awgn(const SampledSignal& s, double sigma, std::mt19937_64& rng) {
    if (sigma < 0.0) {
        throw std::domain_error("add_awgn: sigma must be nonnegative");
    }
    if (sigma == 0.0) return s;
    SampledSignal out = s;
    for (cplx& v : out.samples) {
        v += cplx{sigma * standard_normal(rng), sigma * standard_normal(rng)};
    }
    return out;
}

/// Static IQ imperfection: the in-phase rail gains (1+g), the quadrature
/// rail gains (1-g) and leaks a sin(skew) copy of the in-phase rail.
inline SampledSignal apply_iq_imbalance(const SampledSignal& s, double gain_imbalance,
                                        double phase_skew) {
    if (gain_imbalance == 0.0 && phase_skew == 0.0) return s;
    SampledSignal out = s;
    const double ci = 1.0 + gain_imbalance;
    const double cq = 1.0 - gain_imbalance;
    const double skew_cos = std::cos(phase_skew);
    const double skew_sin = std::sin(phase_skew);
    for (cplx& v : out.samples) {
        const double i = ci * v.real();
        const double q = cq * (v.imag() * skew_cos + v.real() * skew_sin);
        v = {i, q};
    }
    return out;
}

/// Rail-level part of a NoiseConfig (everything except coefficient jitter).
inline SampledSignal apply_rail_noise(const SampledSignal& s, const NoiseConfig& noise,
                                      std::mt19937_64& rng) {
    return add_awgn(apply_iq_imbalance(s, noise.gain_imbalance, noise.phase_skew),
                    noise.awgn_sigma, rng);
}

/// Independent Gaussian(0, jitter^2) offset on the real and imaginary part
/// of every amplitude.
inline StateVector perturb_coefficients(const StateVector& state, double jitter,
                                        std::mt19937_64& rng) {
    if (jitter < 0.0) {
        throw std::domain_error("perturb_coefficients: jitter must be nonnegative");
    }
    if (jitter == 0.0) return state;
    StateVector out = state;
    for (cplx& a : out.amplitudes) {
        a += cplx{jitter * standard_normal(rng), jitter * standard_normal(rng)};
    }
    return out;
}

/// Jitter on the DC voltages that program a gate matrix, same model as
/// perturb_coefficients.
inline QubitGate perturb_gate_entries(const QubitGate& g, double jitter,
                                      std::mt19937_64& rng) {
    if (jitter < 0.0) {
        throw std::domain_error("perturb_gate_entries: jitter must be nonnegative");
    }
    if (jitter == 0.0) return g;
    QubitGate out = g;
    for (cplx* entry : {&out.u00, &out.u01, &out.u10, &out.u11}) {
        *entry += cplx{jitter * standard_normal(rng), jitter * standard_normal(rng)};
    }
    return out;
}

struct ChannelEstimate {
    /// Best single depolarizing parameter over all probes.
    double lambda = 1.0;
    /// Per-probe fits; a depolarizing channel makes these agree.
    std::vector<double> per_probe_lambda;
    /// RMS Frobenius residual of the depolarizing fit.
    double residual = 0.0;
};

/// Monte-Carlo estimate of the channel the noisy synthesis pipeline
/// applies, fitted against a depolarizing model. Probes run through
/// coefficient jitter, rendering, rail noise, and demodulation; each
/// realization contributes the normalized projector of the recovered
/// state. The fit is a diagnostic: the residual says how depolarizing the
/// channel actually is.
inline ChannelEstimate effective_channel(const NoiseConfig& noise, int num_qubits, int trials,
                                         std::uint64_t seed,
                                         double base_frequency_hz = kDefaultBaseFrequencyHz) {
    if (trials < 1) {
        throw std::domain_error("effective_channel: need at least one trial");
    }
    const FrequencyLayout layout = FrequencyLayout::octave(num_qubits, base_frequency_hz);
    const std::size_t dim = layout.dimension();
    const int samples = oversampling_floor(num_qubits);

    std::vector<StateVector> probes;
    probes.push_back(basis_state(0, num_qubits));
    probes.push_back(basis_state(dim - 1, num_qubits));
    {
        StateVector uniform{num_qubits, std::vector<cplx>(dim, cplx{1.0, 0.0})};
        probes.push_back(normalized(uniform));
        std::mt19937_64 probe_rng = make_stream(seed, "probe");
        probes.push_back(random_state(num_qubits, probe_rng));
    }

    ChannelEstimate estimate;
    const ComplexMatrix mixed = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
    double num_all = 0.0, den_all = 0.0;
    std::vector<ComplexMatrix> deviations;
    std::vector<ComplexMatrix> targets;
    for (std::size_t p = 0; p < probes.size(); ++p) {
        ComplexMatrix mean_out = ComplexMatrix::Zero(dim, dim);
        for (int trial = 0; trial < trials; ++trial) {
            std::mt19937_64 rng =
                make_stream(seed, "channel", (static_cast<std::uint64_t>(p) << 32) | trial);
            StateVector state = perturb_coefficients(probes[p], noise.coefficient_jitter, rng);
            StateVector recovered;
            if (noise.awgn_sigma == 0.0 && noise.gain_imbalance == 0.0 &&
                noise.phase_skew == 0.0) {
                recovered = std::move(state);
            } else {
                SampledSignal signal = synthesize_sampled(state, layout, samples);
                signal = apply_rail_noise(signal, noise, rng);
                recovered = demodulate(signal, layout).state;
            }
            const double power = squared_norm(recovered);
            if (power <= 0.0) continue;
            mean_out += pure_density(recovered) / power;
        }
        mean_out /= static_cast<double>(trials);

        const ComplexMatrix rho_in = pure_density(probes[p]);
        const ComplexMatrix a = mean_out - mixed;
        const ComplexMatrix b = rho_in - mixed;
        const double num = (a.adjoint() * b).trace().real();
        const double den = (b.adjoint() * b).trace().real();
        estimate.per_probe_lambda.push_back(den > 0.0 ? num / den : 1.0);
        num_all += num;
        den_all += den;
        deviations.push_back(a);
        targets.push_back(b);
    }
    estimate.lambda = den_all > 0.0 ? num_all / den_all : 1.0;
    double residual_sq = 0.0;
    for (std::size_t p = 0; p < deviations.size(); ++p) {
        residual_sq += (deviations[p] - estimate.lambda * targets[p]).squaredNorm();
    }
    estimate.residual = std::sqrt(residual_sq / static_cast<double>(deviations.size()));
    return estimate;
}

}  // namespace qmt
