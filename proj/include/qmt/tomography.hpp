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

/// Two-qubit state tomography. Nine local measurement settings (each qubit
/// measured along X, Y, or Z via basis-rotation gates and the comparator
/// chain), linear inversion over the Hilbert-Schmidt Pauli basis as an
/// initializer, and maximum-likelihood refinement over a Cholesky
/// parameterization so the estimate stays PSD with unit trace.
///
/// Counts are stored as doubles: injecting exact probabilities times a
/// nominal weight gives the infinite-statistics limit without a separate
/// code path.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "qmt/engine.hpp"
#include "qmt/fidelity.hpp"
#include "qmt/measurement.hpp"
#include "qmt/random.hpp"
#include "qmt/sampled_signal.hpp"
#include "qmt/state_vector.hpp"
#include "qmt/tonal_signal.hpp"

namespace qmt {

enum class PauliAxis { X = 1, Y = 2, Z = 3 };

inline char axis_name(PauliAxis a) { return a == PauliAxis::X ? 'X' : a == PauliAxis::Y ? 'Y' : 'Z'; }

/// One local measurement setting; the name reads qubit 1 first ("XZ" is X
/// on qubit 1, Z on qubit 0), matching the bitstring print order.
struct TomoSetting {
    PauliAxis on_qubit1 = PauliAxis::Z;
    PauliAxis on_qubit0 = PauliAxis::Z;

    std::string name() const { return {axis_name(on_qubit1), axis_name(on_qubit0)}; }
};

inline std::array<TomoSetting, 9> tomo_settings() {
    const PauliAxis axes[3] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
    std::array<TomoSetting, 9> settings;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) settings[3 * a + b] = {axes[a], axes[b]};
    }
    return settings;
}

/// Gates that rotate the axis eigenbasis onto the computational basis,
/// in application order.
inline std::vector<QubitGate> basis_rotation(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X: return {gates::h()};
        case PauliAxis::Y: return {gates::sdg(), gates::h()};
        case PauliAxis::Z: return {};
    }
    return {};
}

struct TomoDataset {
    double shots_per_setting = 0.0;
    /// counts[setting][outcome]; outcome index is bit0 + 2*bit1.
    std::array<std::array<double, 4>, 9> counts{};
};

/// Outcome probabilities of a setting, computed directly from the state.
inline std::array<double, 4> setting_probabilities(const StateVector& state,
                                                   const TomoSetting& setting) {
    StateVector rotated = state;
    for (const QubitGate& g : basis_rotation(setting.on_qubit0)) {
        rotated = apply_gate(rotated, g, 0);
    }
    for (const QubitGate& g : basis_rotation(setting.on_qubit1)) {
        rotated = apply_gate(rotated, g, 1);
    }
    const std::vector<double> p = born_distribution(rotated);
    return {p[0], p[1], p[2], p[3]};
}

/// Infinite-statistics dataset: exact probabilities scaled by a nominal
/// per-setting weight.
inline TomoDataset exact_tomo_dataset(const StateVector& state, double weight = 1000.0) {
    if (state.num_qubits != 2) {
        throw std::domain_error("tomography supports two qubits");
    }
    TomoDataset data;
    data.shots_per_setting = weight;
    const auto settings = tomo_settings();
    for (std::size_t s = 0; s < settings.size(); ++s) {
        const auto p = setting_probabilities(state, settings[s]);
        for (int o = 0; o < 4; ++o) data.counts[s][o] = weight * p[o];
    }
    return data;
}

/// Produces the pure state measured on a given realization. The rng is the
/// realization's private stream.
using StateSource = std::function<StateVector(std::uint64_t realization, std::mt19937_64& rng)>;

inline StateSource fixed_source(StateVector state) {
    return [state = std::move(state)](std::uint64_t, std::mt19937_64&) { return state; };
}

inline constexpr double kDressingScale = 0.41421356237309515;  // sqrt(2) - 1

struct DressedState {
    StateVector dressed;
    double scale = kDressingScale;
    StateVector noise_direction;
};

/// a = s*alpha + nu with s = sqrt(2)-1 and nu a uniformly random unit
/// vector (normalized standard complex Gaussian). Input must be normalized.
inline DressedState dress(const StateVector& state, std::mt19937_64& rng) {
    if (std::abs(norm(state) - 1.0) > 1e-9) {
        throw std::domain_error("dress: state must be normalized");
    }
    StateVector z{state.num_qubits, std::vector<cplx>(state.dimension())};
    for (cplx& c : z.amplitudes) c = complex_normal(rng);
    const double zn = norm(z);
    DressedState out;
    out.noise_direction = z;
    for (cplx& c : out.noise_direction.amplitudes) c /= zn;
    out.dressed = state;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        out.dressed.amplitudes[i] =
            kDressingScale * state.amplitudes[i] + out.noise_direction.amplitudes[i];
    }
    return out;
}

/// Ensemble source that dresses the bare state fresh on every realization
/// and renormalizes before measurement.
inline StateSource dressed_source(StateVector bare) {
    return [bare = std::move(bare)](std::uint64_t, std::mt19937_64& rng) {
        return normalized(dress(bare, rng).dressed);
    };
}

struct TomoOptions {
    EngineOptions engine{};
    /// Sampled backend grid; ignored by the tonal backend.
    int samples_per_period = 0;
    int periods = 1;
};

namespace detail {

template <class Signal>
Signal make_signal(const StateVector& state, const FrequencyLayout& layout,
                   const TomoOptions& options) {
    if constexpr (std::is_same_v<Signal, TonalSignal>) {
        return synthesize(state, layout);
    } else {
        const int n = options.samples_per_period > 0 ? options.samples_per_period
                                                     : oversampling_floor(layout.num_qubits());
        return synthesize_sampled(state, layout, n, options.periods);
    }
}

}  // namespace detail

namespace detail {

template <class Signal>
Signal rotate_to_setting(Signal signal, const FrequencyLayout& layout,
                         const TomoSetting& setting, const TomoOptions& options) {
    for (const QubitGate& g : basis_rotation(setting.on_qubit0)) {
        signal = apply_gate(signal, layout, g, 0, options.engine.unitarity_tolerance,
                            options.engine.comb);
    }
    for (const QubitGate& g : basis_rotation(setting.on_qubit1)) {
        signal = apply_gate(signal, layout, g, 1, options.engine.unitarity_tolerance,
                            options.engine.comb);
    }
    return signal;
}

inline void check_tomo_args(const FrequencyLayout& layout, std::uint64_t shots_per_setting) {
    if (layout.num_qubits() != 2) {
        throw std::domain_error("tomography supports two qubits");
    }
    if (shots_per_setting < 1) {
        throw std::domain_error("collect_tomo_data: need at least one shot per setting");
    }
}

}  // namespace detail

/// Runs the comparator measurement chain over every setting: rotate the
/// realization's signal into the setting basis, measure both qubits, tally.
template <class Signal = TonalSignal>
TomoDataset collect_tomo_data(const StateSource& source, const FrequencyLayout& layout,
                              std::uint64_t shots_per_setting, std::uint64_t seed,
                              const TomoOptions& options = {}) {
    detail::check_tomo_args(layout, shots_per_setting);
    TomoDataset data;
    data.shots_per_setting = static_cast<double>(shots_per_setting);
    const auto settings = tomo_settings();
    for (std::size_t s = 0; s < settings.size(); ++s) {
        for (std::uint64_t i = 0; i < shots_per_setting; ++i) {
            std::mt19937_64 rng =
                make_stream(seed, "tomo", (static_cast<std::uint64_t>(s) << 40) | i);
            const StateVector state = source(i, rng);
            const Signal signal = detail::rotate_to_setting(
                detail::make_signal<Signal>(state, layout, options), layout, settings[s],
                options);
            const double u[2] = {uniform01(rng), uniform01(rng)};
            auto [shot, collapsed] =
                measure_all(signal, layout, std::span<const double>(u, 2), {},
                            options.engine.comb);
            data.counts[s][shot.outcome()] += 1.0;
        }
    }
    return data;
}

/// Fixed-state fast path: each setting's rotated signal is prepared once
/// and only the comparator chain reruns per shot. Draw-for-draw identical
/// to the general overload with a fixed source.
template <class Signal = TonalSignal>
TomoDataset collect_tomo_data(const StateVector& state, const FrequencyLayout& layout,
                              std::uint64_t shots_per_setting, std::uint64_t seed,
                              const TomoOptions& options = {}) {
    detail::check_tomo_args(layout, shots_per_setting);
    TomoDataset data;
    data.shots_per_setting = static_cast<double>(shots_per_setting);
    const auto settings = tomo_settings();
    const Signal base = detail::make_signal<Signal>(state, layout, options);
    for (std::size_t s = 0; s < settings.size(); ++s) {
        const Signal rotated =
            detail::rotate_to_setting(base, layout, settings[s], options);
        for (std::uint64_t i = 0; i < shots_per_setting; ++i) {
            std::mt19937_64 rng =
                make_stream(seed, "tomo", (static_cast<std::uint64_t>(s) << 40) | i);
            const double u[2] = {uniform01(rng), uniform01(rng)};
            auto [shot, collapsed] =
                measure_all(rotated, layout, std::span<const double>(u, 2), {},
                            options.engine.comb);
            data.counts[s][shot.outcome()] += 1.0;
        }
    }
    return data;
}

/// Empirical expectations of the 16 Hilbert-Schmidt basis observables,
/// indexed 4*a + b like pauli_hs_basis(). Single-qubit terms average over
/// the three settings that share the relevant axis.
inline std::array<double, 16> pauli_expectations(const TomoDataset& data) {
    std::array<std::array<double, 4>, 9> freq{};
    for (int s = 0; s < 9; ++s) {
        double total = 0.0;
        for (int o = 0; o < 4; ++o) total += data.counts[s][o];
        if (total <= 0.0) {
            throw std::domain_error("pauli_expectations: empty setting in dataset");
        }
        for (int o = 0; o < 4; ++o) freq[s][o] = data.counts[s][o] / total;
    }
    auto sign0 = [](int o) { return o & 1 ? -1.0 : 1.0; };
    auto sign1 = [](int o) { return o & 2 ? -1.0 : 1.0; };

    std::array<double, 16> e{};
    e[0] = 1.0;
    for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) {
            const int s = 3 * (a - 1) + (b - 1);
            double value = 0.0;
            for (int o = 0; o < 4; ++o) value += sign1(o) * sign0(o) * freq[s][o];
            e[4 * a + b] = value;
        }
    }
    for (int a = 1; a <= 3; ++a) {
        double value = 0.0;
        for (int b = 1; b <= 3; ++b) {
            const int s = 3 * (a - 1) + (b - 1);
            for (int o = 0; o < 4; ++o) value += sign1(o) * freq[s][o];
        }
        e[4 * a] = value / 3.0;
    }
    for (int b = 1; b <= 3; ++b) {
        double value = 0.0;
        for (int a = 1; a <= 3; ++a) {
            const int s = 3 * (a - 1) + (b - 1);
            for (int o = 0; o < 4; ++o) value += sign0(o) * freq[s][o];
        }
        e[b] = value / 3.0;
    }
    return e;
}

/// Linear-inversion estimate: expand the empirical expectations over the
/// Pauli basis, then project onto the PSD cone and renormalize the trace.
inline ComplexMatrix qst_linear_inversion(const TomoDataset& data) {
    const std::array<double, 16> e = pauli_expectations(data);
    const auto basis = pauli_hs_basis();
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (int k = 0; k < 16; ++k) {
        rho += (e[k] / 2.0) * basis[k];
    }
    return clip_to_psd(rho, /*unit_trace=*/true);
}

struct MleResult {
    ComplexMatrix rho;
    bool converged = false;
    int iterations = 0;
    double log_likelihood = 0.0;
};

namespace detail {

/// rho = T T^dag / Tr(T T^dag) with T lower triangular; 4 real diagonal
/// entries followed by 6 complex sub-diagonal entries = 16 real parameters.
inline Eigen::Matrix4cd cholesky_params_to_rho(const std::array<double, 16>& t) {
    Eigen::Matrix4cd T = Eigen::Matrix4cd::Zero();
    T(0, 0) = t[0];
    T(1, 1) = t[1];
    T(2, 2) = t[2];
    T(3, 3) = t[3];
    T(1, 0) = cplx{t[4], t[5]};
    T(2, 0) = cplx{t[6], t[7]};
    T(2, 1) = cplx{t[8], t[9]};
    T(3, 0) = cplx{t[10], t[11]};
    T(3, 1) = cplx{t[12], t[13]};
    T(3, 2) = cplx{t[14], t[15]};
    Eigen::Matrix4cd rho = T * T.adjoint();
    const double tr = rho.trace().real();
    if (tr <= 0.0) {
        // All-zero parameter vector; fall back to the maximally mixed state.
        return Eigen::Matrix4cd::Identity() / 4.0;
    }
    return rho / tr;
}

inline std::array<Eigen::Matrix4cd, 36> tomo_effects() {
    std::array<Eigen::Matrix4cd, 36> effects;
    const auto settings = tomo_settings();
    for (int s = 0; s < 9; ++s) {
        Eigen::Matrix2cd r0 = Eigen::Matrix2cd::Identity();
        for (const QubitGate& g : basis_rotation(settings[s].on_qubit0)) {
            r0 = (to_matrix(g) * r0).eval();
        }
        Eigen::Matrix2cd r1 = Eigen::Matrix2cd::Identity();
        for (const QubitGate& g : basis_rotation(settings[s].on_qubit1)) {
            r1 = (to_matrix(g) * r1).eval();
        }
        const Eigen::Matrix4cd rotation = kron(r1, r0);
        for (int o = 0; o < 4; ++o) {
            effects[4 * s + o] =
                rotation.adjoint() * Eigen::Vector4cd::Unit(o) *
                Eigen::Vector4cd::Unit(o).adjoint() * rotation;
        }
    }
    return effects;
}

inline double tomo_log_likelihood(const TomoDataset& data, const Eigen::Matrix4cd& rho,
                                  const std::array<Eigen::Matrix4cd, 36>& effects) {
    double ll = 0.0;
    for (int s = 0; s < 9; ++s) {
        for (int o = 0; o < 4; ++o) {
            const double count = data.counts[s][o];
            if (count <= 0.0) continue;
            double p = (rho * effects[4 * s + o]).trace().real();
            if (p < 1e-300) p = 1e-300;
            ll += count * std::log(p);
        }
    }
    return ll;
}

}  // namespace detail

inline double tomo_log_likelihood(const TomoDataset& data, const ComplexMatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw std::domain_error("tomo_log_likelihood: density matrix must be 4x4");
    }
    Eigen::Matrix4cd r = rho;
    r /= r.trace().real();
    return detail::tomo_log_likelihood(data, r, detail::tomo_effects());
}

/// Maximum-likelihood reconstruction: gradient ascent with backtracking
/// line search on the 16 Cholesky parameters, seeded from `init`. Stops
/// when an accepted step improves the log-likelihood by less than 1e-9 or
/// at the iteration cap; non-convergence is reported via the flag, never
/// an exception. The returned estimate never has lower likelihood than the
/// initializer.
inline MleResult qst_mle(const TomoDataset& data, const ComplexMatrix& init,
                         int max_iterations = 10000) {
    if (init.rows() != 4 || init.cols() != 4) {
        throw std::domain_error("qst_mle: initializer must be 4x4");
    }
    const auto effects = detail::tomo_effects();

    Eigen::Matrix4cd init_psd = clip_to_psd(init, /*unit_trace=*/true);
    const double init_ll = detail::tomo_log_likelihood(data, init_psd, effects);

    // Regularize so the Cholesky start is full rank and every outcome has
    // nonzero probability.
    const double eps = 1e-9;
    Eigen::Matrix4cd start =
        (init_psd + eps * Eigen::Matrix4cd::Identity()) / (1.0 + 4.0 * eps);
    Eigen::LLT<Eigen::Matrix4cd> llt(start);
    Eigen::Matrix4cd L = llt.matrixL();

    std::array<double, 16> t{};
    t[0] = L(0, 0).real();
    t[1] = L(1, 1).real();
    t[2] = L(2, 2).real();
    t[3] = L(3, 3).real();
    t[4] = L(1, 0).real();
    t[5] = L(1, 0).imag();
    t[6] = L(2, 0).real();
    t[7] = L(2, 0).imag();
    t[8] = L(2, 1).real();
    t[9] = L(2, 1).imag();
    t[10] = L(3, 0).real();
    t[11] = L(3, 0).imag();
    t[12] = L(3, 1).real();
    t[13] = L(3, 1).imag();
    t[14] = L(3, 2).real();
    t[15] = L(3, 2).imag();

    auto likelihood_at = [&](const std::array<double, 16>& params) {
        return detail::tomo_log_likelihood(data, detail::cholesky_params_to_rho(params),
                                           effects);
    };

    MleResult result;
    double current = likelihood_at(t);
    double step = 1e-2;
    bool converged = false;
    int iteration = 0;
    for (; iteration < max_iterations; ++iteration) {
        // Central-difference gradient.
        std::array<double, 16> grad{};
        double grad_norm = 0.0;
        for (int k = 0; k < 16; ++k) {
            const double h = 1e-7 * (1.0 + std::abs(t[k]));
            std::array<double, 16> up = t, down = t;
            up[k] += h;
            down[k] -= h;
            grad[k] = (likelihood_at(up) - likelihood_at(down)) / (2.0 * h);
            grad_norm += grad[k] * grad[k];
        }
        grad_norm = std::sqrt(grad_norm);
        if (grad_norm == 0.0) {
            converged = true;
            break;
        }
        // Backtracking line search along the normalized gradient.
        bool accepted = false;
        double improvement = 0.0;
        for (double trial = step; trial > 1e-16; trial *= 0.5) {
            std::array<double, 16> next = t;
            for (int k = 0; k < 16; ++k) next[k] += trial * grad[k] / grad_norm;
            const double value = likelihood_at(next);
            if (value > current) {
                improvement = value - current;
                t = next;
                current = value;
                step = trial * 2.0;
                accepted = true;
                break;
            }
        }
        if (!accepted || improvement < 1e-9) {
            converged = true;
            ++iteration;
            break;
        }
    }

    result.iterations = iteration;
    result.converged = converged;
    if (current >= init_ll) {
        result.rho = detail::cholesky_params_to_rho(t);
        result.log_likelihood = current;
    } else {
        result.rho = init_psd;
        result.log_likelihood = init_ll;
    }
    return result;
}

}  // namespace qmt
