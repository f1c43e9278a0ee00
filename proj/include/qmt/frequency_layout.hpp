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

/// Octave-spaced carrier frequencies and the basis-frequency lattice.
///
/// Qubit i carries the conjugate tonal pair e^{±j w_i t} with w_i = 2^i * w0.
/// All frequencies are kept as exact integers in units of w0; no
/// floating-point frequency comparison happens anywhere. A basis state x
/// maps to the single frequency k(x) = sum_i (+2^i if bit i of x is 0,
/// else -2^i), which for the full n-qubit layout enumerates exactly the odd
/// integers in [-(2^n-1), 2^n-1].
///
/// Partial projection removes one qubit and leaves a layout whose carrier
/// set is a strict subset of powers of two; that is why the carrier list is
/// stored explicitly rather than recomputed from the qubit count.

#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmt {

inline constexpr double kDefaultBaseFrequencyHz = 1000.0;

class FrequencyLayout {
  public:
    /// Full octave layout for n qubits: carriers {1, 2, 4, ..., 2^(n-1)}.
    static FrequencyLayout octave(int num_qubits,
                                  double base_frequency_hz = kDefaultBaseFrequencyHz) {
        if (num_qubits < 0 || num_qubits > 30) {
            throw std::domain_error("FrequencyLayout: unsupported qubit count " +
                                    std::to_string(num_qubits));
        }
        if (base_frequency_hz <= 0.0) {
            throw std::domain_error("FrequencyLayout: base frequency must be positive");
        }
        std::vector<int> freqs(num_qubits);
        for (int i = 0; i < num_qubits; ++i) freqs[i] = 1 << i;
        return FrequencyLayout(std::move(freqs), base_frequency_hz);
    }

    int num_qubits() const { return static_cast<int>(carriers_.size()); }

    std::uint64_t dimension() const { return std::uint64_t{1} << carriers_.size(); }

    double base_frequency_hz() const { return f0_; }

    double omega0() const { return 2.0 * std::numbers::pi * f0_; }

    /// Fundamental period in seconds.
    double period_s() const { return 1.0 / f0_; }

    /// Carrier frequency of qubit i, in units of w0.
    int carrier(int qubit) const {
        if (qubit < 0 || qubit >= num_qubits()) {
            throw std::domain_error("FrequencyLayout: qubit index " +
                                    std::to_string(qubit) + " out of range");
        }
        return carriers_[qubit];
    }

    const std::vector<int>& carriers() const { return carriers_; }

    /// Frequency index of the basis signal for basis state x.
    int basis_frequency(std::uint64_t x) const {
        if (x >= dimension()) {
            throw std::domain_error("basis_frequency: basis index out of range");
        }
        int k = 0;
        for (std::size_t i = 0; i < carriers_.size(); ++i) {
            k += (x >> i) & 1 ? -carriers_[i] : carriers_[i];
        }
        return k;
    }

    /// All 2^n basis frequencies, indexed by basis state.
    std::vector<int> lattice() const {
        std::vector<int> ks(dimension());
        for (std::uint64_t x = 0; x < dimension(); ++x) ks[x] = basis_frequency(x);
        return ks;
    }

    /// Largest |k| on the lattice (sum of all carriers).
    int max_abs_frequency() const {
        int total = 0;
        for (int f : carriers_) total += f;
        return total;
    }

    /// Layout with qubit i removed. Qubits above i shift down by one.
    FrequencyLayout reduced(int qubit) const {
        if (qubit < 0 || qubit >= num_qubits()) {
            throw std::domain_error("FrequencyLayout::reduced: qubit index out of range");
        }
        std::vector<int> freqs = carriers_;
        freqs.erase(freqs.begin() + qubit);
        return FrequencyLayout(std::move(freqs), f0_);
    }

    friend bool operator==(const FrequencyLayout& a, const FrequencyLayout& b) {
        return a.carriers_ == b.carriers_ && a.f0_ == b.f0_;
    }

  private:
    FrequencyLayout(std::vector<int> carriers, double f0)
        : carriers_(std::move(carriers)), f0_(f0) {}

    std::vector<int> carriers_;
    double f0_;
};

}  // namespace qmt
