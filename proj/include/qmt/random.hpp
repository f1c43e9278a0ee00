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

/// Seeded randomness. A single run seed fans out to named streams
/// ("shots", "noise", "dress", ...) so sub-experiments stay independently
/// reproducible, and every draw goes through our own mappers rather than
/// std distributions so the byte stream is a function of the seed alone.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "qmt/gates.hpp"
#include "qmt/state_vector.hpp"

namespace qmt {

namespace detail {

/// Stateless 64-bit finalizer (the splitmix64 output function). Applied
/// between every key injection below so that nearby seeds or indices give
/// unrelated states rather than shifted copies of the same stream.
inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

/// Independent generator for (seed, stream name, index).
inline std::mt19937_64 make_stream(std::uint64_t seed, std::string_view name,
                                   std::uint64_t index = 0) {
    std::uint64_t h = detail::mix64(seed + 0x9e3779b97f4a7c15ULL);
    h = detail::mix64(h ^ detail::fnv1a(name));
    h = detail::mix64(h ^ index);
    return std::mt19937_64(h);
}

/// Uniform draw on the open interval (0, 1).
inline double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal via Box-Muller.
inline double standard_normal(std::mt19937_64& rng) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Standard complex Gaussian: independent N(0,1) real and imaginary parts.
inline cplx complex_normal(std::mt19937_64& rng) {
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    return {re, im};
}

/// Haar-distributed 2x2 unitary: QR of a complex Gaussian matrix with the
/// R diagonal made real positive (Gram-Schmidt does exactly that).
inline QubitGate haar_unitary(std::mt19937_64& rng) {
    const cplx a0 = complex_normal(rng), a1 = complex_normal(rng);
    const cplx b0 = complex_normal(rng), b1 = complex_normal(rng);
    const double r00 = std::sqrt(std::norm(a0) + std::norm(a1));
    const cplx q00 = a0 / r00, q10 = a1 / r00;
    const cplx r01 = std::conj(q00) * b0 + std::conj(q10) * b1;
    const cplx v0 = b0 - q00 * r01, v1 = b1 - q10 * r01;
    const double r11 = std::sqrt(std::norm(v0) + std::norm(v1));
    return {q00, v0 / r11, q10, v1 / r11};
}

/// Normalized state with i.i.d. complex Gaussian amplitudes.
inline StateVector random_state(int num_qubits, std::mt19937_64& rng) {
    StateVector state{num_qubits, std::vector<cplx>(dimension_of(num_qubits))};
    for (cplx& a : state.amplitudes) a = complex_normal(rng);
    return normalized(state);
}

}  // namespace qmt
