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

#include <optional>
#include <string>
#include <vector>

#include "qmt/gates.hpp"
#include "qmt/state_vector.hpp"

namespace qmt {

struct Instruction {
    enum class Kind { Gate1, ControlledGate, Measure, MeasureAll };

    Kind kind = Kind::Gate1;
    /// Mnemonic as written in the circuit format ("h", "cnot", "gate1", ...).
    std::string mnemonic;
    int target = -1;
    int control = -1;
    QubitGate gate;
};

/// Ordered gate/measure program over a fixed register size, with an
/// optional explicit initial state (default |0...0>).
struct CircuitProgram {
    int num_qubits = 0;
    std::vector<cplx> initial_amplitudes;
    std::vector<Instruction> instructions;

    StateVector initial_state() const {
        if (initial_amplitudes.empty()) return basis_state(0, num_qubits);
        return make_state(num_qubits, initial_amplitudes);
    }

    bool has_measurement() const {
        for (const Instruction& ins : instructions) {
            if (ins.kind == Instruction::Kind::Measure ||
                ins.kind == Instruction::Kind::MeasureAll) {
                return true;
            }
        }
        return false;
    }
};

inline std::optional<QubitGate> named_gate(const std::string& name) {
    if (name == "h") return gates::h();
    if (name == "x") return gates::x();
    if (name == "y") return gates::y();
    if (name == "z") return gates::z();
    if (name == "s") return gates::s();
    if (name == "t") return gates::t();
    return std::nullopt;
}

}  // namespace qmt
