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

/// Circuit execution over the signal engine: fold gate instructions
/// through projection/remodulation, delegate measure instructions to the
/// comparator chain, and run repeated seeded shots into a histogram.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "qmt/circuit.hpp"
#include "qmt/measurement.hpp"
#include "qmt/projection.hpp"
#include "qmt/random.hpp"

namespace qmt {

struct EngineOptions {
    double unitarity_tolerance = kDefaultUnitarityTolerance;
    CombModel comb{};
    /// Order used by measure_all instructions; empty means ascending.
    std::vector<int> measurement_order{};
};

template <class Signal>
struct CircuitRun {
    Signal signal;
    /// Every measure step executed by the program, in program order.
    MeasurementShot shot;
};

template <class Signal>
CircuitRun<Signal> run_instructions(std::span<const Instruction> instructions, Signal signal,
                                    const FrequencyLayout& layout, const EngineOptions& options,
                                    std::mt19937_64& rng) {
    CircuitRun<Signal> run{std::move(signal), {}};
    auto record = [&run](const MeasurementShot& shot) {
        run.shot.order.insert(run.shot.order.end(), shot.order.begin(), shot.order.end());
        run.shot.bits.insert(run.shot.bits.end(), shot.bits.begin(), shot.bits.end());
        run.shot.u_draws.insert(run.shot.u_draws.end(), shot.u_draws.begin(),
                                shot.u_draws.end());
        run.shot.p0s.insert(run.shot.p0s.end(), shot.p0s.begin(), shot.p0s.end());
    };
    for (const Instruction& ins : instructions) {
        switch (ins.kind) {
            case Instruction::Kind::Gate1:
                run.signal = apply_gate(run.signal, layout, ins.gate, ins.target,
                                        options.unitarity_tolerance, options.comb);
                break;
            case Instruction::Kind::ControlledGate:
                run.signal =
                    apply_controlled(run.signal, layout, ins.gate, ins.control, ins.target,
                                     options.unitarity_tolerance, options.comb);
                break;
            case Instruction::Kind::Measure: {
                const double u = uniform01(rng);
                MeasureOutcome<Signal> m =
                    measure_qubit(run.signal, layout, ins.target, u, options.comb);
                run.shot.order.push_back(ins.target);
                run.shot.bits.push_back(m.bit);
                run.shot.u_draws.push_back(u);
                run.shot.p0s.push_back(m.p0);
                run.signal = std::move(m.collapsed);
                break;
            }
            case Instruction::Kind::MeasureAll: {
                std::vector<int> order = options.measurement_order.empty()
                                             ? ascending_order(layout.num_qubits())
                                             : options.measurement_order;
                std::vector<double> u(order.size());
                for (double& v : u) v = uniform01(rng);
                auto [shot, collapsed] =
                    measure_all(run.signal, layout, std::span<const double>(u), order,
                                options.comb);
                record(shot);
                run.signal = std::move(collapsed);
                break;
            }
        }
    }
    return run;
}

template <class Signal>
CircuitRun<Signal> run_circuit(const CircuitProgram& program, Signal initial,
                               const FrequencyLayout& layout, const EngineOptions& options,
                               std::mt19937_64& rng) {
    return run_instructions(std::span<const Instruction>(program.instructions),
                            std::move(initial), layout, options, rng);
}

struct Histogram {
    int num_qubits = 0;
    std::uint64_t shots = 0;
    std::vector<std::uint64_t> counts;

    std::vector<double> frequencies() const {
        std::vector<double> f(counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i) {
            f[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
        }
        return f;
    }
};

/// Repeated seeded shots of a program. `make_signal(shot_index, rng)`
/// produces the pre-gate signal for each shot, which lets callers inject
/// per-shot synthesis noise; shots draw from independent per-index streams
/// of the given seed. Programs without any measure instruction get an
/// implicit trailing measure_all.
template <class Signal, class MakeSignal>
Histogram sample_shots_from_source(const CircuitProgram& program, const FrequencyLayout& layout,
                                   MakeSignal&& make_signal, std::uint64_t shots,
                                   std::uint64_t seed, const EngineOptions& options = {},
                                   std::vector<MeasurementShot>* shot_log = nullptr) {
    if (shots < 1) {
        throw std::domain_error("sample_shots: need at least one shot");
    }
    Histogram hist{layout.num_qubits(), shots,
                   std::vector<std::uint64_t>(layout.dimension(), 0)};
    const bool measured = program.has_measurement();
    for (std::uint64_t i = 0; i < shots; ++i) {
        std::mt19937_64 rng = make_stream(seed, "shots", i);
        CircuitRun<Signal> run = run_instructions(
            std::span<const Instruction>(program.instructions), make_signal(i, rng), layout,
            options, rng);
        if (!measured) {
            std::vector<int> order = options.measurement_order.empty()
                                         ? ascending_order(layout.num_qubits())
                                         : options.measurement_order;
            std::vector<double> u(order.size());
            for (double& v : u) v = uniform01(rng);
            auto [shot, collapsed] = measure_all(run.signal, layout,
                                                 std::span<const double>(u), order,
                                                 options.comb);
            run.shot = std::move(shot);
        }
        ++hist.counts[run.shot.outcome()];
        if (shot_log) shot_log->push_back(std::move(run.shot));
    }
    return hist;
}

/// Fast path for a fixed pre-gate signal: the leading gate-only prefix is
/// folded once and only the measurement suffix reruns per shot.
template <class Signal>
Histogram sample_shots(const CircuitProgram& program, const FrequencyLayout& layout,
                       const Signal& initial, std::uint64_t shots, std::uint64_t seed,
                       const EngineOptions& options = {},
                       std::vector<MeasurementShot>* shot_log = nullptr) {
    std::size_t prefix_end = 0;
    while (prefix_end < program.instructions.size() &&
           program.instructions[prefix_end].kind != Instruction::Kind::Measure &&
           program.instructions[prefix_end].kind != Instruction::Kind::MeasureAll) {
        ++prefix_end;
    }
    std::mt19937_64 unused(0);
    Signal after_prefix =
        run_instructions(
            std::span<const Instruction>(program.instructions).first(prefix_end),
            initial, layout, options, unused)
            .signal;

    CircuitProgram suffix;
    suffix.num_qubits = program.num_qubits;
    suffix.instructions.assign(program.instructions.begin() + prefix_end,
                               program.instructions.end());
    return sample_shots_from_source<Signal>(
        suffix, layout, [&after_prefix](std::uint64_t, std::mt19937_64&) { return after_prefix; },
        shots, seed, options, shot_log);
}

}  // namespace qmt
