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

/// Line-oriented circuit text format.
///
///   # comment
///   qubits 2
///   init singlet              (or 2^n complex literals: init 1+0j 0+0j ...)
///   h 1
///   cnot 1 0
///   gate1 0 [[0.1+0.2j, 0.3-0.4j],[0.3+0.4j, 0.1-0.2j]]
///   cgate 1 0 [[...],[...]]
///   measure 0
///   measure_all
///
/// Complex literals are `a+bj` with either part omissible (`1`, `-j`,
/// `0.5j`, `1-j`). Parsing collects every error with its line number
/// rather than stopping at the first one.

#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qmt/circuit.hpp"
#include "qmt/format.hpp"

namespace qmt {

inline constexpr int kMaxCircuitQubits = 20;

struct ParseError {
    int line = 0;
    std::string message;
};

struct ParseResult {
    CircuitProgram program;
    std::vector<ParseError> errors;

    bool ok() const { return errors.empty(); }
};

namespace detail {

inline std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    return text;
}

inline std::vector<std::string> split_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!current.empty()) tokens.push_back(std::move(current)), current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

inline std::optional<double> parse_real(std::string_view text) {
    if (text.empty()) return std::nullopt;
    const std::string owned(text);
    char* end = nullptr;
    const double value = std::strtod(owned.c_str(), &end);
    if (end != owned.c_str() + owned.size()) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

}  // namespace detail

/// Parses `a+bj` style complex literals.
inline std::optional<cplx> parse_complex(std::string_view text) {
    text = detail::trim(text);
    if (text.empty()) return std::nullopt;
    if (text.back() != 'j' && text.back() != 'J') {
        const auto re = detail::parse_real(text);
        if (!re) return std::nullopt;
        return cplx{*re, 0.0};
    }
    std::string_view body = text.substr(0, text.size() - 1);
    // Split before the sign of the imaginary part: the last +/- that is
    // neither leading nor an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        const char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    std::string_view re_text, im_text;
    if (split == std::string_view::npos) {
        im_text = body;
    } else {
        re_text = body.substr(0, split);
        im_text = body.substr(split);
    }
    double re = 0.0;
    if (!re_text.empty()) {
        const auto parsed = detail::parse_real(re_text);
        if (!parsed) return std::nullopt;
        re = *parsed;
    }
    double im;
    if (im_text.empty() || im_text == "+") {
        im = 1.0;
    } else if (im_text == "-") {
        im = -1.0;
    } else {
        const auto parsed = detail::parse_real(im_text);
        if (!parsed) return std::nullopt;
        im = *parsed;
    }
    return cplx{re, im};
}

/// Parses a `[[a, b],[c, d]]` matrix literal.
inline std::optional<QubitGate> parse_gate_matrix(std::string_view text) {
    std::string compact;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    }
    if (compact.size() < 4 || compact.substr(0, 2) != "[[" ||
        compact.substr(compact.size() - 2) != "]]") {
        return std::nullopt;
    }
    const std::string inner = compact.substr(2, compact.size() - 4);
    const std::size_t row_break = inner.find("],[");
    if (row_break == std::string::npos) return std::nullopt;
    const std::string rows[2] = {inner.substr(0, row_break), inner.substr(row_break + 3)};
    cplx entries[4];
    for (int r = 0; r < 2; ++r) {
        if (rows[r].find('[') != std::string::npos || rows[r].find(']') != std::string::npos) {
            return std::nullopt;
        }
        const std::size_t comma = rows[r].find(',');
        if (comma == std::string::npos || rows[r].find(',', comma + 1) != std::string::npos) {
            return std::nullopt;
        }
        const auto a = parse_complex(std::string_view(rows[r]).substr(0, comma));
        const auto b = parse_complex(std::string_view(rows[r]).substr(comma + 1));
        if (!a || !b) return std::nullopt;
        entries[2 * r] = *a;
        entries[2 * r + 1] = *b;
    }
    return QubitGate{entries[0], entries[1], entries[2], entries[3]};
}

inline ParseResult parse_program(std::string_view text) {
    ParseResult result;
    CircuitProgram& program = result.program;
    bool saw_qubits = false;
    bool saw_instruction = false;
    int line_number = 0;

    auto error = [&](const std::string& message) {
        result.errors.push_back({line_number, message});
    };
    auto parse_qubit = [&](const std::string& token, int& out) {
        const auto value = detail::parse_real(token);
        if (!value || *value != std::floor(*value) || *value < 0 ||
            *value >= program.num_qubits) {
            error("bad qubit index '" + token + "'");
            return false;
        }
        out = static_cast<int>(*value);
        return true;
    };

    std::string line;
    std::istringstream stream{std::string(text)};
    while (std::getline(stream, line)) {
        ++line_number;
        std::string_view body{line};
        if (const std::size_t hash = body.find('#'); hash != std::string_view::npos) {
            body = body.substr(0, hash);
        }
        body = detail::trim(body);
        if (body.empty()) continue;

        const std::vector<std::string> tokens = detail::split_tokens(body);
        std::string mnemonic = tokens[0];
        for (char& c : mnemonic) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

        if (mnemonic == "qubits") {
            if (saw_qubits) {
                error("duplicate qubits line");
                continue;
            }
            const auto n = tokens.size() == 2 ? detail::parse_real(tokens[1]) : std::nullopt;
            if (!n || *n != std::floor(*n) || *n < 1 || *n > kMaxCircuitQubits) {
                error("qubits takes an integer in [1, " + std::to_string(kMaxCircuitQubits) + "]");
                continue;
            }
            program.num_qubits = static_cast<int>(*n);
            saw_qubits = true;
            continue;
        }
        if (!saw_qubits) {
            error("expected 'qubits N' before '" + mnemonic + "'");
            continue;
        }

        if (mnemonic == "init") {
            if (saw_instruction) {
                error("init must precede gate and measure lines");
                continue;
            }
            if (!program.initial_amplitudes.empty()) {
                error("duplicate init line");
                continue;
            }
            if (tokens.size() == 2 && tokens[1] == "singlet") {
                if (program.num_qubits != 2) {
                    error("init singlet requires qubits 2");
                    continue;
                }
                const double r = 1.0 / std::numbers::sqrt2;
                program.initial_amplitudes = {0.0, r, -r, 0.0};
                continue;
            }
            const std::size_t dim = dimension_of(program.num_qubits);
            if (tokens.size() != dim + 1) {
                error("init takes " + std::to_string(dim) + " amplitudes or a state name");
                continue;
            }
            std::vector<cplx> amps;
            bool good = true;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                const auto a = parse_complex(tokens[i]);
                if (!a) {
                    error("malformed amplitude '" + tokens[i] + "'");
                    good = false;
                    break;
                }
                amps.push_back(*a);
            }
            if (good) program.initial_amplitudes = std::move(amps);
            continue;
        }

        saw_instruction = true;
        Instruction ins;
        ins.mnemonic = mnemonic;

        if (mnemonic == "measure_all") {
            if (tokens.size() != 1) {
                error("measure_all takes no arguments");
                continue;
            }
            ins.kind = Instruction::Kind::MeasureAll;
            program.instructions.push_back(std::move(ins));
            continue;
        }
        if (mnemonic == "measure") {
            if (tokens.size() != 2 || !parse_qubit(tokens[1], ins.target)) {
                if (tokens.size() != 2) error("measure takes one qubit index");
                continue;
            }
            ins.kind = Instruction::Kind::Measure;
            program.instructions.push_back(std::move(ins));
            continue;
        }
        if (mnemonic == "cnot") {
            if (tokens.size() != 3) {
                error("cnot takes control and target indices");
                continue;
            }
            if (!parse_qubit(tokens[1], ins.control) || !parse_qubit(tokens[2], ins.target)) {
                continue;
            }
            if (ins.control == ins.target) {
                error("cnot control equals target");
                continue;
            }
            ins.kind = Instruction::Kind::ControlledGate;
            ins.gate = gates::x();
            program.instructions.push_back(std::move(ins));
            continue;
        }
        if (mnemonic == "gate1" || mnemonic == "cgate") {
            const bool controlled = mnemonic == "cgate";
            const std::size_t index_count = controlled ? 2 : 1;
            if (tokens.size() < index_count + 2) {
                error(mnemonic + " takes qubit indices and a [[..],[..]] matrix");
                continue;
            }
            bool good = true;
            if (controlled) {
                good = parse_qubit(tokens[1], ins.control) && parse_qubit(tokens[2], ins.target);
                if (good && ins.control == ins.target) {
                    error("cgate control equals target");
                    good = false;
                }
            } else {
                good = parse_qubit(tokens[1], ins.target);
            }
            if (!good) continue;
            std::string matrix_text;
            for (std::size_t i = index_count + 1; i < tokens.size(); ++i) matrix_text += tokens[i];
            const auto gate = parse_gate_matrix(matrix_text);
            if (!gate) {
                error("malformed matrix literal");
                continue;
            }
            ins.gate = *gate;
            ins.kind = controlled ? Instruction::Kind::ControlledGate : Instruction::Kind::Gate1;
            program.instructions.push_back(std::move(ins));
            continue;
        }
        if (const auto gate = named_gate(mnemonic)) {
            if (tokens.size() != 2 || !parse_qubit(tokens[1], ins.target)) {
                if (tokens.size() != 2) error(mnemonic + " takes one qubit index");
                continue;
            }
            ins.kind = Instruction::Kind::Gate1;
            ins.gate = *gate;
            program.instructions.push_back(std::move(ins));
            continue;
        }
        error("unknown gate name '" + mnemonic + "'");
    }

    if (!saw_qubits) {
        line_number = 0;
        error("missing 'qubits N' line");
    }
    return result;
}

inline std::string format_gate_matrix(const QubitGate& g) {
    return "[[" + format_complex(g.u00) + ", " + format_complex(g.u01) + "],[" +
           format_complex(g.u10) + ", " + format_complex(g.u11) + "]]";
}

/// Writes a program back out in the text format. format -> parse -> format
/// is idempotent.
inline std::string format_program(const CircuitProgram& program) {
    std::string out = "qubits " + std::to_string(program.num_qubits) + "\n";
    if (!program.initial_amplitudes.empty()) {
        out += "init";
        for (const cplx& a : program.initial_amplitudes) out += " " + format_complex(a);
        out += "\n";
    }
    for (const Instruction& ins : program.instructions) {
        switch (ins.kind) {
            case Instruction::Kind::MeasureAll:
                out += "measure_all\n";
                break;
            case Instruction::Kind::Measure:
                out += "measure " + std::to_string(ins.target) + "\n";
                break;
            case Instruction::Kind::Gate1:
                if (ins.mnemonic == "gate1") {
                    out += "gate1 " + std::to_string(ins.target) + " " +
                           format_gate_matrix(ins.gate) + "\n";
                } else {
                    out += ins.mnemonic + " " + std::to_string(ins.target) + "\n";
                }
                break;
            case Instruction::Kind::ControlledGate:
                if (ins.mnemonic == "cnot") {
                    out += "cnot " + std::to_string(ins.control) + " " +
                           std::to_string(ins.target) + "\n";
                } else {
                    out += "cgate " + std::to_string(ins.control) + " " +
                           std::to_string(ins.target) + " " + format_gate_matrix(ins.gate) +
                           "\n";
                }
                break;
        }
    }
    return out;
}

}  // namespace qmt
