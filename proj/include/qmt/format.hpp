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

/// Numeric text formats shared by the circuit format and the CSV writers.
/// All floats serialize with 12 significant digits; complex values use the
/// literal form `a+bj` accepted back by the parser.

#pragma once

#include <cstdio>
#include <string>

#include "qmt/gates.hpp"

namespace qmt {

inline std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

inline std::string format_complex(cplx value) {
    std::string out = format_double(value.real());
    const double im = value.imag();
    if (std::signbit(im)) {
        out += '-';
        out += format_double(-im);
    } else {
        out += '+';
        out += format_double(im);
    }
    out += 'j';
    return out;
}

}  // namespace qmt
