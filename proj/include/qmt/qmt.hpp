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

#include "qmt/circuit.hpp"
#include "qmt/engine.hpp"
#include "qmt/ensemble.hpp"
#include "qmt/fidelity.hpp"
#include "qmt/format.hpp"
#include "qmt/frequency_layout.hpp"
#include "qmt/gates.hpp"
#include "qmt/io.hpp"
#include "qmt/measurement.hpp"
#include "qmt/noise.hpp"
#include "qmt/parser.hpp"
#include "qmt/projection.hpp"
#include "qmt/random.hpp"
#include "qmt/resource.hpp"
#include "qmt/sampled_signal.hpp"
#include "qmt/state_vector.hpp"
#include "qmt/tomography.hpp"
#include "qmt/tonal_signal.hpp"
