// Copyright 2026 The wigsim Authors
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

#include <map>
#include <string>

#include "wigsim/circuit.h"

namespace wigsim {

/// Outcome string -> probability. Strings concatenate one label per register
/// in register order.
using OutcomeDistribution = std::map<std::string, double>;

/// Largest p^registers the dense oracle accepts.
inline constexpr uint64_t kOracleMaxDim = 243;

/// Dense Born-rule evaluation over every branch with Lueders updates. Every
/// reachable outcome string appears, zero-probability ones included.
/// Requires a validated program.
OutcomeDistribution run_oracle(const CircuitProgram &prog);

}  // namespace wigsim
