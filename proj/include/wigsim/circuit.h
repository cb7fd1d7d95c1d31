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

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wigsim/wigner.h"

namespace wigsim {

enum class InstrKind { Gate, Displace, Measure, Extend, Goto, Halt };

struct Instruction {
    InstrKind kind = InstrKind::Halt;
    int line = 0;

    // Gate
    GeneratorWord word;
    std::string word_text;
    // Displace / Measure (0-based register)
    int reg = -1;
    int a1 = 0;
    int a2 = 0;
    // Measure
    std::string povm_name;
    std::shared_ptr<const Povm> povm;
    /// Outcome index -> target pc. Empty: fall through.
    std::vector<size_t> branch;
    // Extend
    int count = 0;
    std::string preset;
    DenseOperator extend_state;
    // Goto
    std::string target_label;
    size_t target = 0;

    /// Filled by the validator: register count and element data at this pc.
    int registers = 0;
    CliffordElement element;
};

/// Bytecode for a validated-or-not circuit document.
struct CircuitProgram {
    int p = 3;
    int n = 1;
    std::vector<DenseOperator> inputs;
    std::vector<std::string> input_names;
    std::vector<Instruction> code;
    std::map<std::string, size_t> labels;
    /// Largest register count on any path (set by validation).
    int max_registers = 0;
};

/// Line-oriented document:
///   wigsim-circuit v1          (optional)
///   qudits p=<p> n=<n>
///   input <reg> <preset>       (one per register, 1-based)
///   gate <word>                e.g. fourier(1); sum(1,2); quadratic(2); multiply(1,2)
///   displace <reg> (<a1>,<a2>)
///   measure <reg> <povm> [branch: <outcome>-><label> ...]
///   extend <count> <preset>
///   label <name>:
///   goto <name>
///   halt
/// POVMs: computational, mub(<k>), povm-file:<path>. Relative file paths
/// resolve against `base`.
CircuitProgram parse_circuit(const std::string &text, const std::filesystem::path &base = ".");
CircuitProgram load_circuit(const std::filesystem::path &path);

struct Violation {
    int line = 0;
    std::string message;
};

struct ValidationReport {
    bool accepted = false;
    std::vector<Violation> violations;
    /// Informational lines (recorded symplectic data per gate, etc.).
    std::vector<std::string> notes;
};

/// Structural checks (register order, branch totality, labels, cycles) and
/// positivity of every input and effect. Gates are cross-checked against
/// extract_symplectic when p^registers <= 243. Fills the per-instruction
/// register counts and elements.
ValidationReport validate_circuit(CircuitProgram &prog);

/// parse + validate, throwing InvalidArgument with all violations if rejected.
CircuitProgram load_valid_circuit(const std::filesystem::path &path);

/// `fourier(1); sum(1,2)` etc. with 1-based registers. Displacements are
/// rejected. Errors carry the given line and column.
GeneratorWord parse_generator_word(const std::string &text, int p, int line = 0, int column = 0);

/// POVM on one qudit by name.
Povm povm_by_name(const std::string &name, int p, const std::filesystem::path &base);

/// Povm file: `povm p=<p>`, then per effect `effect <label>` and p*p entries
/// `re imag`.
Povm parse_povm_text(const std::string &text);

}  // namespace wigsim
