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

#include "wigsim/circuit.h"

#include <algorithm>
#include <functional>

#include "wigsim/errors.h"
#include "wigsim/text_io.h"

namespace wigsim {

namespace {

std::vector<int> parse_int_list(const std::string &s, int line, int column) {
    std::vector<int> out;
    size_t start = 0;
    while (true) {
        size_t comma = s.find(',', start);
        std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            size_t used = 0;
            int v = std::stoi(part, &used);
            if (used != part.size()) {
                throw std::invalid_argument(part);
            }
            out.push_back(v);
        } catch (const std::logic_error &) {
            throw ParseError("bad integer '" + part + "'", line, column);
        }
        if (comma == std::string::npos) {
            return out;
        }
        start = comma + 1;
    }
}

// "name(args)" -> (name, args)
std::pair<std::string, std::vector<int>> parse_call(const std::string &s, int line, int column) {
    size_t open = s.find('(');
    if (open == std::string::npos || s.back() != ')' || open == 0) {
        throw ParseError("expected name(args) in '" + s + "'", line, column);
    }
    return {s.substr(0, open), parse_int_list(s.substr(open + 1, s.size() - open - 2), line, column)};
}

int parse_register(const Token &t, int line) {
    try {
        size_t used = 0;
        int r = std::stoi(t.text, &used);
        if (used != t.text.size() || r < 1) {
            throw std::invalid_argument(t.text);
        }
        return r - 1;
    } catch (const std::logic_error &) {
        throw ParseError("expected a 1-based register number, got '" + t.text + "'", line, t.column);
    }
}

GeneratorWord parse_word(const std::string &text, int p, int line, int column) {
    GeneratorWord word;
    size_t start = 0;
    while (start <= text.size()) {
        size_t semi = text.find(';', start);
        std::string item = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) {
            auto [name, args] = parse_call(item, line, column);
            auto need = [&](size_t k) {
                if (args.size() != k) {
                    throw ParseError(name + " takes " + std::to_string(k) + " argument(s)", line, column);
                }
                for (size_t i = 0; i < std::min<size_t>(k, name == "multiply" ? 1 : k); i++) {
                    if (args[i] < 1) {
                        throw ParseError("registers are 1-based", line, column);
                    }
                }
            };
            if (name == "fourier") {
                need(1);
                word.push_back(Generator::fourier(args[0] - 1));
            } else if (name == "quadratic") {
                need(1);
                word.push_back(Generator::quadratic(args[0] - 1));
            } else if (name == "multiply") {
                need(2);
                if (mod(args[1], p) == 0) {
                    throw ParseError("multiply factor must be nonzero mod p", line, column);
                }
                word.push_back(Generator::multiply(args[0] - 1, mod(args[1], p)));
            } else if (name == "sum") {
                need(2);
                if (args[0] == args[1]) {
                    throw ParseError("sum needs two different registers", line, column);
                }
                word.push_back(Generator::sum(args[0] - 1, args[1] - 1));
            } else if (name == "displace") {
                throw ParseError("displacements are written as 'displace <reg> (a1,a2)', not inside a gate word", line,
                                 column);
            } else {
                throw ParseError("unknown generator '" + name + "'", line, column);
            }
        }
        if (semi == std::string::npos) {
            break;
        }
        start = semi + 1;
    }
    if (word.empty()) {
        throw ParseError("empty gate word", line, column);
    }
    return word;
}

std::string join_from(const std::vector<Token> &toks, size_t k) {
    std::string out;
    for (size_t i = k; i < toks.size(); i++) {
        out += toks[i].text;
    }
    return out;
}

std::string describe_point(const PhasePoint &u) {
    return u.str();
}

}  // namespace

GeneratorWord parse_generator_word(const std::string &text, int p, int line, int column) {
    return parse_word(text, p, line, column);
}

Povm parse_povm_text(const std::string &text) {
    auto lines = source_lines(text);
    if (lines.empty()) {
        throw ParseError("empty POVM file", 1);
    }
    auto head = tokenize(lines[0].text);
    if (head.size() != 2 || head[0].text != "povm" || head[1].text.rfind("p=", 0) != 0) {
        throw ParseError("POVM file must start with 'povm p=<p>'", lines[0].number);
    }
    int p = 0;
    try {
        p = std::stoi(head[1].text.substr(2));
        require_odd_prime(p);
    } catch (const std::logic_error &) {
        throw ParseError("bad p", lines[0].number, head[1].column);
    } catch (const InvalidArgument &e) {
        throw ParseError(e.what(), lines[0].number, head[1].column);
    }
    std::vector<std::pair<std::string, DenseOperator>> effects;
    std::vector<std::string> nums;
    std::string label;
    int label_line = 0;
    auto flush = [&]() {
        if (label.empty()) {
            return;
        }
        if (nums.size() != static_cast<size_t>(2 * p * p)) {
            throw ParseError("effect " + label + " needs " + std::to_string(2 * p * p) + " numbers", label_line);
        }
        DenseOperator e(p, p);
        for (int r = 0; r < p; r++) {
            for (int c = 0; c < p; c++) {
                size_t k = 2 * static_cast<size_t>(r * p + c);
                try {
                    e(r, c) = cplx(std::stod(nums[k]), std::stod(nums[k + 1]));
                } catch (const std::logic_error &) {
                    throw ParseError("bad number in effect " + label, label_line);
                }
            }
        }
        effects.emplace_back(label, e);
        nums.clear();
    };
    for (size_t i = 1; i < lines.size(); i++) {
        auto toks = tokenize(lines[i].text);
        if (toks[0].text == "effect") {
            if (toks.size() != 2) {
                throw ParseError("expected 'effect <label>'", lines[i].number);
            }
            flush();
            label = toks[1].text;
            label_line = lines[i].number;
            continue;
        }
        if (label.empty()) {
            throw ParseError("numbers before the first 'effect'", lines[i].number);
        }
        for (const auto &t : toks) {
            nums.push_back(t.text);
        }
    }
    flush();
    return Povm(std::move(effects), p, 1);
}

Povm povm_by_name(const std::string &name, int p, const std::filesystem::path &base) {
    if (name == "computational") {
        return Povm::computational(p);
    }
    if (name.rfind("mub(", 0) == 0 && name.back() == ')') {
        std::string inner = name.substr(4, name.size() - 5);
        if (inner.empty() || inner.find_first_not_of("0123456789") != std::string::npos || inner.size() > 6) {
            throw InvalidArgument("bad POVM name '" + name + "'");
        }
        int k = std::stoi(inner);
        if (k > p) {
            throw InvalidArgument("MUB basis " + inner + " out of range for p=" + std::to_string(p));
        }
        return Povm::mub(p, k);
    }
    if (name.rfind("povm-file:", 0) == 0) {
        std::filesystem::path path = name.substr(10);
        Povm m = parse_povm_text(read_text_file(path.is_absolute() ? path : base / path));
        if (m.p() != p) {
            throw InvalidArgument("POVM file " + path.string() + " is for p=" + std::to_string(m.p()));
        }
        return m;
    }
    throw InvalidArgument("unknown POVM '" + name + "'");
}

CircuitProgram parse_circuit(const std::string &text, const std::filesystem::path &base) {
    auto lines = source_lines(text);
    CircuitProgram prog;
    bool have_qudits = false;
    std::vector<int> input_line;
    struct PendingBranch {
        size_t pc;
        size_t outcome;
        std::string label;
        int line;
        int column;
    };
    std::vector<PendingBranch> pending;
    std::vector<std::pair<size_t, int>> gotos;

    for (size_t li = 0; li < lines.size(); li++) {
        const int ln = lines[li].number;
        auto toks = tokenize(lines[li].text);
        const std::string &kw = toks[0].text;
        if (li == 0 && kw == "wigsim-circuit") {
            if (toks.size() != 2 || toks[1].text != "v1") {
                throw ParseError("unsupported circuit version", ln, toks.size() > 1 ? toks[1].column : 0);
            }
            continue;
        }
        if (kw == "qudits") {
            if (have_qudits || toks.size() != 3 || toks[1].text.rfind("p=", 0) != 0 ||
                toks[2].text.rfind("n=", 0) != 0) {
                throw ParseError("expected a single 'qudits p=<p> n=<n>'", ln);
            }
            try {
                prog.p = std::stoi(toks[1].text.substr(2));
                prog.n = std::stoi(toks[2].text.substr(2));
            } catch (const std::logic_error &) {
                throw ParseError("bad qudits line", ln);
            }
            try {
                require_odd_prime(prog.p);
            } catch (const InvalidArgument &e) {
                throw ParseError(e.what(), ln, toks[1].column);
            }
            if (prog.n < 1 || prog.n > 64) {
                throw ParseError("n must be between 1 and 64", ln, toks[2].column);
            }
            prog.inputs.resize(prog.n);
            prog.input_names.resize(prog.n);
            input_line.assign(prog.n, 0);
            have_qudits = true;
            continue;
        }
        if (!have_qudits) {
            throw ParseError("'qudits' must come first", ln, toks[0].column);
        }
        if (kw == "input") {
            if (toks.size() != 3) {
                throw ParseError("expected 'input <reg> <preset>'", ln);
            }
            int r = parse_register(toks[1], ln);
            if (r >= prog.n) {
                throw ParseError("register out of range", ln, toks[1].column);
            }
            if (input_line[r]) {
                throw ParseError("register " + toks[1].text + " already has an input (line " +
                                     std::to_string(input_line[r]) + ")",
                                 ln, toks[1].column);
            }
            if (!prog.code.empty()) {
                throw ParseError("inputs must precede instructions", ln);
            }
            try {
                prog.inputs[r] = resolve_preset(toks[2].text, prog.p, base);
            } catch (const ParseError &) {
                throw;
            } catch (const Error &e) {
                throw ParseError(e.what(), ln, toks[2].column);
            }
            prog.input_names[r] = toks[2].text;
            input_line[r] = ln;
            continue;
        }
        Instruction ins;
        ins.line = ln;
        if (kw == "label") {
            if (toks.size() != 2 || toks[1].text.size() < 2 || toks[1].text.back() != ':') {
                throw ParseError("expected 'label <name>:'", ln);
            }
            std::string name = toks[1].text.substr(0, toks[1].text.size() - 1);
            if (!prog.labels.emplace(name, prog.code.size()).second) {
                throw ParseError("duplicate label '" + name + "'", ln, toks[1].column);
            }
            continue;
        } else if (kw == "gate") {
            if (toks.size() < 2) {
                throw ParseError("expected 'gate <word>'", ln);
            }
            ins.kind = InstrKind::Gate;
            ins.word_text = join_from(toks, 1);
            ins.word = parse_word(ins.word_text, prog.p, ln, toks[1].column);
        } else if (kw == "displace") {
            if (toks.size() != 3) {
                throw ParseError("expected 'displace <reg> (a1,a2)'", ln);
            }
            ins.kind = InstrKind::Displace;
            ins.reg = parse_register(toks[1], ln);
            const std::string &t = toks[2].text;
            if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
                throw ParseError("expected (a1,a2)", ln, toks[2].column);
            }
            auto v = parse_int_list(t.substr(1, t.size() - 2), ln, toks[2].column);
            if (v.size() != 2) {
                throw ParseError("expected (a1,a2)", ln, toks[2].column);
            }
            ins.a1 = mod(v[0], prog.p);
            ins.a2 = mod(v[1], prog.p);
        } else if (kw == "measure") {
            if (toks.size() < 3) {
                throw ParseError("expected 'measure <reg> <povm> [branch: ...]'", ln);
            }
            ins.kind = InstrKind::Measure;
            ins.reg = parse_register(toks[1], ln);
            ins.povm_name = toks[2].text;
            try {
                ins.povm = std::make_shared<Povm>(povm_by_name(ins.povm_name, prog.p, base));
            } catch (const ParseError &) {
                throw;
            } catch (const Error &e) {
                throw ParseError(e.what(), ln, toks[2].column);
            }
            if (toks.size() > 3) {
                if (toks[3].text != "branch:") {
                    throw ParseError("expected 'branch:'", ln, toks[3].column);
                }
                if (toks.size() == 4) {
                    throw ParseError("empty branch table", ln, toks[3].column);
                }
                ins.branch.assign(ins.povm->size(), SIZE_MAX);
                for (size_t k = 4; k < toks.size(); k++) {
                    const std::string &e = toks[k].text;
                    size_t arrow = e.find("->");
                    if (arrow == std::string::npos || arrow == 0 || arrow + 2 >= e.size()) {
                        throw ParseError("expected <outcome>-><label>", ln, toks[k].column);
                    }
                    std::string outcome = e.substr(0, arrow);
                    int idx = ins.povm->find(outcome);
                    if (idx < 0) {
                        throw ParseError("POVM " + ins.povm_name + " has no outcome '" + outcome + "'", ln,
                                         toks[k].column);
                    }
                    if (ins.branch[idx] != SIZE_MAX) {
                        throw ParseError("outcome '" + outcome + "' appears twice in the branch table", ln,
                                         toks[k].column);
                    }
                    ins.branch[idx] = 0;
                    pending.push_back({prog.code.size(), static_cast<size_t>(idx), e.substr(arrow + 2), ln,
                                       toks[k].column});
                }
                for (size_t k = 0; k < ins.branch.size(); k++) {
                    if (ins.branch[k] == SIZE_MAX) {
                        throw ParseError("branch table has no entry for outcome '" + ins.povm->label(k) + "'", ln,
                                         toks[3].column);
                    }
                }
            }
        } else if (kw == "extend") {
            if (toks.size() != 3) {
                throw ParseError("expected 'extend <count> <preset>'", ln);
            }
            ins.kind = InstrKind::Extend;
            ins.count = parse_register(toks[1], ln) + 1;
            ins.preset = toks[2].text;
            try {
                ins.extend_state = resolve_preset(ins.preset, prog.p, base);
            } catch (const ParseError &) {
                throw;
            } catch (const Error &e) {
                throw ParseError(e.what(), ln, toks[2].column);
            }
        } else if (kw == "goto") {
            if (toks.size() != 2) {
                throw ParseError("expected 'goto <label>'", ln);
            }
            ins.kind = InstrKind::Goto;
            ins.target_label = toks[1].text;
            gotos.emplace_back(prog.code.size(), toks[1].column);
        } else if (kw == "halt") {
            if (toks.size() != 1) {
                throw ParseError("unexpected text after 'halt'", ln, toks[1].column);
            }
            ins.kind = InstrKind::Halt;
        } else {
            throw ParseError("unknown instruction '" + kw + "'", ln, toks[0].column);
        }
        prog.code.push_back(std::move(ins));
    }
    if (!have_qudits) {
        throw ParseError("missing 'qudits' line", lines.empty() ? 1 : lines.back().number);
    }
    for (int r = 0; r < prog.n; r++) {
        if (!input_line[r]) {
            throw ParseError("register " + std::to_string(r + 1) + " has no input",
                             lines.empty() ? 1 : lines.back().number);
        }
    }
    for (const auto &b : pending) {
        auto it = prog.labels.find(b.label);
        if (it == prog.labels.end()) {
            throw ParseError("unknown label '" + b.label + "'", b.line, b.column);
        }
        prog.code[b.pc].branch[b.outcome] = it->second;
    }
    for (const auto &[pc, column] : gotos) {
        auto it = prog.labels.find(prog.code[pc].target_label);
        if (it == prog.labels.end()) {
            throw ParseError("unknown label '" + prog.code[pc].target_label + "'", prog.code[pc].line, column);
        }
        prog.code[pc].target = it->second;
    }
    return prog;
}

CircuitProgram load_circuit(const std::filesystem::path &path) {
    return parse_circuit(read_text_file(path), path.parent_path().empty() ? "." : path.parent_path());
}

ValidationReport validate_circuit(CircuitProgram &prog) {
    ValidationReport rep;
    auto fail = [&](int line, std::string msg) { rep.violations.push_back({line, std::move(msg)}); };
    const int p = prog.p;

    auto check_state = [&](const DenseOperator &rho, const std::string &what, int line) {
        try {
            QuantumState q(rho, p, 1);
        } catch (const Error &e) {
            fail(line, what + ": " + e.what());
            return;
        }
        auto [w, u] = wigner_values(rho, p, 1, WignerKind::State).minimum();
        if (w < -1e-10) {
            fail(line, what + " is negatively represented: W" + describe_point(u) + " = " + fmt12(w));
        }
    };
    for (int r = 0; r < prog.n; r++) {
        check_state(prog.inputs[r], "input " + std::to_string(r + 1) + " (" + prog.input_names[r] + ")", 0);
    }

    struct State {
        int registers;
        std::vector<bool> measured;
        bool operator==(const State &o) const = default;
    };
    const size_t size = prog.code.size();
    std::vector<std::optional<State>> seen(size);
    std::vector<int> color(size, 0);
    bool structural_ok = true;
    prog.max_registers = prog.n;

    std::function<void(size_t, State)> visit = [&](size_t pc, State st) {
        prog.max_registers = std::max(prog.max_registers, st.registers);
        if (pc == size) {
            for (int r = 0; r < st.registers; r++) {
                if (!st.measured[r]) {
                    fail(size ? prog.code.back().line : 0,
                         "register " + std::to_string(r + 1) + " is never measured on some path");
                    structural_ok = false;
                    return;
                }
            }
            return;
        }
        Instruction &ins = prog.code[pc];
        if (color[pc] == 1) {
            fail(ins.line, "control flow loops back to this instruction");
            structural_ok = false;
            return;
        }
        if (seen[pc]) {
            if (!(*seen[pc] == st)) {
                fail(ins.line, "instruction is reached with different register states on different paths");
                structural_ok = false;
            }
            return;
        }
        seen[pc] = st;
        color[pc] = 1;
        ins.registers = st.registers;
        auto unmeasured = [&](int r) { return r >= 0 && r < st.registers && !st.measured[r]; };
        switch (ins.kind) {
            case InstrKind::Gate: {
                bool ok = true;
                for (const auto &g : ins.word) {
                    for (int r : {g.reg, g.kind == GeneratorKind::Sum ? g.target : g.reg}) {
                        if (!unmeasured(r)) {
                            fail(ins.line, "gate " + g.str() + " acts on register " + std::to_string(r + 1) +
                                               (r < st.registers ? ", which was already measured" : ", which does not exist"));
                            ok = false;
                        }
                    }
                }
                if (!ok) {
                    structural_ok = false;
                    break;
                }
                ins.element = word_element(ins.word, p, st.registers);
                if (!ins.element.a.is_zero()) {
                    fail(ins.line, "gate word has a nonzero displacement part");
                }
                if (checked_pow(p, st.registers) <= 243) {
                    try {
                        CliffordElement got = extract_symplectic(word_unitary(ins.word, p, st.registers), p, st.registers);
                        if (!(got == ins.element)) {
                            fail(ins.line, "gate word's unitary does not match its symplectic data");
                        } else {
                            rep.notes.push_back("line " + std::to_string(ins.line) + ": " + ins.word_text + " F=" +
                                                got.f.matrix().str());
                        }
                    } catch (const Error &e) {
                        fail(ins.line, std::string("gate check failed: ") + e.what());
                    }
                } else {
                    rep.notes.push_back("line " + std::to_string(ins.line) + ": " + ins.word_text +
                                        " F=" + ins.element.f.matrix().str() + " (dense check skipped)");
                }
                visit(pc + 1, st);
                break;
            }
            case InstrKind::Displace:
                if (!unmeasured(ins.reg)) {
                    fail(ins.line, "displace on register " + std::to_string(ins.reg + 1) +
                                       (ins.reg < st.registers ? ", which was already measured" : ", which does not exist"));
                    structural_ok = false;
                    break;
                }
                {
                    PhasePoint a(p, st.registers);
                    a.set(2 * ins.reg, ins.a1);
                    a.set(2 * ins.reg + 1, ins.a2);
                    ins.element = CliffordElement::displacement(a);
                }
                visit(pc + 1, st);
                break;
            case InstrKind::Measure: {
                int expect = -1;
                for (int r = st.registers - 1; r >= 0; r--) {
                    if (!st.measured[r]) {
                        expect = r;
                        break;
                    }
                }
                if (ins.reg != expect) {
                    fail(ins.line, "measures register " + std::to_string(ins.reg + 1) + " but register " +
                                       (expect < 0 ? std::string("(none)") : std::to_string(expect + 1)) +
                                       " must be measured next (registers are measured from last to first)");
                    structural_ok = false;
                    break;
                }
                if (ins.povm->p() != p || ins.povm->n() != 1) {
                    fail(ins.line, "POVM must act on a single qudit of dimension p");
                    structural_ok = false;
                    break;
                }
                State next = st;
                next.measured[ins.reg] = true;
                if (ins.branch.empty()) {
                    visit(pc + 1, next);
                } else {
                    std::vector<size_t> targets = ins.branch;
                    std::sort(targets.begin(), targets.end());
                    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
                    for (size_t t : targets) {
                        visit(t, next);
                    }
                }
                break;
            }
            case InstrKind::Extend: {
                State next = st;
                next.registers += ins.count;
                next.measured.resize(next.registers, false);
                visit(pc + 1, next);
                break;
            }
            case InstrKind::Goto:
                visit(ins.target, st);
                break;
            case InstrKind::Halt:
                visit(size, st);
                break;
        }
        color[pc] = 2;
    };
    visit(0, State{prog.n, std::vector<bool>(prog.n, false)});

    for (size_t pc = 0; pc < size; pc++) {
        const Instruction &ins = prog.code[pc];
        if (!seen[pc]) {
            continue;
        }
        if (ins.kind == InstrKind::Measure) {
            for (size_t k = 0; k < ins.povm->size(); k++) {
                auto [w, u] = wigner_values(ins.povm->effect(k), p, 1, WignerKind::Effect).minimum();
                if (w < -1e-10) {
                    fail(ins.line, "effect " + ins.povm->label(k) + " of " + ins.povm_name +
                                       " is negatively represented: W" + describe_point(u) + " = " + fmt12(w));
                }
            }
        }
        if (ins.kind == InstrKind::Extend) {
            check_state(ins.extend_state, "extend preset " + ins.preset, ins.line);
        }
    }
    (void)structural_ok;
    if (prog.max_registers > 64) {
        fail(0, "more than 64 registers");
    }
    rep.accepted = rep.violations.empty();
    return rep;
}

CircuitProgram load_valid_circuit(const std::filesystem::path &path) {
    CircuitProgram prog = load_circuit(path);
    auto rep = validate_circuit(prog);
    if (!rep.accepted) {
        std::string msg = "circuit rejected:";
        for (const auto &v : rep.violations) {
            msg += "\n  ";
            if (v.line) {
                msg += "line " + std::to_string(v.line) + ": ";
            }
            msg += v.message;
        }
        throw InvalidArgument(msg);
    }
    return prog;
}

}  // namespace wigsim
