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

#include "wigsim/distill.h"

#include <algorithm>
#include <cmath>

#include "wigsim/circuit.h"
#include "wigsim/errors.h"
#include "wigsim/text_io.h"

namespace wigsim {

namespace {

DenseOperator apply_channel(const DistillationInstance &inst, const DenseOperator &rho) {
    switch (inst.channel) {
        case ChannelKind::Identity:
            return rho;
        case ChannelKind::Clifford: {
            DenseOperator u = word_unitary(inst.word, inst.p, inst.n);
            return u * rho * u.adjoint();
        }
        case ChannelKind::Kraus: {
            DenseOperator out = DenseOperator::Zero(rho.rows(), rho.cols());
            for (const auto &k : inst.kraus) {
                out += k * rho * k.adjoint();
            }
            return out;
        }
    }
    return rho;
}

DenseOperator kron_all(const std::vector<DenseOperator> &ops) {
    DenseOperator out = ops.at(0);
    for (size_t k = 1; k < ops.size(); k++) {
        out = kron(out, ops[k]);
    }
    return out;
}

void check_projector(const DenseOperator &proj, int p, int n) {
    uint64_t da = checked_pow(p, n - 1);
    if (static_cast<uint64_t>(proj.rows()) != da || static_cast<uint64_t>(proj.cols()) != da) {
        throw InvalidArgument("projector must act on the last n-1 registers (dimension " + std::to_string(da) + ")");
    }
    if (!is_hermitian(proj, 1e-9) || (proj * proj - proj).cwiseAbs().maxCoeff() > 1e-9) {
        throw InvalidArgument("post-selection operator is not a projector");
    }
    auto [w, u] = wigner_values(proj, p, n - 1, WignerKind::Effect).minimum();
    if (w < -1e-10) {
        throw InvalidArgument("projector is negatively represented: W" + u.str() + " = " + fmt12(w));
    }
}

}  // namespace

DistillResult distill_step(const DistillationInstance &inst) {
    require_odd_prime(inst.p);
    if (inst.n < 2) {
        throw InvalidArgument("distillation needs at least one ancilla register");
    }
    uint64_t d = checked_pow(inst.p, inst.n);
    if (static_cast<uint64_t>(inst.rho_in.rows()) != d) {
        throw InvalidArgument("input state has the wrong dimension");
    }
    QuantumState checked(inst.rho_in, inst.p, inst.n);
    check_projector(inst.projector, inst.p, inst.n);
    if (inst.channel == ChannelKind::Kraus) {
        if (!inst.positivity_asserted) {
            throw InvalidArgument("Kraus channels need an explicit positivity-preserving assertion");
        }
        if (inst.kraus.empty()) {
            throw InvalidArgument("Kraus channel has no operators");
        }
        for (const auto &k : inst.kraus) {
            if (static_cast<uint64_t>(k.rows()) != d || static_cast<uint64_t>(k.cols()) != d) {
                throw InvalidArgument("Kraus operator has the wrong dimension");
            }
        }
        if (inst.check_positivity) {
            double worst = check_positivity_preservation(inst.kraus, inst.p, inst.n, 200, 0x5eed);
            if (worst < -1e-8) {
                throw InvalidArgument("Kraus map does not preserve positivity on the random sample (F = " +
                                      fmt12(worst) + ")");
            }
        }
    }

    DistillResult res;
    res.f_in = negativity_F(inst.rho_in, inst.p, inst.n);
    bool negative_input = res.f_in < -1e-10;
    if (negative_input && !inst.force) {
        throw InputNegativelyRepresented("input state has F(rho) = " + fmt12(res.f_in) + " < 0");
    }
    DenseOperator sigma = apply_channel(inst, inst.rho_in);
    DenseOperator post = kron(DenseOperator::Identity(inst.p, inst.p), inst.projector);
    DenseOperator m = post * sigma * post;
    res.probability = m.trace().real();
    if (res.probability < 1e-12) {
        throw ZeroProbabilityBranch("post-selection probability " + fmt12(res.probability) + " is below 1e-12");
    }
    res.rho_out = partial_trace_keep(m, inst.p, inst.n, {0}) / res.probability;
    res.f_out = negativity_F(res.rho_out, inst.p, 1);
    if (!negative_input) {
        res.pass = res.f_out >= -1e-8;
    }
    return res;
}

double check_positivity_preservation(const std::vector<DenseOperator> &kraus, int p, int n, size_t samples,
                                     uint64_t seed) {
    double worst = INFINITY;
    for (size_t s = 0; s < samples; s++) {
        SplitMix64 rng = SplitMix64::stream(seed, s);
        std::vector<DenseOperator> parts;
        for (int r = 0; r < n; r++) {
            parts.push_back(random_positive_state(p, rng));
        }
        DenseOperator rho = kron_all(parts);
        DenseOperator out = DenseOperator::Zero(rho.rows(), rho.cols());
        for (const auto &k : kraus) {
            out += k * rho * k.adjoint();
        }
        worst = std::min(worst, negativity_F(out, p, n));
    }
    return worst;
}

DistillationInstance parse_distill_instance(const std::string &text, const std::filesystem::path &base) {
    auto lines = source_lines(text);
    if (lines.empty() || tokenize(lines[0].text).size() != 2 || tokenize(lines[0].text)[0].text != "distill" ||
        tokenize(lines[0].text)[1].text != "v1") {
        throw ParseError("instance must start with 'distill v1'", lines.empty() ? 1 : lines[0].number);
    }
    DistillationInstance inst;
    bool have_qudits = false, have_input = false, have_channel = false, have_project = false;
    auto wrap = [](int line, int column, auto &&fn) {
        try {
            return fn();
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            throw ParseError(e.what(), line, column);
        }
    };
    for (size_t li = 1; li < lines.size(); li++) {
        const int ln = lines[li].number;
        auto toks = tokenize(lines[li].text);
        const std::string &kw = toks[0].text;
        if (kw == "qudits") {
            if (have_qudits || toks.size() != 3 || toks[1].text.rfind("p=", 0) != 0 ||
                toks[2].text.rfind("n=", 0) != 0) {
                throw ParseError("expected a single 'qudits p=<p> n=<n>'", ln);
            }
            try {
                inst.p = std::stoi(toks[1].text.substr(2));
                inst.n = std::stoi(toks[2].text.substr(2));
            } catch (const std::logic_error &) {
                throw ParseError("bad qudits line", ln);
            }
            wrap(ln, toks[1].column, [&]() {
                require_odd_prime(inst.p);
                return 0;
            });
            if (inst.n < 2 || checked_pow(inst.p, inst.n) > 243) {
                throw ParseError("need n >= 2 and p^n <= 243", ln, toks[2].column);
            }
            have_qudits = true;
            continue;
        }
        if (!have_qudits) {
            throw ParseError("'qudits' must come first", ln, toks[0].column);
        }
        if (kw == "input") {
            if (have_input) {
                throw ParseError("duplicate 'input'", ln);
            }
            if (toks.size() == 2 && toks[1].text.rfind("matrix-file:", 0) == 0) {
                std::filesystem::path path = toks[1].text.substr(12);
                inst.rho_in = wrap(ln, toks[1].column, [&]() {
                    return read_matrix_file(path.is_absolute() ? path : base / path);
                });
                if (static_cast<uint64_t>(inst.rho_in.rows()) != checked_pow(inst.p, inst.n)) {
                    throw ParseError("input matrix has the wrong dimension", ln, toks[1].column);
                }
            } else if (toks.size() == static_cast<size_t>(inst.n) + 1) {
                std::vector<DenseOperator> parts;
                for (int r = 0; r < inst.n; r++) {
                    parts.push_back(
                        wrap(ln, toks[r + 1].column, [&]() { return resolve_preset(toks[r + 1].text, inst.p, base); }));
                }
                inst.rho_in = kron_all(parts);
            } else {
                throw ParseError("expected one preset per register or a single matrix-file", ln);
            }
            have_input = true;
        } else if (kw == "channel") {
            if (have_channel || toks.size() < 2) {
                throw ParseError("expected a single 'channel ...' line", ln);
            }
            const std::string &kind = toks[1].text;
            if (kind == "identity" && toks.size() == 2) {
                inst.channel = ChannelKind::Identity;
            } else if (kind == "clifford" && toks.size() >= 3) {
                inst.channel = ChannelKind::Clifford;
                std::string word;
                for (size_t k = 2; k < toks.size(); k++) {
                    word += toks[k].text;
                }
                inst.word = parse_generator_word(word, inst.p, ln, toks[2].column);
                for (const auto &g : inst.word) {
                    wrap(ln, toks[2].column, [&]() {
                        validate_generator(g, inst.p, inst.n);
                        return 0;
                    });
                }
            } else if (kind == "kraus" && toks.size() >= 3 && toks[2].text == "positivity-preserving") {
                inst.channel = ChannelKind::Kraus;
                inst.positivity_asserted = true;
                if (toks.size() == 4 && toks[3].text == "check") {
                    inst.check_positivity = true;
                } else if (toks.size() != 3) {
                    throw ParseError("unexpected text after 'positivity-preserving'", ln, toks[3].column);
                }
            } else if (kind == "kraus") {
                throw ParseError("Kraus channels must be declared 'positivity-preserving'", ln, toks[1].column);
            } else {
                throw ParseError("unknown channel '" + kind + "'", ln, toks[1].column);
            }
            have_channel = true;
        } else if (kw == "kraus") {
            if (!have_channel || inst.channel != ChannelKind::Kraus) {
                throw ParseError("'kraus' lines need a preceding 'channel kraus'", ln);
            }
            if (toks.size() != 2 || toks[1].text.rfind("matrix-file:", 0) != 0) {
                throw ParseError("expected 'kraus matrix-file:<path>'", ln);
            }
            std::filesystem::path path = toks[1].text.substr(12);
            inst.kraus.push_back(
                wrap(ln, toks[1].column, [&]() { return read_matrix_file(path.is_absolute() ? path : base / path); }));
        } else if (kw == "project") {
            if (have_project) {
                throw ParseError("duplicate 'project'", ln);
            }
            if (toks.size() == 2 && toks[1].text.rfind("matrix-file:", 0) == 0) {
                std::filesystem::path path = toks[1].text.substr(12);
                inst.projector = wrap(ln, toks[1].column, [&]() {
                    return read_matrix_file(path.is_absolute() ? path : base / path);
                });
            } else if (toks.size() == static_cast<size_t>(inst.n)) {
                std::vector<DenseOperator> parts;
                for (int r = 1; r < inst.n; r++) {
                    parts.push_back(
                        wrap(ln, toks[r].column, [&]() { return resolve_preset(toks[r].text, inst.p, base); }));
                }
                inst.projector = kron_all(parts);
            } else {
                throw ParseError("expected one preset per ancilla register or a single matrix-file", ln);
            }
            have_project = true;
        } else if (kw == "force") {
            inst.force = true;
        } else {
            throw ParseError("unknown directive '" + kw + "'", ln, toks[0].column);
        }
    }
    const int last = lines.back().number;
    if (!have_qudits || !have_input || !have_channel || !have_project) {
        throw ParseError("instance needs qudits, input, channel and project lines", last);
    }
    if (inst.channel == ChannelKind::Kraus && inst.kraus.empty()) {
        throw ParseError("Kraus channel has no 'kraus' lines", last);
    }
    return inst;
}

DistillationInstance random_distill_instance(int p, int n, size_t length, SplitMix64 &rng) {
    DistillationInstance inst;
    inst.p = p;
    inst.n = n;
    std::vector<DenseOperator> parts;
    for (int r = 0; r < n; r++) {
        parts.push_back(random_positive_state(p, rng));
    }
    inst.rho_in = kron_all(parts);
    inst.channel = ChannelKind::Clifford;
    inst.word = random_clifford_word(p, n, length, rng);
    DenseOperator u = word_unitary(inst.word, p, n);
    DenseOperator sigma = u * inst.rho_in * u.adjoint();
    for (int attempt = 0; attempt < 1000; attempt++) {
        std::vector<DenseOperator> proj;
        for (int r = 1; r < n; r++) {
            DenseVector v = random_stabilizer_vector(p, rng);
            proj.push_back(v * v.adjoint());
        }
        inst.projector = kron_all(proj);
        DenseOperator post = kron(DenseOperator::Identity(p, p), inst.projector);
        if ((post * sigma).trace().real() >= 1e-9) {
            return inst;
        }
    }
    throw ZeroProbabilityBranch("no stabilizer projector with nonzero post-selection probability found");
}

}  // namespace wigsim
