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

#include "wigsim/cli.h"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "wigsim/circuit.h"
#include "wigsim/distill.h"
#include "wigsim/errors.h"
#include "wigsim/oracle.h"
#include "wigsim/sampler.h"
#include "wigsim/slice.h"
#include "wigsim/stabilizer.h"
#include "wigsim/stats.h"
#include "wigsim/text_io.h"

namespace wigsim {

namespace {

StabilizerSet stabilizers_for(int p, int n) {
    if (n == 1) {
        return mub_stabilizer_states(p);
    }
    return clifford_orbit_stabilizers(p, n, static_cast<size_t>(stabilizer_state_count(p, n)));
}

std::string point_columns(const PhasePoint &u) {
    std::string s;
    for (size_t k = 0; k < u.size(); k++) {
        s += (k ? "," : "") + std::to_string(u[k]);
    }
    return s;
}

std::string point_header(int n) {
    std::string s;
    for (int b = 1; b <= n; b++) {
        s += (b > 1 ? "," : "") + std::string("z") + std::to_string(b) + ",x" + std::to_string(b);
    }
    return s;
}

int cmd_wigner(const std::string &state, int p, int n, std::ostream &out) {
    std::vector<mpq_class> exact;
    DenseOperator rho = load_state_argument(state, p, n, &exact);
    QuantumState q(rho, p, n);
    WignerFunction w = wigner_of_state(q);
    out << format_header("command=wigner p=" + std::to_string(p) + " n=" + std::to_string(n)) << "\n";
    out << "index," << point_header(n) << ",wigner\n";
    for (size_t k = 0; k < w.values.size(); k++) {
        PhasePoint u = PhasePoint::from_index(p, n, k);
        out << k << "," << point_columns(u) << "," << fmt12(w.values[k]) << "\n";
    }
    auto [wmin, umin] = w.minimum();
    out << "# min_wigner=" << fmt12(wmin) << " at=" << umin.str() << " F=" << fmt12(negativity_F(q))
        << " representation=" << (wmin < -1e-12 ? "NEGATIVE" : "POSITIVE") << "\n";
    return kExitPass;
}

int cmd_classify(const std::string &state, int p, int n, std::ostream &out) {
    std::vector<mpq_class> exact;
    DenseOperator rho = load_state_argument(state, p, n, &exact);
    if (!is_hermitian(rho, 1e-12)) {
        throw InvalidArgument("operator is not Hermitian");
    }
    if (std::abs(rho.trace() - cplx(1.0)) > 1e-10) {
        throw InvalidArgument("operator trace is not 1");
    }
    StabilizerSet s = stabilizers_for(p, n);
    Classification c = classify_state(rho, s, exact.empty() ? nullptr : &exact);
    out << format_header("command=classify p=" + std::to_string(p) + " n=" + std::to_string(n)) << "\n";
    out << "label,min_eig,min_wigner,F,lp_margin\n";
    double margin = NAN;
    if (c.label == ClassLabel::Bound) {
        margin = c.hull->margin;
    } else if (c.label == ClassLabel::StabilizerMix) {
        margin = 0;
    }
    out << label_name(c.label) << "," << fmt12(c.min_eig) << "," << fmt12(c.min_wigner) << ","
        << fmt12(c.min_wigner * static_cast<double>(s.dim())) << "," << fmt12(margin) << "\n";
    if (c.hull && c.hull->inside) {
        out << "# convex weights over stabilizer vertices (residual " << fmt12(c.hull->residual) << ")\n";
        for (size_t i = 0; i < c.hull->weights.size(); i++) {
            if (c.hull->weights[i] > 1e-12) {
                out << "# vertex " << i << " weight " << fmt12(c.hull->weights[i]) << "\n";
            }
        }
    } else if (c.hull) {
        out << "# separating witness H: Tr(H rho) - max_i Tr(H S_i) = " << fmt12(c.hull->margin)
            << (c.hull->exact ? " (exact LP)" : "") << "\n";
        std::istringstream m(matrix_to_text(c.hull->witness));
        std::string line;
        while (std::getline(m, line)) {
            out << "# " << line << "\n";
        }
    }
    return kExitPass;
}

int cmd_facets(int p, int n, std::ostream &out) {
    StabilizerSet s = stabilizers_for(p, n);
    out << format_header("command=facets p=" + std::to_string(p) + " n=" + std::to_string(n) +
                         " vertices=" + std::to_string(s.size()))
        << "\n";
    out << "index," << point_header(n)
        << ",min_value,all_vertices_nonnegative,saturating_count,saturating_span_dim,is_facet\n";
    bool all = true;
    for (const auto &u : all_phase_points(p, n)) {
        FacetReport r = facet_check(u, s);
        all = all && r.is_facet;
        out << u.index() << "," << point_columns(u) << "," << fmt12(r.min_value) << ","
            << (r.all_vertices_nonnegative ? "true" : "false") << "," << r.saturating_count << ","
            << r.saturating_span_dim << "," << (r.is_facet ? "true" : "false") << "\n";
    }
    out << "# verdict=" << (all ? "PASS" : "FAIL") << "\n";
    return all ? kExitPass : kExitFail;
}

int cmd_slice(const std::string &path, int jobs, std::ostream &out) {
    SliceSpec spec = parse_slice_spec(read_text_file(path));
    StabilizerSet s = stabilizers_for(spec.p, spec.n);
    auto rows = slice_scan(spec, s, jobs);
    write_slice_csv(out, spec, rows);
    return kExitPass;
}

int cmd_sample(const std::string &path, uint64_t shots, std::optional<uint64_t> seed, bool oracle_check, int jobs,
               std::ostream &out, std::ostream &err) {
    CircuitProgram prog = load_circuit(path);
    ValidationReport rep = validate_circuit(prog);
    if (!rep.accepted) {
        err << "circuit rejected:\n";
        for (const auto &v : rep.violations) {
            err << "  " << (v.line ? "line " + std::to_string(v.line) + ": " : "") << v.message << "\n";
        }
        return kExitInvalid;
    }
    if (shots == 0) {
        out << format_header("command=sample p=" + std::to_string(prog.p) + " n=" + std::to_string(prog.n) +
                             " shots=0")
            << "\n";
        out << "# validation=ACCEPT\n";
        for (const auto &note : rep.notes) {
            out << "# " << note << "\n";
        }
        return kExitPass;
    }
    if (!seed) {
        throw InvalidArgument("--seed is required when --shots > 0");
    }
    OutcomeDistribution ref;
    if (oracle_check) {
        ref = run_oracle(prog);
    }
    SampleReport sr = sample_classical(prog, {*seed, shots, jobs});
    std::map<std::string, bool> keys;
    for (const auto &[k, v] : sr.counts) {
        keys[k] = true;
    }
    for (const auto &[k, v] : ref) {
        keys[k] = true;
    }
    out << format_header("command=sample p=" + std::to_string(prog.p) + " n=" + std::to_string(prog.n) +
                         " shots=" + std::to_string(shots) + " seed=" + std::to_string(*seed) +
                         " oracle=" + (oracle_check ? "on" : "off"))
        << "\n";
    out << "outcome,count,probability,reference_probability\n";
    for (const auto &[k, unused] : keys) {
        auto it = sr.counts.find(k);
        uint64_t c = it == sr.counts.end() ? 0 : it->second;
        auto rt = ref.find(k);
        out << k << "," << c << "," << fmt12(static_cast<double>(c) / static_cast<double>(shots)) << ","
            << fmt12(rt == ref.end() ? NAN : rt->second) << "\n";
    }
    out << "# field_ops=" << sr.field_ops << "\n";
    if (!oracle_check) {
        return kExitPass;
    }
    Comparison cmp = compare_distributions(ref, sr.counts, shots);
    out << "# tv=" << fmt12(cmp.tv) << " epsilon=" << fmt12(cmp.epsilon) << " chi2=" << fmt12(cmp.chi2)
        << " df=" << cmp.df << " p_value=" << fmt12(cmp.p_value) << " verdict=" << (cmp.pass ? "PASS" : "FAIL")
        << "\n";
    return cmp.pass ? kExitPass : kExitFail;
}

std::string verdict_text(const DistillResult &r) {
    if (!r.pass) {
        return "NONE";
    }
    return *r.pass ? "PASS" : "FAIL";
}

int cmd_distill(const std::string &path, std::optional<size_t> random, std::optional<uint64_t> seed, int length,
                std::ostream &out) {
    std::vector<std::pair<std::string, DistillResult>> results;
    std::vector<std::string> words;
    if (random) {
        if (!seed) {
            throw InvalidArgument("--random needs --seed");
        }
        if (!path.empty()) {
            throw InvalidArgument("give either an instance file or --random, not both");
        }
        out << format_header("command=distill-check random=" + std::to_string(*random) + " seed=" +
                             std::to_string(*seed) + " length=" + std::to_string(length))
            << "\n";
        for (size_t k = 0; k < *random; k++) {
            SplitMix64 rng = SplitMix64::stream(*seed, k);
            DistillationInstance inst = random_distill_instance(3, 2, static_cast<size_t>(length), rng);
            std::string name = "random-" + std::to_string(k);
            std::string word;
            for (const auto &g : inst.word) {
                word += (word.empty() ? "" : ";") + g.str();
            }
            words.push_back("# " + name + " word=" + word);
            results.emplace_back(name, distill_step(inst));
        }
    } else {
        if (path.empty()) {
            throw InvalidArgument("distill-check needs an instance file or --random");
        }
        std::filesystem::path fp(path);
        DistillationInstance inst =
            parse_distill_instance(read_text_file(fp), fp.parent_path().empty() ? "." : fp.parent_path());
        out << format_header("command=distill-check p=" + std::to_string(inst.p) + " n=" + std::to_string(inst.n))
            << "\n";
        results.emplace_back(fp.filename().string(), distill_step(inst));
    }
    out << "instance,F_in,F_out,probability,verdict\n";
    bool all = true;
    for (const auto &[name, r] : results) {
        all = all && r.pass.value_or(true);
        out << name << "," << fmt12(r.f_in) << "," << fmt12(r.f_out) << "," << fmt12(r.probability) << ","
            << verdict_text(r) << "\n";
    }
    for (const auto &w : words) {
        out << w << "\n";
    }
    out << "# verdict=" << (all ? "PASS" : "FAIL") << "\n";
    return all ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"wigsim: discrete Wigner functions and classical simulation for odd-prime qudits"};
    app.set_version_flag("--version", std::string("wigsim ") + kVersionString + " format=" + std::to_string(kFormatVersion));
    app.require_subcommand(1);

    std::string out_path;
    int p = 3, n = 1, jobs = 1;
    std::string input;

    auto *wig = app.add_subcommand("wigner", "Wigner function of a state");
    wig->add_option("state", input, "preset, matrix file or Wigner file")->required();
    wig->add_option("--p", p, "prime dimension")->capture_default_str();
    wig->add_option("--n", n, "number of qudits")->capture_default_str();
    wig->add_option("--out", out_path, "output file");

    auto *cls = app.add_subcommand("classify", "NEGATIVE / BOUND / STABILIZER_MIX / NONPHYSICAL");
    cls->add_option("state", input, "preset, matrix file or Wigner file")->required();
    cls->add_option("--p", p, "prime dimension")->capture_default_str();
    cls->add_option("--n", n, "number of qudits")->capture_default_str();
    cls->add_option("--out", out_path, "output file");

    auto *fac = app.add_subcommand("facets", "check that every A_u inequality is a facet");
    fac->add_option("--p", p, "prime dimension")->capture_default_str();
    fac->add_option("--n", n, "number of qudits")->capture_default_str();
    fac->add_option("--out", out_path, "output file");

    auto *sli = app.add_subcommand("slice", "scan a slice of state space");
    sli->add_option("spec", input, "slice spec file")->required();
    sli->add_option("--out", out_path, "output CSV");
    sli->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    uint64_t shots = 0;
    std::optional<uint64_t> seed;
    bool oracle_check = false;
    auto *smp = app.add_subcommand("sample", "classical sampling of a circuit");
    smp->add_option("circuit", input, "circuit file")->required();
    smp->add_option("--shots", shots, "number of shots (0: validate only)")->required();
    smp->add_option("--seed", seed, "RNG seed");
    smp->add_flag("--oracle-check", oracle_check, "compare against the dense oracle");
    smp->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    smp->add_option("--out", out_path, "output CSV");

    std::optional<size_t> random;
    int length = 10;
    auto *dis = app.add_subcommand("distill-check", "post-selection positivity check");
    dis->add_option("instance", input, "instance file");
    dis->add_option("--random", random, "run N random Clifford instances (p=3, n=2)");
    dis->add_option("--seed", seed, "RNG seed for --random");
    dis->add_option("--length", length, "generators per random word")->check(CLI::PositiveNumber);
    dis->add_option("--jobs", jobs, "accepted for uniformity; runs sequentially")->check(CLI::PositiveNumber);
    dis->add_option("--out", out_path, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitInvalid;
    }

    std::ostringstream buf;
    int code = kExitInvalid;
    try {
        if (*wig) {
            code = cmd_wigner(input, p, n, buf);
        } else if (*cls) {
            code = cmd_classify(input, p, n, buf);
        } else if (*fac) {
            code = cmd_facets(p, n, buf);
        } else if (*sli) {
            code = cmd_slice(input, jobs, buf);
        } else if (*smp) {
            code = cmd_sample(input, shots, seed, oracle_check, jobs, buf, err);
        } else if (*dis) {
            code = cmd_distill(input, random, seed, length, buf);
        }
    } catch (const SolverError &e) {
        err << "solver error: " << e.what() << "\n";
        return kExitFail;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    if (code == kExitInvalid) {
        return code;
    }
    if (out_path.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << out_path << "\n";
            return kExitInvalid;
        }
        f << buf.str();
        std::string text = buf.str();
        size_t pos = text.rfind("verdict=");
        if (pos != std::string::npos) {
            out << text.substr(pos, text.find('\n', pos) - pos) << "\n";
        }
    }
    return code;
}

}  // namespace wigsim
