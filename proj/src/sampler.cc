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

#include "wigsim/sampler.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "wigsim/errors.h"

namespace wigsim {

namespace {

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<double> cumulative(const std::vector<double> &weights) {
    std::vector<double> cdf(weights.size());
    double acc = 0;
    for (size_t k = 0; k < weights.size(); k++) {
        acc += std::max(0.0, weights[k]);
        cdf[k] = acc;
    }
    return cdf;
}

// Wigner distribution of a single-qudit state, over local index a1*p + a2.
std::vector<double> state_cdf(const DenseOperator &rho, int p) {
    return cumulative(wigner_values(rho, p, 1, WignerKind::State).values);
}

struct Compiled {
    int p = 3;
    std::vector<std::vector<double>> input_cdf;
    /// Per pc: extend cdf, or per phase point the outcome cdf of a measurement.
    std::vector<std::vector<double>> extend_cdf;
    std::vector<std::vector<std::vector<double>>> outcome_cdf;
};

Compiled compile(const CircuitProgram &prog) {
    if (prog.max_registers == 0) {
        throw InvalidArgument("sampler needs a validated program");
    }
    Compiled c;
    c.p = prog.p;
    const int p = prog.p;
    for (const auto &in : prog.inputs) {
        c.input_cdf.push_back(state_cdf(in, p));
    }
    c.extend_cdf.resize(prog.code.size());
    c.outcome_cdf.resize(prog.code.size());
    for (size_t pc = 0; pc < prog.code.size(); pc++) {
        const Instruction &ins = prog.code[pc];
        if (ins.kind == InstrKind::Extend) {
            c.extend_cdf[pc] = state_cdf(ins.extend_state, p);
        } else if (ins.kind == InstrKind::Measure) {
            std::vector<std::vector<double>> w;
            for (size_t k = 0; k < ins.povm->size(); k++) {
                w.push_back(wigner_values(ins.povm->effect(k), p, 1, WignerKind::Effect).values);
            }
            auto &table = c.outcome_cdf[pc];
            table.resize(static_cast<size_t>(p) * p);
            for (size_t u = 0; u < table.size(); u++) {
                std::vector<double> probs;
                for (const auto &wk : w) {
                    probs.push_back(wk[u]);
                }
                table[u] = cumulative(probs);
            }
        }
    }
    return c;
}

void sample_block(std::vector<int> &u, int reg, const std::vector<double> &cdf, int p, SplitMix64 &rng) {
    size_t k = sample_cdf(cdf, rng);
    u[2 * reg] = static_cast<int>(k / p);
    u[2 * reg + 1] = static_cast<int>(k % p);
}

void apply_matrix(const ModMatrix &f, std::vector<int> &u, std::vector<int> &scratch, int p, uint64_t &ops) {
    const size_t m = f.rows();
    const auto &data = f.data();
    for (size_t i = 0; i < m; i++) {
        int64_t acc = 0;
        for (size_t j = 0; j < m; j++) {
            acc += static_cast<int64_t>(data[i * m + j]) * u[j];
        }
        scratch[i] = mod(acc, p);
    }
    ops += m * m;
    std::copy(scratch.begin(), scratch.begin() + m, u.begin());
}

// One shot; returns the outcome string.
std::string run_shot(const CircuitProgram &prog, const Compiled &c, SplitMix64 &rng, uint64_t &ops) {
    const int p = prog.p;
    std::vector<int> u(2 * prog.max_registers, 0);
    std::vector<int> scratch(2 * prog.max_registers, 0);
    std::vector<char> labels(prog.max_registers, 0);
    int registers = prog.n;
    for (int r = 0; r < prog.n; r++) {
        sample_block(u, r, c.input_cdf[r], p, rng);
    }
    size_t pc = 0;
    while (pc < prog.code.size()) {
        const Instruction &ins = prog.code[pc];
        switch (ins.kind) {
            case InstrKind::Gate:
                apply_matrix(ins.element.f.matrix(), u, scratch, p, ops);
                pc++;
                break;
            case InstrKind::Displace:
                u[2 * ins.reg] = mod(u[2 * ins.reg] + ins.a1, p);
                u[2 * ins.reg + 1] = mod(u[2 * ins.reg + 1] + ins.a2, p);
                ops += 2;
                pc++;
                break;
            case InstrKind::Extend:
                for (int k = 0; k < ins.count; k++) {
                    sample_block(u, registers++, c.extend_cdf[pc], p, rng);
                }
                pc++;
                break;
            case InstrKind::Goto:
                pc = ins.target;
                break;
            case InstrKind::Halt:
                pc = prog.code.size();
                break;
            case InstrKind::Measure: {
                size_t local = static_cast<size_t>(u[2 * ins.reg]) * p + u[2 * ins.reg + 1];
                size_t k = sample_cdf(c.outcome_cdf[pc][local], rng);
                labels[ins.reg] = ins.povm->label(k)[0];
                pc = ins.branch.empty() ? pc + 1 : ins.branch[k];
                break;
            }
        }
    }
    return std::string(labels.begin(), labels.begin() + registers);
}

}  // namespace

SplitMix64 SplitMix64::stream(uint64_t seed, uint64_t index) {
    return SplitMix64(mix64(seed ^ 0x243f6a8885a308d3ULL) ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

uint64_t SplitMix64::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
}

double SplitMix64::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

uint64_t SplitMix64::below(uint64_t bound) {
    if (bound == 0) {
        throw InvalidArgument("empty range");
    }
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    while (true) {
        uint64_t x = next();
        if (x < limit) {
            return x % bound;
        }
    }
}

double SplitMix64::normal() {
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

size_t sample_cdf(const std::vector<double> &cdf, SplitMix64 &rng) {
    double x = rng.uniform() * cdf.back();
    size_t k = static_cast<size_t>(std::upper_bound(cdf.begin(), cdf.end(), x) - cdf.begin());
    if (k >= cdf.size()) {
        k = cdf.size() - 1;
    }
    // only the clamped case can land on a zero-width cell
    while (k > 0 && cdf[k] == cdf[k - 1]) {
        k--;
    }
    return k;
}

SampleReport sample_classical(const CircuitProgram &prog, const SampleOptions &options) {
    Compiled c = compile(prog);
    SampleReport rep;
    rep.shots = options.shots;
    rep.seed = options.seed;
    const int jobs = static_cast<int>(std::max<uint64_t>(1, std::min<uint64_t>(options.jobs, options.shots)));
    std::vector<std::map<std::string, uint64_t>> counts(jobs);
    std::vector<uint64_t> ops(jobs, 0);
    auto work = [&](int t) {
        uint64_t lo = options.shots * t / jobs;
        uint64_t hi = options.shots * (t + 1) / jobs;
        for (uint64_t shot = lo; shot < hi; shot++) {
            SplitMix64 rng = SplitMix64::stream(options.seed, shot);
            counts[t][run_shot(prog, c, rng, ops[t])]++;
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; t++) {
            pool.emplace_back(work, t);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (int t = 0; t < jobs; t++) {
        for (const auto &[k, v] : counts[t]) {
            rep.counts[k] += v;
        }
        rep.field_ops += ops[t];
    }
    return rep;
}

std::vector<PhasePoint> sample_gate_images(const CircuitProgram &prog, uint64_t seed, size_t count) {
    Compiled c = compile(prog);
    const int p = prog.p;
    std::vector<PhasePoint> out;
    for (size_t s = 0; s < count; s++) {
        SplitMix64 rng = SplitMix64::stream(seed, s);
        std::vector<int> u(2 * prog.n), scratch(2 * prog.n);
        for (int r = 0; r < prog.n; r++) {
            sample_block(u, r, c.input_cdf[r], p, rng);
        }
        uint64_t ops = 0;
        for (const auto &ins : prog.code) {
            if (ins.kind == InstrKind::Gate) {
                apply_matrix(ins.element.f.matrix(), u, scratch, p, ops);
            } else if (ins.kind == InstrKind::Displace) {
                u[2 * ins.reg] = mod(u[2 * ins.reg] + ins.a1, p);
                u[2 * ins.reg + 1] = mod(u[2 * ins.reg + 1] + ins.a2, p);
            } else {
                break;
            }
        }
        out.emplace_back(p, u);
    }
    return out;
}

std::vector<PhasePoint> affine_span(const std::vector<PhasePoint> &points) {
    if (points.empty()) {
        return {};
    }
    const int p = points[0].p();
    const size_t m = points[0].size();
    // Row-reduce the difference vectors.
    std::vector<std::vector<int>> basis;
    std::vector<size_t> pivots;
    for (size_t k = 1; k < points.size(); k++) {
        std::vector<int> v(m);
        for (size_t i = 0; i < m; i++) {
            v[i] = mod(points[k][i] - points[0][i], p);
        }
        for (size_t b = 0; b < basis.size(); b++) {
            int f = v[pivots[b]];
            if (f) {
                for (size_t i = 0; i < m; i++) {
                    v[i] = mod(v[i] - static_cast<int64_t>(f) * basis[b][i], p);
                }
            }
        }
        size_t piv = 0;
        while (piv < m && v[piv] == 0) {
            piv++;
        }
        if (piv == m) {
            continue;
        }
        int inv = inv_mod(v[piv], p);
        for (auto &x : v) {
            x = mod(static_cast<int64_t>(x) * inv, p);
        }
        for (size_t b = 0; b < basis.size(); b++) {
            int f = basis[b][piv];
            if (f) {
                for (size_t i = 0; i < m; i++) {
                    basis[b][i] = mod(basis[b][i] - static_cast<int64_t>(f) * v[i], p);
                }
            }
        }
        basis.push_back(v);
        pivots.push_back(piv);
    }
    std::vector<PhasePoint> out;
    uint64_t total = checked_pow(p, static_cast<int>(basis.size()));
    for (uint64_t idx = 0; idx < total; idx++) {
        std::vector<int> v = points[0].coords();
        uint64_t rem = idx;
        for (const auto &b : basis) {
            int c = static_cast<int>(rem % p);
            rem /= p;
            for (size_t i = 0; i < m; i++) {
                v[i] = mod(v[i] + static_cast<int64_t>(c) * b[i], p);
            }
        }
        out.emplace_back(p, v);
    }
    std::sort(out.begin(), out.end(), [](const PhasePoint &a, const PhasePoint &b) { return a.index() < b.index(); });
    return out;
}

}  // namespace wigsim
