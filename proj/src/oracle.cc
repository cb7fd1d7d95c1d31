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

#include "wigsim/oracle.h"

#include <functional>
#include <unordered_map>

#include "wigsim/errors.h"

namespace wigsim {

namespace {

DenseOperator psd_sqrt(const DenseOperator &e) {
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(0.5 * (e + e.adjoint()));
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

OutcomeDistribution run_oracle(const CircuitProgram &prog) {
    if (prog.max_registers == 0) {
        throw InvalidArgument("run_oracle needs a validated program");
    }
    if (checked_pow(prog.p, prog.max_registers) > kOracleMaxDim) {
        throw InvalidArgument("oracle is limited to p^n <= " + std::to_string(kOracleMaxDim) + "; this program reaches " +
                              std::to_string(prog.max_registers) + " registers");
    }
    const int p = prog.p;
    std::unordered_map<size_t, DenseOperator> unitary;
    std::unordered_map<size_t, std::vector<DenseOperator>> kraus;

    DenseOperator rho = prog.inputs[0];
    for (int r = 1; r < prog.n; r++) {
        rho = kron(rho, prog.inputs[r]);
    }

    OutcomeDistribution dist;
    std::function<void(size_t, const DenseOperator &, std::vector<std::string>)> run =
        [&](size_t pc, const DenseOperator &state, std::vector<std::string> labels) {
            DenseOperator cur = state;
            while (pc < prog.code.size()) {
                const Instruction &ins = prog.code[pc];
                switch (ins.kind) {
                    case InstrKind::Gate: {
                        auto it = unitary.find(pc);
                        if (it == unitary.end()) {
                            it = unitary.emplace(pc, word_unitary(ins.word, p, ins.registers)).first;
                        }
                        cur = it->second * cur * it->second.adjoint();
                        pc++;
                        break;
                    }
                    case InstrKind::Displace: {
                        DenseOperator t = weyl_operator(ins.element.a);
                        cur = t * cur * t.adjoint();
                        pc++;
                        break;
                    }
                    case InstrKind::Extend: {
                        for (int k = 0; k < ins.count; k++) {
                            cur = kron(cur, ins.extend_state);
                        }
                        labels.resize(labels.size() + ins.count);
                        pc++;
                        break;
                    }
                    case InstrKind::Goto:
                        pc = ins.target;
                        break;
                    case InstrKind::Halt:
                        pc = prog.code.size();
                        break;
                    case InstrKind::Measure: {
                        auto it = kraus.find(pc);
                        if (it == kraus.end()) {
                            std::vector<DenseOperator> ks;
                            for (size_t k = 0; k < ins.povm->size(); k++) {
                                ks.push_back(embed_operator(psd_sqrt(ins.povm->effect(k)), ins.reg, p, ins.registers));
                            }
                            it = kraus.emplace(pc, std::move(ks)).first;
                        }
                        for (size_t k = 0; k < ins.povm->size(); k++) {
                            const DenseOperator &kop = it->second[k];
                            DenseOperator next = kop * cur * kop.adjoint();
                            labels[ins.reg] = ins.povm->label(k);
                            size_t target = ins.branch.empty() ? pc + 1 : ins.branch[k];
                            run(target, next, labels);
                        }
                        return;
                    }
                }
            }
            std::string key;
            for (const auto &l : labels) {
                key += l;
            }
            dist[key] += cur.trace().real();
        };
    run(0, rho, std::vector<std::string>(prog.n));
    for (auto &[k, v] : dist) {
        if (v < 0 && v > -1e-12) {
            v = 0;
        }
    }
    return dist;
}

}  // namespace wigsim
