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

#include "wigsim/wigner.h"

#include <algorithm>
#include <cctype>

#include "wigsim/errors.h"

namespace wigsim {

namespace {

void require_square_dim(const DenseOperator &m, int p, int n) {
    uint64_t d = checked_pow(p, n);
    if (static_cast<uint64_t>(m.rows()) != d || static_cast<uint64_t>(m.cols()) != d) {
        throw InvalidArgument("operator has dimension " + std::to_string(m.rows()) + ", expected " +
                              std::to_string(d));
    }
}

std::vector<int> digits_of(uint64_t index, int p, int n) {
    std::vector<int> out(n);
    for (int k = n - 1; k >= 0; k--) {
        out[k] = static_cast<int>(index % static_cast<uint64_t>(p));
        index /= static_cast<uint64_t>(p);
    }
    return out;
}

}  // namespace

QuantumState::QuantumState(DenseOperator rho, int p, int n) : rho_(std::move(rho)), p_(p), n_(n) {
    require_odd_prime(p);
    require_square_dim(rho_, p, n);
    if (!is_hermitian(rho_, 1e-12)) {
        throw InvalidArgument("density operator is not Hermitian");
    }
    if (std::abs(rho_.trace() - cplx(1.0)) > 1e-10) {
        throw InvalidArgument("density operator trace is not 1");
    }
    if (min_eigenvalue(rho_) < -1e-9) {
        throw InvalidArgument("density operator has a negative eigenvalue");
    }
}

double WignerFunction::sum() const {
    double acc = 0;
    for (double v : values) {
        acc += v;
    }
    return acc;
}

std::pair<double, PhasePoint> WignerFunction::minimum() const {
    size_t best = 0;
    for (size_t k = 1; k < values.size(); k++) {
        if (values[k] < values[best]) {
            best = k;
        }
    }
    return {values[best], PhasePoint::from_index(p, n, best)};
}

Povm::Povm(std::vector<std::pair<std::string, DenseOperator>> effects, int p, int n)
    : effects_(std::move(effects)), p_(p), n_(n) {
    require_odd_prime(p);
    if (effects_.empty()) {
        throw InvalidArgument("POVM has no effects");
    }
    uint64_t d = checked_pow(p, n);
    DenseOperator total = DenseOperator::Zero(d, d);
    for (const auto &[label, e] : effects_) {
        if (label.size() != 1 || !std::isalnum(static_cast<unsigned char>(label[0]))) {
            throw InvalidArgument("POVM outcome label '" + label + "' must be one character of [0-9A-Za-z]");
        }
        require_square_dim(e, p, n);
        if (!is_hermitian(e, 1e-9)) {
            throw InvalidArgument("POVM effect " + label + " is not Hermitian");
        }
        if (min_eigenvalue(e) < -1e-9) {
            throw InvalidArgument("POVM effect " + label + " is not positive semidefinite");
        }
        total += e;
    }
    for (size_t a = 0; a < effects_.size(); a++) {
        for (size_t b = a + 1; b < effects_.size(); b++) {
            if (effects_[a].first == effects_[b].first) {
                throw InvalidArgument("duplicate POVM outcome label " + effects_[a].first);
            }
        }
    }
    if ((total - DenseOperator::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9) {
        throw InvalidArgument("POVM effects do not sum to the identity");
    }
}

Povm Povm::computational(int p) {
    return mub(p, 0);
}

Povm Povm::mub(int p, int basis) {
    std::vector<std::pair<std::string, DenseOperator>> effects;
    for (int j = 0; j < p; j++) {
        DenseVector v = mub_vector(p, basis, j);
        effects.emplace_back(std::to_string(j), v * v.adjoint());
    }
    return Povm(std::move(effects), p, 1);
}

int Povm::find(const std::string &label) const {
    for (size_t k = 0; k < effects_.size(); k++) {
        if (effects_[k].first == label) {
            return static_cast<int>(k);
        }
    }
    return -1;
}

bool is_hermitian(const DenseOperator &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const DenseOperator &m) {
    DenseOperator h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

WignerFunction wigner_values(const DenseOperator &m, int p, int n, WignerKind kind) {
    require_odd_prime(p);
    require_square_dim(m, p, n);
    WignerFunction w;
    w.p = p;
    w.n = n;
    w.kind = kind;
    double scale = kind == WignerKind::State ? 1.0 / static_cast<double>(m.rows()) : 1.0;
    uint64_t count = checked_pow(p, 2 * n);
    w.values.resize(count);
    for (uint64_t k = 0; k < count; k++) {
        w.values[k] = scale * phase_point_monomial(PhasePoint::from_index(p, n, k)).trace_against(m).real();
    }
    return w;
}

WignerFunction wigner_of_state(const QuantumState &rho) {
    return wigner_values(rho.rho(), rho.p(), rho.n(), WignerKind::State);
}

WignerFunction wigner_of_effect(const DenseOperator &effect, int p, int n) {
    if (!is_hermitian(effect, 1e-9)) {
        throw InvalidArgument("effect is not Hermitian");
    }
    return wigner_values(effect, p, n, WignerKind::Effect);
}

DenseOperator state_from_wigner(const WignerFunction &w) {
    uint64_t d = checked_pow(w.p, w.n);
    if (w.values.size() != d * d) {
        throw InvalidArgument("Wigner function has the wrong number of values");
    }
    DenseOperator result = DenseOperator::Zero(d, d);
    for (uint64_t k = 0; k < w.values.size(); k++) {
        if (w.values[k] == 0.0) {
            continue;
        }
        MonomialOperator a = phase_point_monomial(PhasePoint::from_index(w.p, w.n, k));
        for (size_t c = 0; c < a.dim(); c++) {
            result(a.row[c], c) += w.values[k] * omega_power(a.p, a.omega_exp[c]);
        }
    }
    return result;
}

double born_probability(const WignerFunction &state, const WignerFunction &effect) {
    if (state.p != effect.p || state.values.size() != effect.values.size()) {
        throw InvalidArgument("Wigner functions live on different phase spaces");
    }
    double acc = 0;
    for (size_t k = 0; k < state.values.size(); k++) {
        acc += state.values[k] * effect.values[k];
    }
    return acc;
}

double negativity_F(const QuantumState &rho) {
    return negativity_F(rho.rho(), rho.p(), rho.n());
}

double negativity_F(const DenseOperator &m, int p, int n) {
    return wigner_values(m, p, n, WignerKind::Effect).minimum().first;
}

bool is_positively_represented(const DenseOperator &m, int p, int n, WignerKind kind, double tol) {
    return wigner_values(m, p, n, kind).minimum().first >= -tol;
}

DenseOperator partial_trace_keep(const DenseOperator &m, int p, int n, const std::vector<int> &keep) {
    require_square_dim(m, p, n);
    std::vector<bool> kept(n, false);
    for (int r : keep) {
        if (r < 0 || r >= n || kept[r]) {
            throw InvalidArgument("bad register list for partial trace");
        }
        kept[r] = true;
    }
    uint64_t d = checked_pow(p, n);
    uint64_t dk = checked_pow(p, static_cast<int>(keep.size()));
    DenseOperator out = DenseOperator::Zero(dk, dk);
    std::vector<std::vector<int>> digits(d);
    std::vector<uint64_t> kept_index(d);
    for (uint64_t i = 0; i < d; i++) {
        digits[i] = digits_of(i, p, n);
        uint64_t idx = 0;
        for (int r : keep) {
            idx = idx * static_cast<uint64_t>(p) + static_cast<uint64_t>(digits[i][r]);
        }
        kept_index[i] = idx;
    }
    for (uint64_t r = 0; r < d; r++) {
        for (uint64_t c = 0; c < d; c++) {
            bool same = true;
            for (int k = 0; k < n && same; k++) {
                if (!kept[k] && digits[r][k] != digits[c][k]) {
                    same = false;
                }
            }
            if (same) {
                out(kept_index[r], kept_index[c]) += m(r, c);
            }
        }
    }
    return out;
}

}  // namespace wigsim
