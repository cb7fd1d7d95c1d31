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

#include <string>
#include <utility>
#include <vector>

#include "wigsim/weyl.h"

namespace wigsim {

/// Density operator on n qudits of prime dimension p. Construction checks
/// Hermiticity (1e-12), unit trace (1e-10) and lambda_min >= -1e-9.
class QuantumState {
   public:
    QuantumState(DenseOperator rho, int p, int n);

    const DenseOperator &rho() const {
        return rho_;
    }
    int p() const {
        return p_;
    }
    int n() const {
        return n_;
    }

   private:
    DenseOperator rho_;
    int p_;
    int n_;
};

enum class WignerKind { State, Effect };

/// Real values over all p^{2n} phase points, in PhasePoint::index() order.
struct WignerFunction {
    int p = 3;
    int n = 1;
    WignerKind kind = WignerKind::State;
    std::vector<double> values;

    double at(const PhasePoint &u) const {
        return values.at(u.index());
    }
    double sum() const;
    /// Minimum value and the first point attaining it.
    std::pair<double, PhasePoint> minimum() const;
};

/// A POVM on `n` qudits. Effect labels are single characters [0-9A-Za-z] so
/// outcome strings can be concatenated without separators.
class Povm {
   public:
    /// Checks each effect is PSD (1e-9) and that they sum to I (1e-9).
    Povm(std::vector<std::pair<std::string, DenseOperator>> effects, int p, int n = 1);

    /// Projective measurement onto the computational basis, labels "0".."p-1".
    static Povm computational(int p);
    /// Projective measurement onto mub_vector(p, basis, j), label j.
    static Povm mub(int p, int basis);

    int p() const {
        return p_;
    }
    int n() const {
        return n_;
    }
    size_t size() const {
        return effects_.size();
    }
    const std::string &label(size_t k) const {
        return effects_[k].first;
    }
    const DenseOperator &effect(size_t k) const {
        return effects_[k].second;
    }
    /// Index of a label, or -1.
    int find(const std::string &label) const;

   private:
    std::vector<std::pair<std::string, DenseOperator>> effects_;
    int p_;
    int n_;
};

bool is_hermitian(const DenseOperator &m, double tol = 1e-12);
double min_eigenvalue(const DenseOperator &m);

/// W_rho(u) = Tr(A_u rho) / d.
WignerFunction wigner_of_state(const QuantumState &rho);
/// W_E(u) = Tr(A_u E). Throws if E is not Hermitian.
WignerFunction wigner_of_effect(const DenseOperator &effect, int p, int n);
/// Wigner values of an arbitrary Hermitian operator, with the state (1/d) or
/// effect (no 1/d) normalization. No physicality checks.
WignerFunction wigner_values(const DenseOperator &m, int p, int n, WignerKind kind);

/// sum_u W(u) A_u. Hermitian with trace sum_u W(u); may fail to be PSD.
DenseOperator state_from_wigner(const WignerFunction &w);

/// sum_u W_rho(u) W_E(u).
double born_probability(const WignerFunction &state, const WignerFunction &effect);

/// min_u Tr(A_u rho), i.e. d times the smallest Wigner value.
double negativity_F(const QuantumState &rho);
/// Same quantity for an operator that has not been validated as a state.
double negativity_F(const DenseOperator &m, int p, int n);

/// True iff every Wigner value of M is >= -tol.
bool is_positively_represented(const DenseOperator &m, int p, int n, WignerKind kind, double tol = 1e-10);

/// Reduced operator on the registers in `keep`, tracing the rest (registers
/// are 0-based, output order follows `keep`).
DenseOperator partial_trace_keep(const DenseOperator &m, int p, int n, const std::vector<int> &keep);

}  // namespace wigsim
