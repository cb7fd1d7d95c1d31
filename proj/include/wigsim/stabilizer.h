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

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "wigsim/wigner.h"

namespace wigsim {

enum class StabilizerProvenance { Mub, CliffordOrbit };

/// Number of pure stabilizer states on n qudits: p^n prod_{k=1..n} (p^k + 1).
uint64_t stabilizer_state_count(int p, int n);

/// Pure stabilizer states with their projectors and Wigner functions cached
/// at construction. Read-only afterwards.
class StabilizerSet {
   public:
    StabilizerSet(int p, int n, StabilizerProvenance provenance, std::vector<DenseVector> kets);

    int p() const {
        return p_;
    }
    int n() const {
        return n_;
    }
    size_t dim() const {
        return dim_;
    }
    size_t size() const {
        return kets_.size();
    }
    StabilizerProvenance provenance() const {
        return provenance_;
    }
    /// True when every stabilizer state of (p, n) is present.
    bool complete() const {
        return size() == stabilizer_state_count(p_, n_);
    }

    const DenseVector &ket(size_t i) const {
        return kets_[i];
    }
    const DenseOperator &projector(size_t i) const {
        return projectors_[i];
    }
    /// State-normalized Wigner values of vertex i.
    const std::vector<double> &wigner(size_t i) const {
        return wigner_[i];
    }
    /// Exact Wigner values (each is 0 or 1/p^n). Empty if rationalization
    /// failed for some vertex, which would mean the set is not stabilizer.
    const std::vector<std::vector<mpq_class>> &exact_wigner() const {
        return exact_wigner_;
    }

   private:
    int p_;
    int n_;
    size_t dim_;
    StabilizerProvenance provenance_;
    std::vector<DenseVector> kets_;
    std::vector<DenseOperator> projectors_;
    std::vector<std::vector<double>> wigner_;
    std::vector<std::vector<mpq_class>> exact_wigner_;
};

/// The p + 1 mutually unbiased bases of mub_vector(): p(p + 1) states.
StabilizerSet mub_stabilizer_states(int p);

/// Closure of |0...0> under fourier, quadratic, sum and unit displacements,
/// deduplicated by projector distance. Throws BudgetExceeded instead of
/// truncating when more than max_states states appear.
StabilizerSet clifford_orbit_stabilizers(int p, int n, size_t max_states);

/// Set equality of the projectors, up to tol in 1 - |<a|b>|^2.
bool same_state_set(const StabilizerSet &a, const StabilizerSet &b, double tol = 1e-8);

struct FacetReport {
    PhasePoint point;
    double min_value = 0;
    bool all_vertices_nonnegative = false;
    size_t saturating_count = 0;
    int saturating_span_dim = 0;
    bool is_facet = false;
};

/// Tests whether Tr(A_u rho) >= 0 is a facet of the hull of `s`: every vertex
/// must satisfy it, and the vertices with Tr(A_u S) = 0 must span a space of
/// dimension d^2 - 1. Throws unless `s` is complete.
FacetReport facet_check(const PhasePoint &u, const StabilizerSet &s);

struct HullCertificate {
    bool inside = false;
    /// Convex weights over the vertices of the set (inside only).
    std::vector<double> weights;
    /// max |sum_i w_i S_i - rho| entry (inside only).
    double residual = 0;
    /// Hermitian H with Tr(H rho) - max_i Tr(H S_i) = margin > 0 (outside only).
    DenseOperator witness;
    double margin = 0;
    /// True when the exact rational solver settled the answer.
    bool exact = false;
    size_t pivots = 0;
};

struct HullOptions {
    /// Exact state-normalized Wigner values of the target, used when the
    /// floating-point solve is inconclusive.
    const std::vector<mpq_class> *exact_target = nullptr;
    bool force_exact = false;
};

/// Decides rho in conv(s) by a phase-one LP over the vertex Wigner vectors.
/// Inside answers carry verified weights, outside answers a verified
/// separating operator. Throws SolverError when the solver does not finish, or
/// when no certificate can be verified.
HullCertificate hull_membership(const DenseOperator &rho, const StabilizerSet &s, const HullOptions &options = {});

enum class ClassLabel { Negative, Bound, StabilizerMix, NonPhysical };

std::string label_name(ClassLabel label);

struct Classification {
    ClassLabel label = ClassLabel::NonPhysical;
    double min_eig = 0;
    double min_wigner = 0;
    std::optional<HullCertificate> hull;
};

/// NONPHYSICAL if lambda_min < -1e-9, else NEGATIVE if min W < -1e-12 (or < 0
/// exactly when exact values are supplied), else STABILIZER_MIX or BOUND from
/// hull_membership.
Classification classify_state(const DenseOperator &m, const StabilizerSet &s,
                              const std::vector<mpq_class> *exact_wigner = nullptr);

}  // namespace wigsim
