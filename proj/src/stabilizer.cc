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

#include "wigsim/stabilizer.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "wigsim/errors.h"
#include "wigsim/lp.h"

namespace wigsim {

namespace {

// Stabilizer Wigner values are multiples of 1/p^n.
std::vector<mpq_class> rationalize(const std::vector<double> &w, uint64_t d, bool &ok) {
    std::vector<mpq_class> out(w.size());
    for (size_t k = 0; k < w.size(); k++) {
        double scaled = w[k] * static_cast<double>(d);
        double r = std::round(scaled);
        if (std::abs(scaled - r) > 1e-9) {
            ok = false;
            return {};
        }
        out[k] = mpq_class(static_cast<long>(r), static_cast<unsigned long>(d));
        out[k].canonicalize();
    }
    return out;
}

std::string dedupe_key(const DenseVector &v) {
    Eigen::Index lead = 0;
    while (lead < v.size() && std::abs(v[lead]) < 1e-6) {
        lead++;
    }
    cplx phase = lead < v.size() ? std::conj(v[lead]) / std::abs(v[lead]) : cplx(1.0);
    std::string key;
    key.reserve(static_cast<size_t>(v.size()) * 16);
    for (Eigen::Index k = 0; k < v.size(); k++) {
        cplx c = v[k] * phase;
        long re = std::lround(c.real() * 1e6);
        long im = std::lround(c.imag() * 1e6);
        key += std::to_string(re == 0 ? 0 : re);
        key += ',';
        key += std::to_string(im == 0 ? 0 : im);
        key += ';';
    }
    return key;
}

double projector_distance(const DenseVector &a, const DenseVector &b) {
    return 1.0 - std::norm(a.dot(b));
}

DenseOperator witness_operator(const std::vector<double> &h, double c, int p, int n) {
    uint64_t d = checked_pow(p, n);
    DenseOperator out = c * DenseOperator::Identity(d, d);
    for (uint64_t k = 0; k < h.size(); k++) {
        if (h[k] == 0.0) {
            continue;
        }
        MonomialOperator a = phase_point_monomial(PhasePoint::from_index(p, n, k));
        for (size_t col = 0; col < a.dim(); col++) {
            out(a.row[col], col) += (h[k] / static_cast<double>(d)) * omega_power(p, a.omega_exp[col]);
        }
    }
    return out;
}

// Tr(H rho) - max_i Tr(H S_i) with H built from a dual vector scaled to
// max-abs 1.
double dense_margin(const DenseOperator &h, const DenseOperator &rho, const StabilizerSet &s) {
    double best = -INFINITY;
    for (size_t i = 0; i < s.size(); i++) {
        best = std::max(best, (h * s.projector(i)).trace().real());
    }
    return (h * rho).trace().real() - best;
}

template <typename T>
double to_d(const T &v) {
    return LpTraits<T>::to_double(v);
}

template <typename T>
void fill_witness(HullCertificate &cert, const std::vector<T> &farkas, const DenseOperator &rho,
                  const StabilizerSet &s) {
    const size_t m = farkas.size();
    double scale = 0;
    for (const T &y : farkas) {
        scale = std::max(scale, std::abs(to_d(y)));
    }
    if (scale == 0) {
        scale = 1;
    }
    std::vector<double> h(m - 1);
    for (size_t k = 0; k + 1 < m; k++) {
        h[k] = to_d(farkas[k]) / scale;
    }
    double c = to_d(farkas[m - 1]) / scale;
    cert.witness = witness_operator(h, c, s.p(), s.n());
    cert.margin = dense_margin(cert.witness, rho, s);
}

void fill_weights(HullCertificate &cert, std::vector<double> weights, const DenseOperator &rho,
                  const StabilizerSet &s) {
    double total = 0;
    for (double &w : weights) {
        if (w < 0 && w > -1e-12) {
            w = 0;
        }
        total += w;
    }
    DenseOperator mix = DenseOperator::Zero(rho.rows(), rho.cols());
    for (size_t i = 0; i < weights.size(); i++) {
        if (weights[i] != 0) {
            mix += weights[i] * s.projector(i);
        }
    }
    cert.residual = std::max((mix - rho).cwiseAbs().maxCoeff(), std::abs(total - 1.0));
    cert.weights = std::move(weights);
}

bool weights_valid(const HullCertificate &cert) {
    for (double w : cert.weights) {
        if (w < -1e-10) {
            return false;
        }
    }
    return cert.residual <= 1e-8;
}

}  // namespace

uint64_t stabilizer_state_count(int p, int n) {
    require_odd_prime(p);
    uint64_t count = checked_pow(p, n);
    for (int k = 1; k <= n; k++) {
        count *= checked_pow(p, k) + 1;
    }
    return count;
}

StabilizerSet::StabilizerSet(int p, int n, StabilizerProvenance provenance, std::vector<DenseVector> kets)
    : p_(p), n_(n), dim_(checked_pow(p, n)), provenance_(provenance), kets_(std::move(kets)) {
    require_odd_prime(p);
    bool exact_ok = true;
    for (const auto &k : kets_) {
        if (static_cast<size_t>(k.size()) != dim_) {
            throw InvalidArgument("stabilizer ket has the wrong dimension");
        }
        if (std::abs(k.norm() - 1.0) > 1e-10) {
            throw InvalidArgument("stabilizer ket is not normalized");
        }
        projectors_.push_back(k * k.adjoint());
        wigner_.push_back(wigner_values(projectors_.back(), p, n, WignerKind::State).values);
        if (exact_ok) {
            auto ex = rationalize(wigner_.back(), dim_, exact_ok);
            if (exact_ok) {
                exact_wigner_.push_back(std::move(ex));
            }
        }
    }
    if (!exact_ok) {
        exact_wigner_.clear();
    }
}

StabilizerSet mub_stabilizer_states(int p) {
    require_odd_prime(p);
    std::vector<DenseVector> kets;
    for (int basis = 0; basis <= p; basis++) {
        for (int j = 0; j < p; j++) {
            kets.push_back(mub_vector(p, basis, j));
        }
    }
    return StabilizerSet(p, 1, StabilizerProvenance::Mub, std::move(kets));
}

StabilizerSet clifford_orbit_stabilizers(int p, int n, size_t max_states) {
    require_odd_prime(p);
    if (n < 1) {
        throw InvalidArgument("need at least one qudit");
    }
    uint64_t d = checked_pow(p, n);
    if (d > 729) {
        throw InvalidArgument("orbit enumeration is limited to p^n <= 729");
    }
    std::vector<DenseOperator> gens;
    for (int r = 0; r < n; r++) {
        gens.push_back(generator_unitary(Generator::fourier(r), p, n));
        gens.push_back(generator_unitary(Generator::quadratic(r), p, n));
        gens.push_back(generator_unitary(Generator::displace(r, 1, 0), p, n));
        gens.push_back(generator_unitary(Generator::displace(r, 0, 1), p, n));
        for (int t = 0; t < n; t++) {
            if (t != r) {
                gens.push_back(generator_unitary(Generator::sum(r, t), p, n));
            }
        }
    }

    DenseVector start = DenseVector::Zero(d);
    start[0] = 1.0;
    std::vector<DenseVector> found{start};
    std::map<std::string, std::vector<size_t>> index;
    index[dedupe_key(start)].push_back(0);
    std::deque<size_t> frontier{0};

    while (!frontier.empty()) {
        size_t cur = frontier.front();
        frontier.pop_front();
        for (const auto &g : gens) {
            DenseVector next = g * found[cur];
            auto &bucket = index[dedupe_key(next)];
            bool seen = false;
            for (size_t j : bucket) {
                if (projector_distance(found[j], next) < 1e-8) {
                    seen = true;
                    break;
                }
            }
            if (seen) {
                continue;
            }
            if (found.size() >= max_states) {
                throw BudgetExceeded("stabilizer orbit exceeds " + std::to_string(max_states) + " states");
            }
            bucket.push_back(found.size());
            frontier.push_back(found.size());
            found.push_back(std::move(next));
        }
    }
    return StabilizerSet(p, n, StabilizerProvenance::CliffordOrbit, std::move(found));
}

bool same_state_set(const StabilizerSet &a, const StabilizerSet &b, double tol) {
    if (a.p() != b.p() || a.n() != b.n() || a.size() != b.size()) {
        return false;
    }
    std::vector<bool> used(b.size(), false);
    for (size_t i = 0; i < a.size(); i++) {
        bool hit = false;
        for (size_t j = 0; j < b.size() && !hit; j++) {
            if (!used[j] && projector_distance(a.ket(i), b.ket(j)) < tol) {
                used[j] = true;
                hit = true;
            }
        }
        if (!hit) {
            return false;
        }
    }
    return true;
}

FacetReport facet_check(const PhasePoint &u, const StabilizerSet &s) {
    if (!s.complete()) {
        throw InvalidArgument("facet check needs the complete stabilizer set (" +
                              std::to_string(stabilizer_state_count(s.p(), s.n())) + " states, have " +
                              std::to_string(s.size()) + ")");
    }
    if (u.p() != s.p() || u.n() != s.n()) {
        throw InvalidArgument("phase point does not match the stabilizer set");
    }
    FacetReport rep;
    rep.point = u;
    const double d = static_cast<double>(s.dim());
    const uint64_t idx = u.index();
    std::vector<size_t> saturating;
    rep.min_value = INFINITY;
    for (size_t i = 0; i < s.size(); i++) {
        double v = d * s.wigner(i)[idx];
        rep.min_value = std::min(rep.min_value, v);
        if (std::abs(v) <= 1e-8) {
            saturating.push_back(i);
        }
    }
    rep.all_vertices_nonnegative = rep.min_value >= -1e-10;
    rep.saturating_count = saturating.size();

    const Eigen::Index k = static_cast<Eigen::Index>(saturating.size());
    if (k > 0) {
        Eigen::MatrixXd gram(k, k);
        for (Eigen::Index i = 0; i < k; i++) {
            for (Eigen::Index j = i; j < k; j++) {
                double g = std::norm(s.ket(saturating[i]).dot(s.ket(saturating[j])));
                gram(i, j) = g;
                gram(j, i) = g;
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
        const auto &sv = svd.singularValues();
        double cutoff = 1e-8 * sv.maxCoeff();
        for (Eigen::Index i = 0; i < sv.size(); i++) {
            if (sv[i] > cutoff) {
                rep.saturating_span_dim++;
            }
        }
    }
    rep.is_facet = rep.all_vertices_nonnegative && rep.saturating_span_dim == static_cast<int>(d * d) - 1;
    return rep;
}

HullCertificate hull_membership(const DenseOperator &rho, const StabilizerSet &s, const HullOptions &options) {
    if (!s.complete()) {
        throw InvalidArgument("hull membership needs the complete stabilizer set");
    }
    if (static_cast<size_t>(rho.rows()) != s.dim() || static_cast<size_t>(rho.cols()) != s.dim()) {
        throw InvalidArgument("operator dimension does not match the stabilizer set");
    }
    const std::vector<double> target = wigner_values(rho, s.p(), s.n(), WignerKind::State).values;
    const size_t rows = target.size() + 1;
    const size_t cols = s.size();

    HullCertificate cert;
    bool settled = false;
    if (!options.force_exact) {
        std::vector<std::vector<double>> a(rows, std::vector<double>(cols));
        std::vector<double> b(rows);
        for (size_t u = 0; u < target.size(); u++) {
            for (size_t i = 0; i < cols; i++) {
                a[u][i] = s.wigner(i)[u];
            }
            b[u] = target[u];
        }
        std::fill(a[rows - 1].begin(), a[rows - 1].end(), 1.0);
        b[rows - 1] = 1.0;
        auto res = solve_feasibility(a, b);
        cert.pivots = res.pivots;
        if (res.status == LpStatus::Optimal) {
            if (res.objective <= 1e-10) {
                fill_weights(cert, res.x, rho, s);
                if (weights_valid(cert)) {
                    cert.inside = true;
                    settled = true;
                }
            } else if (res.objective >= 1e-6) {
                fill_witness(cert, res.farkas, rho, s);
                if (cert.margin > 1e-9) {
                    cert.inside = false;
                    settled = true;
                }
            }
        }
        if (!settled && options.exact_target == nullptr) {
            if (res.status != LpStatus::Optimal) {
                throw SolverError("hull LP did not converge after " + std::to_string(res.pivots) + " pivots");
            }
            // No rational data: accept whichever certificate verifies.
            HullCertificate alt;
            alt.pivots = res.pivots;
            fill_weights(alt, res.x, rho, s);
            if (weights_valid(alt)) {
                alt.inside = true;
                return alt;
            }
            fill_witness(alt, res.farkas, rho, s);
            if (alt.margin > 1e-12) {
                alt.weights.clear();
                alt.residual = 0;
                return alt;
            }
            throw SolverError("hull LP result could not be certified (phase-one objective " +
                              std::to_string(res.objective) + ")");
        }
    }
    if (settled) {
        return cert;
    }

    if (options.exact_target == nullptr || options.exact_target->size() != target.size()) {
        throw SolverError("exact hull solve requested without exact target values");
    }
    const auto &vertices = s.exact_wigner();
    if (vertices.size() != cols) {
        throw SolverError("stabilizer vertices are not exactly representable");
    }
    std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(cols));
    std::vector<mpq_class> b(rows);
    for (size_t u = 0; u < target.size(); u++) {
        for (size_t i = 0; i < cols; i++) {
            a[u][i] = vertices[i][u];
        }
        b[u] = (*options.exact_target)[u];
    }
    for (size_t i = 0; i < cols; i++) {
        a[rows - 1][i] = 1;
    }
    b[rows - 1] = 1;
    auto res = solve_feasibility(a, b);
    HullCertificate exact;
    exact.exact = true;
    exact.pivots = cert.pivots + res.pivots;
    if (res.status != LpStatus::Optimal) {
        throw SolverError("exact hull LP hit the pivot limit");
    }
    if (sgn(res.objective) == 0) {
        std::vector<double> w(cols);
        for (size_t i = 0; i < cols; i++) {
            w[i] = res.x[i].get_d();
        }
        fill_weights(exact, std::move(w), rho, s);
        exact.inside = true;
        return exact;
    }
    fill_witness(exact, res.farkas, rho, s);
    exact.inside = false;
    return exact;
}

std::string label_name(ClassLabel label) {
    switch (label) {
        case ClassLabel::Negative:
            return "NEGATIVE";
        case ClassLabel::Bound:
            return "BOUND";
        case ClassLabel::StabilizerMix:
            return "STABILIZER_MIX";
        case ClassLabel::NonPhysical:
            return "NONPHYSICAL";
    }
    return "?";
}

Classification classify_state(const DenseOperator &m, const StabilizerSet &s, const std::vector<mpq_class> *exact_wigner) {
    Classification out;
    out.min_eig = min_eigenvalue(m);
    auto w = wigner_values(m, s.p(), s.n(), WignerKind::State);
    out.min_wigner = w.minimum().first;
    if (out.min_eig < -1e-9) {
        out.label = ClassLabel::NonPhysical;
        return out;
    }
    bool negative = out.min_wigner < -1e-12;
    if (exact_wigner != nullptr) {
        negative = std::any_of(exact_wigner->begin(), exact_wigner->end(),
                               [](const mpq_class &v) { return sgn(v) < 0; });
    }
    if (negative) {
        out.label = ClassLabel::Negative;
        return out;
    }
    HullOptions opts;
    opts.exact_target = exact_wigner;
    out.hull = hull_membership(m, s, opts);
    out.label = out.hull->inside ? ClassLabel::StabilizerMix : ClassLabel::Bound;
    return out;
}

}  // namespace wigsim
