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

#include "wigsim/weyl.h"

#include <cmath>
#include <numbers>

#include "wigsim/errors.h"

namespace wigsim {

namespace {

uint64_t dimension(int p, int n) {
    return checked_pow(p, n);
}

int digit(uint64_t index, int reg, int p, int n) {
    for (int k = n - 1; k > reg; k--) {
        index /= static_cast<uint64_t>(p);
    }
    return static_cast<int>(index % static_cast<uint64_t>(p));
}

uint64_t with_digit(uint64_t index, int reg, int value, int p, int n) {
    uint64_t place = 1;
    for (int k = n - 1; k > reg; k--) {
        place *= static_cast<uint64_t>(p);
    }
    int old = static_cast<int>((index / place) % static_cast<uint64_t>(p));
    return index - static_cast<uint64_t>(old) * place + static_cast<uint64_t>(value) * place;
}

void require_dims(const DenseOperator &u, int p, int n) {
    uint64_t d = dimension(p, n);
    if (static_cast<uint64_t>(u.rows()) != d || static_cast<uint64_t>(u.cols()) != d) {
        throw InvalidArgument("operator is not " + std::to_string(d) + "x" + std::to_string(d));
    }
}

}  // namespace

cplx omega_power(int p, int64_t k) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(mod(k, p)) / p;
    return {std::cos(angle), std::sin(angle)};
}

DenseOperator MonomialOperator::to_dense() const {
    size_t d = dim();
    DenseOperator result = DenseOperator::Zero(d, d);
    for (size_t c = 0; c < d; c++) {
        result(row[c], c) = omega_power(p, omega_exp[c]);
    }
    return result;
}

cplx MonomialOperator::trace_against(const DenseOperator &rho) const {
    // Tr(M rho) = sum_c M(row[c], c) * rho(c, row[c]).
    cplx acc = 0;
    for (size_t c = 0; c < dim(); c++) {
        acc += omega_power(p, omega_exp[c]) * rho(c, row[c]);
    }
    return acc;
}

MonomialOperator weyl_monomial(const PhasePoint &u) {
    int p = u.p();
    int n = u.n();
    int half = inv2(p);
    uint64_t d = dimension(p, n);
    MonomialOperator m;
    m.p = p;
    m.row.resize(d);
    m.omega_exp.resize(d);
    for (uint64_t c = 0; c < d; c++) {
        uint64_t r = 0;
        int64_t e = 0;
        for (int b = 0; b < n; b++) {
            int x = digit(c, b, p, n);
            int a1 = u.z(b);
            int a2 = u.x(b);
            int shifted = mod(x + a2, p);
            r = r * static_cast<uint64_t>(p) + static_cast<uint64_t>(shifted);
            e += -static_cast<int64_t>(a1) * a2 * half + static_cast<int64_t>(a1) * shifted;
        }
        m.row[c] = r;
        m.omega_exp[c] = mod(e, p);
    }
    return m;
}

MonomialOperator phase_point_monomial(const PhasePoint &u) {
    // A_0 is the parity |x> -> |-x>, and T_u P T_u^dagger = T_{2u} P.
    MonomialOperator shift = weyl_monomial(u.scaled(2));
    int p = u.p();
    int n = u.n();
    uint64_t d = shift.dim();
    MonomialOperator m;
    m.p = p;
    m.row.resize(d);
    m.omega_exp.resize(d);
    for (uint64_t c = 0; c < d; c++) {
        uint64_t negated = 0;
        for (int b = 0; b < n; b++) {
            negated = negated * static_cast<uint64_t>(p) + static_cast<uint64_t>(mod(-digit(c, b, p, n), p));
        }
        m.row[c] = shift.row[negated];
        m.omega_exp[c] = shift.omega_exp[negated];
    }
    return m;
}

DenseOperator weyl_operator(const PhasePoint &u) {
    return weyl_monomial(u).to_dense();
}

DenseOperator phase_point_operator(const PhasePoint &u) {
    return phase_point_monomial(u).to_dense();
}

PhasePointTable::PhasePointTable(int p, int n) : p_(p), n_(n), dim_(dimension(p, n)) {
    require_odd_prime(p);
    if (dim_ > 729) {
        throw InvalidArgument("dense phase-point table limited to dimension 729");
    }
    for (const auto &u : all_phase_points(p, n)) {
        ops_.push_back(phase_point_operator(u));
    }
}

DenseOperator kron(const DenseOperator &a, const DenseOperator &b) {
    DenseOperator result(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); r++) {
        for (Eigen::Index c = 0; c < a.cols(); c++) {
            result.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return result;
}

DenseOperator embed_operator(const DenseOperator &op, int reg, int p, int n) {
    if (reg < 0 || reg >= n) {
        throw InvalidArgument("register index out of range");
    }
    if (op.rows() != p || op.cols() != p) {
        throw InvalidArgument("single-qudit operator must be p x p");
    }
    DenseOperator left = DenseOperator::Identity(dimension(p, reg), dimension(p, reg));
    DenseOperator right = DenseOperator::Identity(dimension(p, n - reg - 1), dimension(p, n - reg - 1));
    return kron(kron(left, op), right);
}

Generator Generator::fourier(int reg) {
    Generator g;
    g.kind = GeneratorKind::Fourier;
    g.reg = reg;
    return g;
}

Generator Generator::quadratic(int reg) {
    Generator g;
    g.kind = GeneratorKind::Quadratic;
    g.reg = reg;
    return g;
}

Generator Generator::multiply(int reg, int factor) {
    Generator g;
    g.kind = GeneratorKind::Multiply;
    g.reg = reg;
    g.factor = factor;
    return g;
}

Generator Generator::sum(int control, int target) {
    Generator g;
    g.kind = GeneratorKind::Sum;
    g.reg = control;
    g.target = target;
    return g;
}

Generator Generator::displace(int reg, int a1, int a2) {
    Generator g;
    g.kind = GeneratorKind::Displace;
    g.reg = reg;
    g.shift_z = a1;
    g.shift_x = a2;
    return g;
}

std::string Generator::str() const {
    std::string r = std::to_string(reg + 1);
    switch (kind) {
        case GeneratorKind::Fourier:
            return "fourier(" + r + ")";
        case GeneratorKind::Quadratic:
            return "quadratic(" + r + ")";
        case GeneratorKind::Multiply:
            return "multiply(" + r + "," + std::to_string(factor) + ")";
        case GeneratorKind::Sum:
            return "sum(" + r + "," + std::to_string(target + 1) + ")";
        case GeneratorKind::Displace:
            return "displace(" + r + "," + std::to_string(shift_z) + "," + std::to_string(shift_x) + ")";
    }
    return "?";
}

void validate_generator(const Generator &g, int p, int n) {
    require_odd_prime(p);
    if (g.reg < 0 || g.reg >= n) {
        throw InvalidArgument("register " + std::to_string(g.reg + 1) + " out of range in " + g.str());
    }
    if (g.kind == GeneratorKind::Multiply && mod(g.factor, p) == 0) {
        throw InvalidArgument("multiply needs a factor that is nonzero mod p");
    }
    if (g.kind == GeneratorKind::Sum) {
        if (g.target < 0 || g.target >= n) {
            throw InvalidArgument("register " + std::to_string(g.target + 1) + " out of range in " + g.str());
        }
        if (g.target == g.reg) {
            throw InvalidArgument("sum needs distinct control and target");
        }
    }
}

CliffordElement generator_element(const Generator &g, int p, int n) {
    validate_generator(g, p, n);
    switch (g.kind) {
        case GeneratorKind::Fourier:
            // (z, x) -> (x, -z)
            return CliffordElement(embed_single(ModMatrix(p, 2, 2, {0, 1, -1, 0}), g.reg, n), PhasePoint(p, n));
        case GeneratorKind::Quadratic:
            // (z, x) -> (z + x, x)
            return CliffordElement(embed_single(ModMatrix(p, 2, 2, {1, 1, 0, 1}), g.reg, n), PhasePoint(p, n));
        case GeneratorKind::Multiply:
            // (z, x) -> (z / c, c x)
            return CliffordElement(
                embed_single(ModMatrix(p, 2, 2, {inv_mod(g.factor, p), 0, 0, g.factor}), g.reg, n), PhasePoint(p, n));
        case GeneratorKind::Sum: {
            // z_control -= z_target, x_target += x_control
            ModMatrix m = ModMatrix::identity(p, 2 * n);
            m.set(2 * g.reg, 2 * g.target, -1);
            m.set(2 * g.target + 1, 2 * g.reg + 1, 1);
            return CliffordElement(SymplecticMap(std::move(m)), PhasePoint(p, n));
        }
        case GeneratorKind::Displace: {
            PhasePoint a(p, n);
            a.set(2 * g.reg, g.shift_z);
            a.set(2 * g.reg + 1, g.shift_x);
            return CliffordElement::displacement(a);
        }
    }
    throw InvalidArgument("unknown generator kind");
}

DenseOperator generator_unitary(const Generator &g, int p, int n) {
    validate_generator(g, p, n);
    uint64_t d = dimension(p, n);
    switch (g.kind) {
        case GeneratorKind::Fourier: {
            DenseOperator f(p, p);
            double norm = 1.0 / std::sqrt(static_cast<double>(p));
            for (int y = 0; y < p; y++) {
                for (int x = 0; x < p; x++) {
                    f(y, x) = norm * omega_power(p, static_cast<int64_t>(x) * y);
                }
            }
            return embed_operator(f, g.reg, p, n);
        }
        case GeneratorKind::Quadratic: {
            DenseOperator q = DenseOperator::Zero(p, p);
            int half = inv2(p);
            for (int x = 0; x < p; x++) {
                q(x, x) = omega_power(p, static_cast<int64_t>(half) * x * x);
            }
            return embed_operator(q, g.reg, p, n);
        }
        case GeneratorKind::Multiply: {
            DenseOperator m = DenseOperator::Zero(p, p);
            for (int x = 0; x < p; x++) {
                m(mod(static_cast<int64_t>(g.factor) * x, p), x) = 1.0;
            }
            return embed_operator(m, g.reg, p, n);
        }
        case GeneratorKind::Sum: {
            DenseOperator s = DenseOperator::Zero(d, d);
            for (uint64_t c = 0; c < d; c++) {
                int x = digit(c, g.reg, p, n);
                int y = digit(c, g.target, p, n);
                s(with_digit(c, g.target, mod(x + y, p), p, n), c) = 1.0;
            }
            return s;
        }
        case GeneratorKind::Displace: {
            PhasePoint a(p, n);
            a.set(2 * g.reg, g.shift_z);
            a.set(2 * g.reg + 1, g.shift_x);
            return weyl_operator(a);
        }
    }
    throw InvalidArgument("unknown generator kind");
}

std::pair<DenseOperator, CliffordElement> clifford_generator(const Generator &g, int p, int n) {
    return {generator_unitary(g, p, n), generator_element(g, p, n)};
}

CliffordElement word_element(const GeneratorWord &word, int p, int n) {
    CliffordElement result = CliffordElement::identity(p, n);
    for (const auto &g : word) {
        result = generator_element(g, p, n).after(result);
    }
    return result;
}

DenseOperator word_unitary(const GeneratorWord &word, int p, int n) {
    uint64_t d = dimension(p, n);
    DenseOperator result = DenseOperator::Identity(d, d);
    for (const auto &g : word) {
        result = generator_unitary(g, p, n) * result;
    }
    return result;
}

cplx weyl_coefficient(const DenseOperator &m, const PhasePoint &v) {
    // Tr(T_v^dagger m) = sum_c conj(T_v(row[c], c)) * m(row[c], c).
    MonomialOperator t = weyl_monomial(v);
    cplx acc = 0;
    for (size_t c = 0; c < t.dim(); c++) {
        acc += std::conj(omega_power(t.p, t.omega_exp[c])) * m(t.row[c], c);
    }
    return acc / static_cast<double>(t.dim());
}

CliffordElement extract_symplectic(const DenseOperator &u, int p, int n, double tol) {
    require_odd_prime(p);
    require_dims(u, p, n);
    DenseOperator u_dag = u.adjoint();
    std::vector<PhasePoint> points = all_phase_points(p, n);
    ModMatrix f(p, 2 * n, 2 * n);
    std::vector<int> phases(2 * n);
    std::vector<PhasePoint> images;
    for (int i = 0; i < 2 * n; i++) {
        PhasePoint e(p, n);
        e.set(i, 1);
        DenseOperator conj = u * weyl_operator(e) * u_dag;
        // A multiple of T_v sends |0> to |x(v)>, so only that X part can match.
        Eigen::Index row0 = 0;
        conj.col(0).cwiseAbs().maxCoeff(&row0);
        std::vector<int> xdigits(n);
        for (int b = n - 1, r = static_cast<int>(row0); b >= 0; b--, r /= p) {
            xdigits[b] = r % p;
        }
        double best = -1;
        cplx best_coeff = 0;
        size_t best_index = 0;
        for (size_t k = 0; k < points.size(); k++) {
            bool match = true;
            for (int b = 0; b < n && match; b++) {
                match = points[k].x(b) == xdigits[b];
            }
            if (!match) {
                continue;
            }
            cplx c = weyl_coefficient(conj, points[k]);
            if (std::abs(c) > best) {
                best = std::abs(c);
                best_coeff = c;
                best_index = k;
            }
        }
        if (std::abs(best - 1.0) > tol) {
            throw NotClifford("U T_e U^dagger for basis direction " + std::to_string(i) +
                              " is not proportional to a Weyl operator (best overlap " + std::to_string(best) + ")");
        }
        double angle = std::arg(best_coeff);
        int c = mod(static_cast<int64_t>(std::llround(angle * p / (2.0 * std::numbers::pi))), p);
        if (std::abs(best_coeff - omega_power(p, c)) > tol) {
            throw PhaseInconsistent("conjugation phase for basis direction " + std::to_string(i) +
                                    " is not a power of omega");
        }
        phases[i] = c;
        images.push_back(points[best_index]);
        for (int r = 0; r < 2 * n; r++) {
            f.set(r, i, points[best_index][r]);
        }
    }
    if (!is_symplectic(f)) {
        throw NotClifford("conjugation images do not form a symplectic matrix");
    }
    // U = T_a U_F gives U T_e U^dagger = omega^{[a, F e]} T_{F e}; solve [a, v_i] = c_i.
    ModMatrix system(p, 2 * n, 2 * n);
    for (int i = 0; i < 2 * n; i++) {
        const PhasePoint &v = images[i];
        for (int b = 0; b < n; b++) {
            system.set(i, 2 * b, v.x(b));
            system.set(i, 2 * b + 1, -v.z(b));
        }
    }
    CliffordElement result(SymplecticMap(f), PhasePoint(p, solve_mod(system, phases)));

    // Sums of basis directions must carry the phase predicted by linearity.
    for (int i = 0; i + 1 < 2 * n; i++) {
        PhasePoint w(p, n);
        w.set(i, 1);
        w.set(i + 1, 1);
        PhasePoint image = result.f.apply(w);
        DenseOperator conj = u * weyl_operator(w) * u_dag;
        cplx expected = omega_power(p, symplectic_form(result.a, image));
        if (std::abs(weyl_coefficient(conj, image) - expected) > tol) {
            throw PhaseInconsistent("conjugation phases are not consistent with a single displacement");
        }
    }
    return result;
}

}  // namespace wigsim

namespace wigsim {

DenseVector mub_vector(int p, int basis, int j) {
    require_odd_prime(p);
    if (basis < 0 || basis > p || j < 0 || j >= p) {
        throw InvalidArgument("MUB index out of range");
    }
    DenseVector v = DenseVector::Zero(p);
    if (basis == 0) {
        v(j) = 1.0;
        return v;
    }
    int k = basis - 1;
    double norm = 1.0 / std::sqrt(static_cast<double>(p));
    for (int x = 0; x < p; x++) {
        int64_t e = static_cast<int64_t>(k) * (static_cast<int64_t>(x) * (x - 1) / 2) + static_cast<int64_t>(j) * x;
        v(x) = norm * omega_power(p, e);
    }
    return v;
}

}  // namespace wigsim
