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

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wigsim/phase_space.h"

namespace wigsim {

using cplx = std::complex<double>;
/// Dense p^n x p^n complex matrix. Register 0 is the most significant digit of
/// the computational basis index, matching kron(A_0, A_1, ...).
using DenseOperator = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

/// omega^k with omega = exp(2 pi i / p).
cplx omega_power(int p, int64_t k);

/// Operator with one nonzero entry per column: M|c> = omega^{exp[c]} |row[c]>.
/// Both T_u and A_u have this shape, which keeps traces against dense matrices
/// O(d) instead of O(d^2).
struct MonomialOperator {
    int p = 3;
    std::vector<uint64_t> row;
    std::vector<int> omega_exp;

    size_t dim() const {
        return row.size();
    }
    DenseOperator to_dense() const;
    /// Tr(M * rho).
    cplx trace_against(const DenseOperator &rho) const;
};

/// Heisenberg-Weyl operator T_u = tensor over blocks of omega^{-a1 a2 / 2} Z^{a1} X^{a2}.
MonomialOperator weyl_monomial(const PhasePoint &u);
/// Phase-point operator A_u = T_u A_0 T_u^dagger with A_0 = (1/d) sum_u T_u.
MonomialOperator phase_point_monomial(const PhasePoint &u);

DenseOperator weyl_operator(const PhasePoint &u);
DenseOperator phase_point_operator(const PhasePoint &u);

/// omega^{phase_power} T_point.
struct WeylLabel {
    PhasePoint point;
    int phase_power = 0;
};

/// Dense A_u for every u of a fixed (p, n). Built once, then read-only, so a
/// single table may be shared between threads.
class PhasePointTable {
   public:
    PhasePointTable(int p, int n);
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
        return ops_.size();
    }
    const DenseOperator &operator[](size_t index) const {
        return ops_[index];
    }

   private:
    int p_;
    int n_;
    size_t dim_;
    std::vector<DenseOperator> ops_;
};

DenseOperator kron(const DenseOperator &a, const DenseOperator &b);
/// I (x) ... (x) op (x) ... (x) I with `op` on register `reg` of n.
DenseOperator embed_operator(const DenseOperator &op, int reg, int p, int n);

enum class GeneratorKind { Fourier, Quadratic, Multiply, Sum, Displace };

/// One Clifford generator on named registers (0-based).
///
///   fourier    |x> -> p^{-1/2} sum_y omega^{xy} |y>
///   quadratic  |x> -> omega^{x^2 / 2} |x>
///   multiply   |x> -> |c x|,  c != 0
///   sum        |x, y> -> |x, x + y>  (reg = control, target = target)
///   displace   T_shift on register `reg`
struct Generator {
    GeneratorKind kind = GeneratorKind::Fourier;
    int reg = 0;
    int target = -1;
    int factor = 1;
    int shift_z = 0;
    int shift_x = 0;

    static Generator fourier(int reg);
    static Generator quadratic(int reg);
    static Generator multiply(int reg, int factor);
    static Generator sum(int control, int target);
    static Generator displace(int reg, int a1, int a2);

    /// Syntax used in circuit files, with 1-based registers.
    std::string str() const;
};

using GeneratorWord = std::vector<Generator>;

/// Throws InvalidArgument for out-of-range registers, c = 0 mod p, or
/// sum with control == target.
void validate_generator(const Generator &g, int p, int n);

/// Phase-space action of a generator, from the closed-form table. Needs no
/// dense matrices, so it works for any n.
CliffordElement generator_element(const Generator &g, int p, int n);
DenseOperator generator_unitary(const Generator &g, int p, int n);
/// Unitary and claimed (F, a) together.
std::pair<DenseOperator, CliffordElement> clifford_generator(const Generator &g, int p, int n);

/// Time-ordered: word[0] acts first.
CliffordElement word_element(const GeneratorWord &word, int p, int n);
DenseOperator word_unitary(const GeneratorWord &word, int p, int n);

/// Recovers (F, a) with U A_u U^dagger = A_{F u + a} by conjugating every
/// basis Weyl operator and matching the result against omega^c T_v over all v.
/// Throws NotClifford or PhaseInconsistent.
CliffordElement extract_symplectic(const DenseOperator &u, int p, int n, double tol = 1e-8);

/// Member j of the standard complete set of mutually unbiased bases. Basis 0
/// is the computational basis; basis k + 1 is the eigenbasis of X Z^k with
/// psi_j(x) = omega^{k x (x - 1) / 2 + j x} / sqrt(p).
DenseVector mub_vector(int p, int basis, int j);

/// Expansion coefficient of m along T_v, i.e. Tr(T_v^dagger m) / d.
cplx weyl_coefficient(const DenseOperator &m, const PhasePoint &v);

}  // namespace wigsim
