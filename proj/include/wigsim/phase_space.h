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

#include <cstdint>
#include <string>
#include <vector>

namespace wigsim {

bool is_prime(int64_t value);

/// Throws InvalidArgument unless p is an odd prime.
void require_odd_prime(int p);

/// Reduces value into [0, p).
inline int mod(int64_t value, int p) {
    int64_t r = value % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

/// Multiplicative inverse of value mod a prime p. Throws on value = 0 mod p.
int inv_mod(int64_t value, int p);

/// The inverse of 2 mod an odd prime. This is the "1/2" in the Weyl operator
/// phase exponent.
int inv2(int p);

/// p^n, throwing if the result does not fit in 63 bits.
uint64_t checked_pow(int p, int n);

/// A point of (Z_p x Z_p)^n. Stored as n blocks (a1, a2): a1 is the Z power and
/// a2 the X power of the matching Weyl operator.
class PhasePoint {
   public:
    PhasePoint() = default;
    /// The origin.
    PhasePoint(int p, int n);
    /// coords must have length 2n; entries are reduced mod p.
    PhasePoint(int p, std::vector<int> coords);

    static PhasePoint from_index(int p, int n, uint64_t index);
    /// Single-qudit point (a1, a2).
    static PhasePoint single(int p, int a1, int a2);

    int p() const {
        return p_;
    }
    int n() const {
        return static_cast<int>(coords_.size() / 2);
    }
    size_t size() const {
        return coords_.size();
    }
    int operator[](size_t k) const {
        return coords_[k];
    }
    int z(int block) const {
        return coords_[2 * block];
    }
    int x(int block) const {
        return coords_[2 * block + 1];
    }
    const std::vector<int> &coords() const {
        return coords_;
    }
    void set(size_t k, int value);

    /// Block-major index: block 0 is the most significant digit pair and a1
    /// varies slower than a2 within a block.
    uint64_t index() const;
    bool is_zero() const;

    PhasePoint block(int b) const;
    /// Direct sum (a1,a2)+(b1,b2)... ; this point's blocks come first.
    PhasePoint direct_sum(const PhasePoint &other) const;

    PhasePoint operator+(const PhasePoint &other) const;
    PhasePoint operator-(const PhasePoint &other) const;
    PhasePoint operator-() const;
    PhasePoint scaled(int factor) const;
    bool operator==(const PhasePoint &other) const = default;

    std::string str() const;

   private:
    void require_compatible(const PhasePoint &other) const;
    int p_ = 3;
    std::vector<int> coords_;
};

/// All p^{2n} points in index order.
std::vector<PhasePoint> all_phase_points(int p, int n);

/// Square or rectangular matrix over Z_p, row-major.
class ModMatrix {
   public:
    ModMatrix() = default;
    ModMatrix(int p, size_t rows, size_t cols);
    ModMatrix(int p, size_t rows, size_t cols, const std::vector<int> &row_major);

    static ModMatrix identity(int p, size_t size);
    /// Block-diagonal form matrix with per-qudit blocks [[0,1],[-1,0]].
    static ModMatrix symplectic_form_matrix(int p, int n);

    int p() const {
        return p_;
    }
    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    int operator()(size_t r, size_t c) const {
        return data_[r * cols_ + c];
    }
    void set(size_t r, size_t c, int value) {
        data_[r * cols_ + c] = mod(value, p_);
    }
    const std::vector<int> &data() const {
        return data_;
    }

    ModMatrix operator*(const ModMatrix &other) const;
    std::vector<int> operator*(const std::vector<int> &v) const;
    ModMatrix transpose() const;
    /// Gauss-Jordan inverse; throws InvalidArgument if singular.
    ModMatrix inverse() const;
    bool operator==(const ModMatrix &other) const = default;

    std::string str() const;

   private:
    int p_ = 3;
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<int> data_;
};

/// [u, v] = sum over blocks of (a1 b2 - a2 b1) mod p.
int symplectic_form(const PhasePoint &u, const PhasePoint &v);

/// True iff F^T J F == J mod p. Throws if F is not square with even side.
bool is_symplectic(const ModMatrix &f);

/// A 2n x 2n matrix that has been checked to preserve the symplectic form.
class SymplecticMap {
   public:
    SymplecticMap() = default;
    /// Throws InvalidArgument if f is not symplectic.
    explicit SymplecticMap(ModMatrix f);

    static SymplecticMap identity(int p, int n);

    const ModMatrix &matrix() const {
        return f_;
    }
    int p() const {
        return f_.p();
    }
    int n() const {
        return static_cast<int>(f_.rows() / 2);
    }

    PhasePoint apply(const PhasePoint &u) const;
    SymplecticMap operator*(const SymplecticMap &other) const;
    /// Uses F^{-1} = -J F^T J.
    SymplecticMap inverse() const;
    bool operator==(const SymplecticMap &other) const = default;

   private:
    ModMatrix f_;
};

/// Affine symplectic map u -> F u + a: the phase-space action of a Clifford.
struct CliffordElement {
    SymplecticMap f;
    PhasePoint a;

    CliffordElement() = default;
    /// Throws unless f and a agree on p and n.
    CliffordElement(SymplecticMap f, PhasePoint a);

    static CliffordElement identity(int p, int n);
    static CliffordElement displacement(const PhasePoint &a);

    int p() const {
        return f.p();
    }
    int n() const {
        return f.n();
    }

    /// (this o first): apply `first`, then this.
    CliffordElement after(const CliffordElement &first) const;
    CliffordElement inverse() const;
    bool operator==(const CliffordElement &other) const = default;
};

/// Returns g.f * u + g.a.
PhasePoint apply_affine(const CliffordElement &g, const PhasePoint &u);

/// Embeds a single-qudit symplectic 2x2 block at `reg` of an n-qudit identity.
SymplecticMap embed_single(const ModMatrix &block, int reg, int n);

/// Solves the square system m * x = rhs mod p. Throws if m is singular.
std::vector<int> solve_mod(const ModMatrix &m, const std::vector<int> &rhs);

}  // namespace wigsim
