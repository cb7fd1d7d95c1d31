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

#include "wigsim/phase_space.h"

#include <limits>
#include <sstream>

#include "wigsim/errors.h"

namespace wigsim {

bool is_prime(int64_t value) {
    if (value < 2) {
        return false;
    }
    for (int64_t k = 2; k * k <= value; k++) {
        if (value % k == 0) {
            return false;
        }
    }
    return true;
}

void require_odd_prime(int p) {
    if (p == 2) {
        throw InvalidArgument("dimension 2 is not supported: the discrete Wigner function needs an odd prime");
    }
    if (!is_prime(p)) {
        throw InvalidArgument("dimension " + std::to_string(p) + " is not an odd prime");
    }
}

int inv_mod(int64_t value, int p) {
    int64_t a = mod(value, p);
    if (a == 0) {
        throw InvalidArgument("0 has no inverse mod " + std::to_string(p));
    }
    // Extended Euclid.
    int64_t old_r = a, r = p, old_s = 1, s = 0;
    while (r != 0) {
        int64_t q = old_r / r;
        int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    return mod(old_s, p);
}

int inv2(int p) {
    require_odd_prime(p);
    return (p + 1) / 2;
}

uint64_t checked_pow(int p, int n) {
    uint64_t result = 1;
    for (int k = 0; k < n; k++) {
        if (result > std::numeric_limits<uint64_t>::max() / 2 / static_cast<uint64_t>(p)) {
            throw InvalidArgument("p^n overflows");
        }
        result *= static_cast<uint64_t>(p);
    }
    return result;
}

PhasePoint::PhasePoint(int p, int n) : p_(p), coords_(2 * static_cast<size_t>(n), 0) {
    if (n < 0) {
        throw InvalidArgument("negative qudit count");
    }
}

PhasePoint::PhasePoint(int p, std::vector<int> coords) : p_(p), coords_(std::move(coords)) {
    if (coords_.size() % 2 != 0) {
        throw InvalidArgument("phase point needs an even number of coordinates");
    }
    for (auto &c : coords_) {
        c = mod(c, p_);
    }
}

PhasePoint PhasePoint::from_index(int p, int n, uint64_t index) {
    PhasePoint result(p, n);
    for (size_t k = result.coords_.size(); k-- > 0;) {
        result.coords_[k] = static_cast<int>(index % static_cast<uint64_t>(p));
        index /= static_cast<uint64_t>(p);
    }
    if (index != 0) {
        throw InvalidArgument("phase point index out of range");
    }
    return result;
}

PhasePoint PhasePoint::single(int p, int a1, int a2) {
    return PhasePoint(p, std::vector<int>{a1, a2});
}

void PhasePoint::set(size_t k, int value) {
    coords_.at(k) = mod(value, p_);
}

uint64_t PhasePoint::index() const {
    uint64_t result = 0;
    for (int c : coords_) {
        result = result * static_cast<uint64_t>(p_) + static_cast<uint64_t>(c);
    }
    return result;
}

bool PhasePoint::is_zero() const {
    for (int c : coords_) {
        if (c != 0) {
            return false;
        }
    }
    return true;
}

PhasePoint PhasePoint::block(int b) const {
    if (b < 0 || b >= n()) {
        throw InvalidArgument("block index out of range");
    }
    return PhasePoint(p_, std::vector<int>{coords_[2 * b], coords_[2 * b + 1]});
}

PhasePoint PhasePoint::direct_sum(const PhasePoint &other) const {
    if (other.p_ != p_) {
        throw InvalidArgument("direct sum of phase points with different p");
    }
    std::vector<int> joined = coords_;
    joined.insert(joined.end(), other.coords_.begin(), other.coords_.end());
    return PhasePoint(p_, std::move(joined));
}

void PhasePoint::require_compatible(const PhasePoint &other) const {
    if (other.p_ != p_ || other.coords_.size() != coords_.size()) {
        throw InvalidArgument("phase points disagree on p or n");
    }
}

PhasePoint PhasePoint::operator+(const PhasePoint &other) const {
    require_compatible(other);
    PhasePoint result = *this;
    for (size_t k = 0; k < coords_.size(); k++) {
        result.coords_[k] = mod(coords_[k] + other.coords_[k], p_);
    }
    return result;
}

PhasePoint PhasePoint::operator-(const PhasePoint &other) const {
    require_compatible(other);
    PhasePoint result = *this;
    for (size_t k = 0; k < coords_.size(); k++) {
        result.coords_[k] = mod(coords_[k] - other.coords_[k], p_);
    }
    return result;
}

PhasePoint PhasePoint::operator-() const {
    return scaled(-1);
}

PhasePoint PhasePoint::scaled(int factor) const {
    PhasePoint result = *this;
    for (auto &c : result.coords_) {
        c = mod(static_cast<int64_t>(c) * factor, p_);
    }
    return result;
}

std::string PhasePoint::str() const {
    std::ostringstream out;
    for (int b = 0; b < n(); b++) {
        if (b) {
            out << "+";
        }
        out << "(" << coords_[2 * b] << "," << coords_[2 * b + 1] << ")";
    }
    return out.str();
}

std::vector<PhasePoint> all_phase_points(int p, int n) {
    uint64_t count = checked_pow(p, 2 * n);
    std::vector<PhasePoint> result;
    result.reserve(count);
    for (uint64_t k = 0; k < count; k++) {
        result.push_back(PhasePoint::from_index(p, n, k));
    }
    return result;
}

ModMatrix::ModMatrix(int p, size_t rows, size_t cols) : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
}

ModMatrix::ModMatrix(int p, size_t rows, size_t cols, const std::vector<int> &row_major)
    : p_(p), rows_(rows), cols_(cols), data_(row_major) {
    if (data_.size() != rows * cols) {
        throw InvalidArgument("matrix data has the wrong length");
    }
    for (auto &v : data_) {
        v = mod(v, p_);
    }
}

ModMatrix ModMatrix::identity(int p, size_t size) {
    ModMatrix result(p, size, size);
    for (size_t k = 0; k < size; k++) {
        result.data_[k * size + k] = 1;
    }
    return result;
}

ModMatrix ModMatrix::symplectic_form_matrix(int p, int n) {
    ModMatrix result(p, 2 * n, 2 * n);
    for (int b = 0; b < n; b++) {
        result.set(2 * b, 2 * b + 1, 1);
        result.set(2 * b + 1, 2 * b, -1);
    }
    return result;
}

ModMatrix ModMatrix::operator*(const ModMatrix &other) const {
    if (other.p_ != p_ || cols_ != other.rows_) {
        throw InvalidArgument("matrix product shape or modulus mismatch");
    }
    ModMatrix result(p_, rows_, other.cols_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < other.cols_; c++) {
            int64_t acc = 0;
            for (size_t k = 0; k < cols_; k++) {
                acc += static_cast<int64_t>(data_[r * cols_ + k]) * other.data_[k * other.cols_ + c];
            }
            result.data_[r * other.cols_ + c] = mod(acc, p_);
        }
    }
    return result;
}

std::vector<int> ModMatrix::operator*(const std::vector<int> &v) const {
    if (v.size() != cols_) {
        throw InvalidArgument("matrix-vector shape mismatch");
    }
    std::vector<int> result(rows_);
    for (size_t r = 0; r < rows_; r++) {
        int64_t acc = 0;
        for (size_t k = 0; k < cols_; k++) {
            acc += static_cast<int64_t>(data_[r * cols_ + k]) * v[k];
        }
        result[r] = mod(acc, p_);
    }
    return result;
}

ModMatrix ModMatrix::transpose() const {
    ModMatrix result(p_, cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            result.data_[c * rows_ + r] = data_[r * cols_ + c];
        }
    }
    return result;
}

ModMatrix ModMatrix::inverse() const {
    if (rows_ != cols_) {
        throw InvalidArgument("inverse of a non-square matrix");
    }
    size_t n = rows_;
    ModMatrix work = *this;
    ModMatrix result = identity(p_, n);
    for (size_t col = 0; col < n; col++) {
        size_t pivot = col;
        while (pivot < n && work(pivot, col) == 0) {
            pivot++;
        }
        if (pivot == n) {
            throw InvalidArgument("matrix is singular mod " + std::to_string(p_));
        }
        for (size_t c = 0; c < n; c++) {
            std::swap(work.data_[pivot * n + c], work.data_[col * n + c]);
            std::swap(result.data_[pivot * n + c], result.data_[col * n + c]);
        }
        int scale = inv_mod(work(col, col), p_);
        for (size_t c = 0; c < n; c++) {
            work.data_[col * n + c] = mod(static_cast<int64_t>(work.data_[col * n + c]) * scale, p_);
            result.data_[col * n + c] = mod(static_cast<int64_t>(result.data_[col * n + c]) * scale, p_);
        }
        for (size_t r = 0; r < n; r++) {
            int factor = work(r, col);
            if (r == col || factor == 0) {
                continue;
            }
            for (size_t c = 0; c < n; c++) {
                work.data_[r * n + c] = mod(work.data_[r * n + c] - static_cast<int64_t>(factor) * work.data_[col * n + c], p_);
                result.data_[r * n + c] =
                    mod(result.data_[r * n + c] - static_cast<int64_t>(factor) * result.data_[col * n + c], p_);
            }
        }
    }
    return result;
}

std::string ModMatrix::str() const {
    std::ostringstream out;
    out << "[";
    for (size_t r = 0; r < rows_; r++) {
        out << (r ? ",[" : "[");
        for (size_t c = 0; c < cols_; c++) {
            out << (c ? "," : "") << (*this)(r, c);
        }
        out << "]";
    }
    out << "]";
    return out.str();
}

int symplectic_form(const PhasePoint &u, const PhasePoint &v) {
    if (u.p() != v.p() || u.size() != v.size()) {
        throw InvalidArgument("symplectic form of points with different p or n");
    }
    int64_t acc = 0;
    for (int b = 0; b < u.n(); b++) {
        acc += static_cast<int64_t>(u.z(b)) * v.x(b) - static_cast<int64_t>(u.x(b)) * v.z(b);
    }
    return mod(acc, u.p());
}

bool is_symplectic(const ModMatrix &f) {
    if (f.rows() != f.cols() || f.rows() % 2 != 0) {
        throw InvalidArgument("symplectic test needs a square matrix of even side");
    }
    ModMatrix j = ModMatrix::symplectic_form_matrix(f.p(), static_cast<int>(f.rows() / 2));
    return f.transpose() * j * f == j;
}

SymplecticMap::SymplecticMap(ModMatrix f) : f_(std::move(f)) {
    if (!is_symplectic(f_)) {
        throw InvalidArgument("matrix " + f_.str() + " is not symplectic mod " + std::to_string(f_.p()));
    }
}

SymplecticMap SymplecticMap::identity(int p, int n) {
    return SymplecticMap(ModMatrix::identity(p, 2 * n));
}

PhasePoint SymplecticMap::apply(const PhasePoint &u) const {
    if (u.p() != p() || u.size() != f_.cols()) {
        throw InvalidArgument("symplectic map applied to a point of the wrong shape");
    }
    return PhasePoint(p(), f_ * u.coords());
}

SymplecticMap SymplecticMap::operator*(const SymplecticMap &other) const {
    SymplecticMap result;
    result.f_ = f_ * other.f_;
    return result;
}

SymplecticMap SymplecticMap::inverse() const {
    ModMatrix j = ModMatrix::symplectic_form_matrix(p(), n());
    ModMatrix inv = j * f_.transpose() * j;
    std::vector<int> data = inv.data();
    for (auto &v : data) {
        v = -v;
    }
    SymplecticMap result;
    result.f_ = ModMatrix(p(), f_.rows(), f_.cols(), data);
    return result;
}

CliffordElement::CliffordElement(SymplecticMap f_, PhasePoint a_) : f(std::move(f_)), a(std::move(a_)) {
    if (a.p() != f.p() || a.n() != f.n()) {
        throw InvalidArgument("Clifford element: F and a disagree on p or n");
    }
}

CliffordElement CliffordElement::identity(int p, int n) {
    return CliffordElement(SymplecticMap::identity(p, n), PhasePoint(p, n));
}

CliffordElement CliffordElement::displacement(const PhasePoint &a) {
    return CliffordElement(SymplecticMap::identity(a.p(), a.n()), a);
}

CliffordElement CliffordElement::after(const CliffordElement &first) const {
    return CliffordElement(f * first.f, f.apply(first.a) + a);
}

CliffordElement CliffordElement::inverse() const {
    SymplecticMap inv = f.inverse();
    return CliffordElement(inv, -inv.apply(a));
}

PhasePoint apply_affine(const CliffordElement &g, const PhasePoint &u) {
    return g.f.apply(u) + g.a;
}

SymplecticMap embed_single(const ModMatrix &block, int reg, int n) {
    if (block.rows() != 2 || block.cols() != 2) {
        throw InvalidArgument("single-qudit symplectic block must be 2x2");
    }
    if (reg < 0 || reg >= n) {
        throw InvalidArgument("register index out of range");
    }
    ModMatrix m = ModMatrix::identity(block.p(), 2 * n);
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            m.set(2 * reg + r, 2 * reg + c, block(r, c));
        }
    }
    return SymplecticMap(std::move(m));
}

std::vector<int> solve_mod(const ModMatrix &m, const std::vector<int> &rhs) {
    return m.inverse() * rhs;
}

}  // namespace wigsim
