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

#include <cmath>
#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace wigsim {

/// Pivot and sign tests for the simplex below. Doubles use an absolute
/// threshold; rationals compare exactly.
template <typename T>
struct LpTraits;

template <>
struct LpTraits<double> {
    static constexpr double eps = 1e-11;
    static bool negative(double v) {
        return v < -eps;
    }
    static bool positive(double v) {
        return v > eps;
    }
    static double to_double(double v) {
        return v;
    }
    static bool tied(double a, double b) {
        return std::abs(a - b) <= 1e-12 * (1 + std::abs(b));
    }
    static void clean(double &v) {
        if (std::abs(v) < 1e-14) {
            v = 0;
        }
    }
};

template <>
struct LpTraits<mpq_class> {
    static bool negative(const mpq_class &v) {
        return sgn(v) < 0;
    }
    static bool positive(const mpq_class &v) {
        return sgn(v) > 0;
    }
    static double to_double(const mpq_class &v) {
        return v.get_d();
    }
    static bool tied(const mpq_class &a, const mpq_class &b) {
        return a == b;
    }
    static void clean(mpq_class &) {
    }
};

enum class LpStatus { Optimal, IterationLimit };

template <typename T>
struct FeasibilityResult {
    LpStatus status = LpStatus::Optimal;
    /// Phase-one optimum: the smallest total artificial slack. Zero iff the
    /// system A x = b, x >= 0 is feasible.
    T objective{};
    /// Basic solution, meaningful when objective == 0.
    std::vector<T> x;
    /// Dual vector y with y^T A_j <= 0 for every column and y^T b = objective.
    /// When objective > 0 this is a Farkas certificate of infeasibility.
    std::vector<T> farkas;
    size_t pivots = 0;
};

/// Phase-one simplex for {x >= 0 : A x = b} on a dense tableau, using Bland's
/// rule so degenerate vertices cannot cycle. `a` is m rows of N entries.
template <typename T>
FeasibilityResult<T> solve_feasibility(const std::vector<std::vector<T>> &a, const std::vector<T> &b,
                                       size_t max_pivots = 100000) {
    using Tr = LpTraits<T>;
    const size_t m = b.size();
    const size_t cols = m ? a[0].size() : 0;
    const size_t width = cols + m;

    std::vector<std::vector<T>> tab(m, std::vector<T>(width + 1));
    std::vector<int> sign(m, 1);
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; i++) {
        sign[i] = Tr::negative(b[i]) ? -1 : 1;
        for (size_t j = 0; j < cols; j++) {
            tab[i][j] = sign[i] < 0 ? T(-a[i][j]) : a[i][j];
        }
        tab[i][cols + i] = 1;
        tab[i][width] = sign[i] < 0 ? T(-b[i]) : b[i];
        basis[i] = cols + i;
    }
    // Reduced costs for minimizing the artificial sum; obj[width] holds -z.
    std::vector<T> obj(width + 1);
    for (size_t i = 0; i < m; i++) {
        for (size_t j = 0; j < cols; j++) {
            obj[j] -= tab[i][j];
        }
        obj[width] -= tab[i][width];
    }

    FeasibilityResult<T> result;
    while (true) {
        size_t enter = width;
        for (size_t j = 0; j < width; j++) {
            if (Tr::negative(obj[j])) {
                enter = j;
                break;
            }
        }
        if (enter == width) {
            break;
        }
        if (result.pivots >= max_pivots) {
            result.status = LpStatus::IterationLimit;
            break;
        }
        size_t leave = m;
        T best_ratio{};
        for (size_t i = 0; i < m; i++) {
            if (!Tr::positive(tab[i][enter])) {
                continue;
            }
            T ratio = tab[i][width] / tab[i][enter];
            bool tie = leave != m && Tr::tied(ratio, best_ratio);
            if (leave == m || (!tie && ratio < best_ratio) || (tie && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) {
            // Phase one is bounded below by zero, so this only happens when
            // round-off has broken the tableau.
            result.status = LpStatus::IterationLimit;
            break;
        }
        T pivot = tab[leave][enter];
        for (size_t j = 0; j <= width; j++) {
            tab[leave][j] /= pivot;
        }
        for (size_t i = 0; i < m; i++) {
            if (i == leave) {
                continue;
            }
            T factor = tab[i][enter];
            if (factor == 0) {
                continue;
            }
            for (size_t j = 0; j <= width; j++) {
                tab[i][j] -= factor * tab[leave][j];
                Tr::clean(tab[i][j]);
            }
        }
        T factor = obj[enter];
        for (size_t j = 0; j <= width; j++) {
            obj[j] -= factor * tab[leave][j];
            Tr::clean(obj[j]);
        }
        basis[leave] = enter;
        result.pivots++;
    }

    result.objective = -obj[width];
    result.x.assign(cols, T(0));
    for (size_t i = 0; i < m; i++) {
        if (basis[i] < cols) {
            result.x[basis[i]] = tab[i][width];
        }
    }
    result.farkas.resize(m);
    for (size_t i = 0; i < m; i++) {
        T y = T(1) - obj[cols + i];
        result.farkas[i] = sign[i] < 0 ? T(-y) : y;
    }
    return result;
}

}  // namespace wigsim
