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

#include "wigsim/stats.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "wigsim/errors.h"

namespace wigsim {

double tv_threshold(size_t alphabet, uint64_t shots) {
    if (shots == 0) {
        return INFINITY;
    }
    return std::max(0.01, 3.0 * std::sqrt(static_cast<double>(alphabet) / static_cast<double>(shots)));
}

double total_variation(const OutcomeDistribution &a, const OutcomeDistribution &b) {
    std::set<std::string> keys;
    for (const auto &[k, v] : a) {
        keys.insert(k);
    }
    for (const auto &[k, v] : b) {
        keys.insert(k);
    }
    double acc = 0;
    for (const auto &k : keys) {
        auto ia = a.find(k);
        auto ib = b.find(k);
        acc += std::abs((ia == a.end() ? 0.0 : ia->second) - (ib == b.end() ? 0.0 : ib->second));
    }
    return 0.5 * acc;
}

Comparison compare_distributions(const OutcomeDistribution &ref, const std::map<std::string, uint64_t> &counts,
                                 uint64_t shots) {
    uint64_t total = 0;
    for (const auto &[k, v] : counts) {
        if (!ref.count(k)) {
            throw InvalidArgument("alphabet mismatch: outcome '" + k + "' is not in the reference distribution");
        }
        total += v;
    }
    if (total != shots) {
        throw InvalidArgument("counts sum to " + std::to_string(total) + ", not " + std::to_string(shots));
    }
    Comparison c;
    if (shots == 0) {
        return c;
    }
    const double n = static_cast<double>(shots);
    double tv = 0;
    std::vector<std::pair<double, double>> cells;  // (expected, observed)
    double stray = 0;
    for (const auto &[k, q] : ref) {
        auto it = counts.find(k);
        double obs = it == counts.end() ? 0.0 : static_cast<double>(it->second);
        tv += std::abs(obs / n - q);
        if (q > 1e-12 || obs > 0) {
            c.alphabet++;
        }
        if (q > 1e-12) {
            cells.emplace_back(q * n, obs);
        } else {
            stray += obs;
        }
    }
    c.tv = 0.5 * tv;
    c.epsilon = tv_threshold(c.alphabet, shots);
    c.pass = c.tv < c.epsilon;

    std::sort(cells.begin(), cells.end());
    std::vector<std::pair<double, double>> pooled;
    std::pair<double, double> small{0, 0};
    for (const auto &cell : cells) {
        if (cell.first < 5.0) {
            small.first += cell.first;
            small.second += cell.second;
        } else {
            pooled.push_back(cell);
        }
    }
    if (small.first > 0) {
        if (small.first < 5.0 && !pooled.empty()) {
            pooled.front().first += small.first;
            pooled.front().second += small.second;
        } else {
            pooled.push_back(small);
        }
    }
    if (stray > 0) {
        c.chi2 = INFINITY;
        c.df = static_cast<int>(pooled.size()) - 1;
        c.p_value = 0;
        return c;
    }
    for (const auto &[e, o] : pooled) {
        c.chi2 += (o - e) * (o - e) / e;
    }
    c.df = static_cast<int>(pooled.size()) - 1;
    c.p_value = c.df > 0 ? boost::math::gamma_q(0.5 * c.df, 0.5 * c.chi2) : 1.0;
    return c;
}

}  // namespace wigsim
