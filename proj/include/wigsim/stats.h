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
#include <map>
#include <string>

#include "wigsim/oracle.h"

namespace wigsim {

struct Comparison {
    double tv = 0;
    double chi2 = 0;
    int df = 0;
    double p_value = 1;
    /// Number of outcome strings with positive reference or empirical mass.
    size_t alphabet = 0;
    double epsilon = 0;
    bool pass = false;
};

/// max(0.01, 3 sqrt(alphabet / shots)).
double tv_threshold(size_t alphabet, uint64_t shots);

/// TV distance and Pearson chi-square. Cells with expected count < 5 are
/// pooled; a pooled cell still below 5 joins the smallest remaining cell.
/// PASS iff tv < tv_threshold. Throws InvalidArgument if an empirical outcome
/// is not in the reference alphabet.
Comparison compare_distributions(const OutcomeDistribution &ref, const std::map<std::string, uint64_t> &counts,
                                 uint64_t shots);

/// Total variation distance between two distributions over strings.
double total_variation(const OutcomeDistribution &a, const OutcomeDistribution &b);

}  // namespace wigsim
